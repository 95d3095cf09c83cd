#include "bcoh/groupoid.hpp"

#include <algorithm>
#include <array>

#include "bcoh/errors.hpp"

namespace bcoh {

namespace {

std::string triple(std::size_t a, std::size_t b, std::size_t c)
{
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

}   // namespace

FiniteGroupoid FiniteGroupoid::create(std::size_t objects, std::vector<ObjectId> source, std::vector<ObjectId> target,
                                      std::vector<MorphismId> compose, std::vector<std::string> labels)
{
    const std::size_t n = source.size();
    if (target.size() != n)
        throw AxiomViolation("source and target lists differ in length");
    if (compose.size() != n * n)
        throw AxiomViolation("composition table must have " + std::to_string(n * n) + " entries");
    if (!labels.empty() && labels.size() != n)
        throw AxiomViolation("label list has the wrong length");
    for (std::size_t g = 0; g < n; ++g)
    {
        if (source[g] >= objects || target[g] >= objects)
            throw AxiomViolation("morphism " + std::to_string(g) + " has an endpoint outside the object set");
    }

    FiniteGroupoid G;
    G.objects_ = objects;
    G.source_ = std::move(source);
    G.target_ = std::move(target);
    G.compose_ = std::move(compose);
    G.ending_at_.assign(objects, {});
    for (std::size_t g = 0; g < n; ++g)
        G.ending_at_[G.target_[g]].push_back(g);

    // Composites are defined exactly on composable pairs and have the right endpoints.
    for (std::size_t g = 0; g < n; ++g)
    {
        for (std::size_t h = 0; h < n; ++h)
        {
            MorphismId gh = G.compose_[g * n + h];
            bool composable = G.source_[g] == G.target_[h];
            if (!composable)
            {
                if (gh != kUndefined)
                    throw AxiomViolation("composite of " + std::to_string(g) + " and " + std::to_string(h) +
                                         " is defined although source(" + std::to_string(g) + ") != target(" + std::to_string(h) + ")");
                continue;
            }
            if (gh == kUndefined)
                throw AxiomViolation("composite of " + std::to_string(g) + " and " + std::to_string(h) + " is missing");
            if (gh >= n)
                throw AxiomViolation("composite of " + std::to_string(g) + " and " + std::to_string(h) + " is not a morphism");
            if (G.source_[gh] != G.source_[h] || G.target_[gh] != G.target_[g])
                throw AxiomViolation("composite of " + std::to_string(g) + " and " + std::to_string(h) + " has wrong endpoints");
        }
    }

    for (std::size_t f = 0; f < n; ++f)
    {
        for (std::size_t g : G.ending_at_[G.source_[f]])
        {
            MorphismId fg = G.compose_[f * n + g];
            for (std::size_t h : G.ending_at_[G.source_[g]])
            {
                if (G.compose_[fg * n + h] != G.compose_[f * n + G.compose_[g * n + h]])
                    throw AxiomViolation("associativity fails at " + triple(f, g, h));
            }
        }
    }

    G.identity_.assign(objects, kUndefined);
    for (ObjectId e = 0; e < objects; ++e)
    {
        for (MorphismId u : G.ending_at_[e])
        {
            if (G.source_[u] != e)
                continue;
            bool ok = true;
            for (std::size_t g = 0; g < n && ok; ++g)
            {
                if (G.target_[g] == e && G.compose_[u * n + g] != g)
                    ok = false;
                if (G.source_[g] == e && G.compose_[g * n + u] != g)
                    ok = false;
            }
            if (ok)
            {
                G.identity_[e] = u;
                break;
            }
        }
        if (G.identity_[e] == kUndefined)
            throw AxiomViolation("object " + std::to_string(e) + " has no identity morphism");
    }

    G.inverse_.assign(n, kUndefined);
    for (std::size_t g = 0; g < n; ++g)
    {
        for (MorphismId h : G.ending_at_[G.source_[g]])
        {
            if (G.source_[h] == G.target_[g] && G.compose_[g * n + h] == G.identity_[G.target_[g]] &&
                G.compose_[h * n + g] == G.identity_[G.source_[g]])
            {
                G.inverse_[g] = h;
                break;
            }
        }
        if (G.inverse_[g] == kUndefined)
            throw AxiomViolation("morphism " + std::to_string(g) + " has no inverse");
    }

    if (labels.empty())
    {
        for (std::size_t g = 0; g < n; ++g)
            labels.push_back("g" + std::to_string(g));
    }
    G.labels_ = std::move(labels);
    return G;
}

MorphismId FiniteGroupoid::compose(MorphismId g, MorphismId h) const
{
    const std::size_t n = source_.size();
    if (g >= n || h >= n)
        throw InvalidArgument("morphism id out of range");
    MorphismId gh = compose_[g * n + h];
    if (gh == kUndefined)
        throw InvalidArgument("morphisms " + std::to_string(g) + " and " + std::to_string(h) + " are not composable");
    return gh;
}

std::vector<MorphismId> FiniteGroupoid::hom(ObjectId e, ObjectId f) const
{
    std::vector<MorphismId> out;
    for (MorphismId g : ending_at_.at(f))
    {
        if (source_[g] == e)
            out.push_back(g);
    }
    return out;
}

bool FiniteGroupoid::operator==(const FiniteGroupoid& other) const
{
    return objects_ == other.objects_ && source_ == other.source_ && target_ == other.target_ && compose_ == other.compose_;
}

GroupoidPtr share(FiniteGroupoid g)
{
    return std::make_shared<const FiniteGroupoid>(std::move(g));
}

std::size_t validate_group_table(const GroupTable& t)
{
    const std::size_t n = t.size();
    if (n == 0)
        throw AxiomViolation("group table is empty");
    for (std::size_t a = 0; a < n; ++a)
    {
        if (t[a].size() != n)
            throw AxiomViolation("group table row " + std::to_string(a) + " has the wrong length");
        for (std::size_t b = 0; b < n; ++b)
        {
            if (t[a][b] >= n)
                throw AxiomViolation("closure fails: " + std::to_string(a) + " * " + std::to_string(b) + " is not an element");
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
            {
                if (t[t[a][b]][c] != t[a][t[b][c]])
                    throw AxiomViolation("associativity fails at " + triple(a, b, c));
            }
    std::size_t e = n;
    for (std::size_t u = 0; u < n && e == n; ++u)
    {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a)
            ok = t[u][a] == a && t[a][u] == a;
        if (ok)
            e = u;
    }
    if (e == n)
        throw AxiomViolation("group table has no identity element");
    for (std::size_t a = 0; a < n; ++a)
    {
        bool found = false;
        for (std::size_t b = 0; b < n && !found; ++b)
            found = t[a][b] == e && t[b][a] == e;
        if (!found)
            throw AxiomViolation("element " + std::to_string(a) + " has no inverse");
    }
    return e;
}

FiniteGroupoid from_group_table(const GroupTable& t)
{
    validate_group_table(t);
    const std::size_t n = t.size();
    std::vector<MorphismId> comp(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            comp[a * n + b] = t[a][b];
    return FiniteGroupoid::create(1, std::vector<ObjectId>(n, 0), std::vector<ObjectId>(n, 0), std::move(comp));
}

FiniteGroupoid disjoint_union(const std::vector<FiniteGroupoid>& parts)
{
    std::size_t objects = 0, n = 0;
    for (const auto& p : parts)
        n += p.morphism_count();
    std::vector<ObjectId> src, tgt;
    std::vector<MorphismId> comp(n * n, kUndefined);
    std::vector<std::string> labels;
    std::size_t m0 = 0;
    for (std::size_t k = 0; k < parts.size(); ++k)
    {
        const auto& p = parts[k];
        const std::size_t pn = p.morphism_count();
        for (std::size_t g = 0; g < pn; ++g)
        {
            src.push_back(objects + p.source(g));
            tgt.push_back(objects + p.target(g));
            labels.push_back(std::to_string(k) + ":" + p.label(g));
            for (std::size_t h = 0; h < pn; ++h)
            {
                if (p.source(g) == p.target(h))
                    comp[(m0 + g) * n + m0 + h] = m0 + p.compose(g, h);
            }
        }
        objects += p.object_count();
        m0 += pn;
    }
    return FiniteGroupoid::create(objects, std::move(src), std::move(tgt), std::move(comp), std::move(labels));
}

FiniteGroupoid action_groupoid(const GroupTable& t, const std::vector<std::vector<std::size_t>>& act)
{
    const std::size_t e = validate_group_table(t);
    const std::size_t order = t.size();
    if (act.size() != order)
        throw AxiomViolation("action table needs one row per group element");
    const std::size_t points = act[0].size();
    for (std::size_t g = 0; g < order; ++g)
    {
        if (act[g].size() != points)
            throw AxiomViolation("action table row " + std::to_string(g) + " has the wrong length");
        for (std::size_t x = 0; x < points; ++x)
        {
            if (act[g][x] >= points)
                throw AxiomViolation("action of " + std::to_string(g) + " sends point " + std::to_string(x) + " outside the set");
        }
    }
    for (std::size_t x = 0; x < points; ++x)
    {
        if (act[e][x] != x)
            throw AxiomViolation("identity does not fix point " + std::to_string(x));
        for (std::size_t g = 0; g < order; ++g)
            for (std::size_t h = 0; h < order; ++h)
            {
                if (act[t[g][h]][x] != act[g][act[h][x]])
                    throw AxiomViolation("action is not compatible with multiplication at " + triple(g, h, x));
            }
    }
    const std::size_t n = points * order;
    std::vector<ObjectId> src(n), tgt(n);
    std::vector<std::string> labels(n);
    for (std::size_t x = 0; x < points; ++x)
        for (std::size_t g = 0; g < order; ++g)
        {
            src[x * order + g] = x;
            tgt[x * order + g] = act[g][x];
            labels[x * order + g] = "(" + std::to_string(x) + "," + std::to_string(g) + ")";
        }
    std::vector<MorphismId> comp(n * n, kUndefined);
    for (std::size_t x = 0; x < points; ++x)
        for (std::size_t g = 0; g < order; ++g)
            for (std::size_t h = 0; h < order; ++h)
            {
                // (g.x, h)(x, g) = (x, hg)
                std::size_t y = act[g][x];
                comp[(y * order + h) * n + x * order + g] = x * order + t[h][g];
            }
    return FiniteGroupoid::create(points, std::move(src), std::move(tgt), std::move(comp), std::move(labels));
}

MorphismId blow_up_morphism(std::size_t group_order, std::size_t k, ObjectId f, ObjectId e, std::size_t g)
{
    return (f * k + e) * group_order + g;
}

FiniteGroupoid blow_up(const GroupTable& t, std::size_t k)
{
    validate_group_table(t);
    const std::size_t order = t.size();
    const std::size_t n = k * k * order;
    std::vector<ObjectId> src(n), tgt(n);
    std::vector<std::string> labels(n);
    for (std::size_t f = 0; f < k; ++f)
        for (std::size_t e = 0; e < k; ++e)
            for (std::size_t g = 0; g < order; ++g)
            {
                MorphismId m = blow_up_morphism(order, k, f, e, g);
                src[m] = e;
                tgt[m] = f;
                labels[m] = "(" + std::to_string(f) + "," + std::to_string(e) + "," + std::to_string(g) + ")";
            }
    std::vector<MorphismId> comp(n * n, kUndefined);
    for (std::size_t f = 0; f < k; ++f)
        for (std::size_t e = 0; e < k; ++e)
            for (std::size_t d = 0; d < k; ++d)
                for (std::size_t g = 0; g < order; ++g)
                    for (std::size_t h = 0; h < order; ++h)
                    {
                        comp[blow_up_morphism(order, k, f, e, g) * n + blow_up_morphism(order, k, e, d, h)] =
                            blow_up_morphism(order, k, f, d, t[g][h]);
                    }
    return FiniteGroupoid::create(k, std::move(src), std::move(tgt), std::move(comp), std::move(labels));
}

GroupTable cyclic_group(std::size_t n)
{
    GroupTable t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            t[a][b] = (a + b) % n;
    return t;
}

GroupTable product_group(const GroupTable& a, const GroupTable& b)
{
    const std::size_t na = a.size(), nb = b.size();
    GroupTable t(na * nb, std::vector<std::size_t>(na * nb));
    for (std::size_t x = 0; x < na * nb; ++x)
        for (std::size_t y = 0; y < na * nb; ++y)
            t[x][y] = a[x / nb][y / nb] * nb + b[x % nb][y % nb];
    return t;
}

GroupTable symmetric_group_3()
{
    std::vector<std::array<std::size_t, 3>> perms;
    std::array<std::size_t, 3> p{0, 1, 2};
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    GroupTable t(6, std::vector<std::size_t>(6));
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b)
        {
            std::array<std::size_t, 3> c{perms[a][perms[b][0]], perms[a][perms[b][1]], perms[a][perms[b][2]]};
            t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return t;
}

}   // namespace bcoh
