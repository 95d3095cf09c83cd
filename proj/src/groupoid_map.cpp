#include "bcoh/groupoid_map.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bcoh/errors.hpp"

namespace bcoh {

namespace {

std::string id(std::size_t x)
{
    return std::to_string(x);
}

void require_same(const GroupoidPtr& a, const GroupoidPtr& b, const char* what)
{
    if (a != b && !(*a == *b))
        throw InvalidArgument(std::string(what));
}

}   // namespace

GroupoidMap::GroupoidMap(GroupoidPtr domain, GroupoidPtr codomain, std::vector<ObjectId> objects, std::vector<MorphismId> morphisms)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), objects_(std::move(objects)), morphisms_(std::move(morphisms))
{
    const auto& G = *domain_;
    const auto& H = *codomain_;
    if (objects_.size() != G.object_count() || morphisms_.size() != G.morphism_count())
        throw AxiomViolation("functor data has the wrong size");
    for (auto x : objects_)
    {
        if (x >= H.object_count())
            throw AxiomViolation("functor sends an object outside the codomain");
    }
    for (MorphismId g = 0; g < G.morphism_count(); ++g)
    {
        MorphismId fg = morphisms_[g];
        if (fg >= H.morphism_count())
            throw AxiomViolation("functor sends morphism " + id(g) + " outside the codomain");
        if (H.source(fg) != objects_[G.source(g)] || H.target(fg) != objects_[G.target(g)])
            throw AxiomViolation("functor does not respect the endpoints of morphism " + id(g));
    }
    for (ObjectId e = 0; e < G.object_count(); ++e)
    {
        if (morphisms_[G.identity(e)] != H.identity(objects_[e]))
            throw AxiomViolation("functor does not preserve the identity at object " + id(e));
    }
    for (MorphismId g = 0; g < G.morphism_count(); ++g)
    {
        for (MorphismId h : G.ending_at(G.source(g)))
        {
            if (morphisms_[G.compose(g, h)] != H.compose(morphisms_[g], morphisms_[h]))
                throw AxiomViolation("functor does not preserve the composite of " + id(g) + " and " + id(h));
        }
    }
}

GroupoidMap GroupoidMap::identity(const GroupoidPtr& g)
{
    std::vector<ObjectId> o(g->object_count());
    std::vector<MorphismId> m(g->morphism_count());
    std::iota(o.begin(), o.end(), 0);
    std::iota(m.begin(), m.end(), 0);
    return GroupoidMap(g, g, std::move(o), std::move(m));
}

bool GroupoidMap::is_injective() const
{
    std::set<MorphismId> seen(morphisms_.begin(), morphisms_.end());
    std::set<ObjectId> seen_o(objects_.begin(), objects_.end());
    return seen.size() == morphisms_.size() && seen_o.size() == objects_.size();
}

bool GroupoidMap::operator==(const GroupoidMap& other) const
{
    return *domain_ == *other.domain_ && *codomain_ == *other.codomain_ && objects_ == other.objects_ && morphisms_ == other.morphisms_;
}

GroupoidMap compose(const GroupoidMap& second, const GroupoidMap& first)
{
    require_same(first.codomain(), second.domain(), "composing maps whose codomain and domain differ");
    std::vector<ObjectId> o;
    std::vector<MorphismId> m;
    for (auto x : first.object_map())
        o.push_back(second.on_object(x));
    for (auto g : first.morphism_map())
        m.push_back(second.on_morphism(g));
    return GroupoidMap(first.domain(), second.codomain(), std::move(o), std::move(m));
}

Homotopy::Homotopy(GroupoidMap from, GroupoidMap to, std::vector<MorphismId> components)
    : from_(std::move(from)), to_(std::move(to)), components_(std::move(components))
{
    require_same(from_.domain(), to_.domain(), "homotopy between maps with different domains");
    require_same(from_.codomain(), to_.codomain(), "homotopy between maps with different codomains");
    const auto& G = *from_.domain();
    const auto& H = *from_.codomain();
    if (components_.size() != G.object_count())
        throw AxiomViolation("homotopy needs one component per object");
    for (ObjectId e = 0; e < G.object_count(); ++e)
    {
        MorphismId h = components_[e];
        if (h >= H.morphism_count() || H.source(h) != from_.on_object(e) || H.target(h) != to_.on_object(e))
            throw AxiomViolation("homotopy component at object " + id(e) + " does not go from from(e) to to(e)");
    }
    for (MorphismId g = 0; g < G.morphism_count(); ++g)
    {
        MorphismId lhs = H.compose(to_.on_morphism(g), components_[G.source(g)]);
        MorphismId rhs = H.compose(components_[G.target(g)], from_.on_morphism(g));
        if (lhs != rhs)
            throw AxiomViolation("naturality fails at morphism " + id(g));
    }
}

Homotopy Homotopy::identity(const GroupoidMap& f)
{
    std::vector<MorphismId> c;
    for (ObjectId e = 0; e < f.domain()->object_count(); ++e)
        c.push_back(f.codomain()->identity(f.on_object(e)));
    return Homotopy(f, f, std::move(c));
}

Homotopy Homotopy::inverse() const
{
    std::vector<MorphismId> c;
    for (auto h : components_)
        c.push_back(from_.codomain()->inverse(h));
    return Homotopy(to_, from_, std::move(c));
}

GroupoidPair::GroupoidPair(GroupoidMap inclusion) : inclusion_(std::move(inclusion))
{
    if (!inclusion_.is_injective())
        throw AxiomViolation("pair inclusion is not injective");
}

GroupoidMap subgroupoid(const GroupoidPtr& g, const std::vector<MorphismId>& morphisms)
{
    const auto& G = *g;
    std::set<MorphismId> set(morphisms.begin(), morphisms.end());
    std::set<ObjectId> obj_set;
    for (auto m : set)
    {
        if (m >= G.morphism_count())
            throw InvalidArgument("subgroupoid morphism " + id(m) + " does not exist");
        obj_set.insert(G.source(m));
        obj_set.insert(G.target(m));
    }
    for (auto e : obj_set)
    {
        if (!set.count(G.identity(e)))
            throw AxiomViolation("subgroupoid misses the identity at object " + id(e));
    }
    for (auto a : set)
    {
        if (!set.count(G.inverse(a)))
            throw AxiomViolation("subgroupoid is not closed under inverses at morphism " + id(a));
        for (auto b : set)
        {
            if (G.source(a) == G.target(b) && !set.count(G.compose(a, b)))
                throw AxiomViolation("subgroupoid is not closed under composition at (" + id(a) + ", " + id(b) + ")");
        }
    }
    std::vector<ObjectId> objs(obj_set.begin(), obj_set.end());
    std::vector<MorphismId> mors(set.begin(), set.end());
    auto obj_index = [&](ObjectId e) { return static_cast<std::size_t>(std::lower_bound(objs.begin(), objs.end(), e) - objs.begin()); };
    auto mor_index = [&](MorphismId m) { return static_cast<std::size_t>(std::lower_bound(mors.begin(), mors.end(), m) - mors.begin()); };
    const std::size_t n = mors.size();
    std::vector<ObjectId> src(n), tgt(n);
    std::vector<std::string> labels(n);
    std::vector<MorphismId> comp(n * n, kUndefined);
    for (std::size_t i = 0; i < n; ++i)
    {
        src[i] = obj_index(G.source(mors[i]));
        tgt[i] = obj_index(G.target(mors[i]));
        labels[i] = G.label(mors[i]);
        for (std::size_t j = 0; j < n; ++j)
        {
            if (G.source(mors[i]) == G.target(mors[j]))
                comp[i * n + j] = mor_index(G.compose(mors[i], mors[j]));
        }
    }
    auto sub = share(FiniteGroupoid::create(objs.size(), std::move(src), std::move(tgt), std::move(comp), std::move(labels)));
    return GroupoidMap(sub, g, objs, mors);
}

GroupoidMap full_subgroupoid(const GroupoidPtr& g, const std::vector<ObjectId>& objects)
{
    std::set<ObjectId> set(objects.begin(), objects.end());
    std::vector<MorphismId> mors;
    for (MorphismId m = 0; m < g->morphism_count(); ++m)
    {
        if (set.count(g->source(m)) && set.count(g->target(m)))
            mors.push_back(m);
    }
    for (auto e : set)
    {
        if (e >= g->object_count())
            throw InvalidArgument("object " + id(e) + " does not exist");
    }
    return subgroupoid(g, mors);
}

GroupoidMap trivial_subgroupoid(const GroupoidPtr& g, const std::vector<ObjectId>& objects)
{
    std::vector<MorphismId> mors;
    for (auto e : objects)
    {
        if (e >= g->object_count())
            throw InvalidArgument("object " + id(e) + " does not exist");
        mors.push_back(g->identity(e));
    }
    return subgroupoid(g, mors);
}

GroupoidMap empty_subgroupoid(const GroupoidPtr& g)
{
    return subgroupoid(g, {});
}

Components connected_components(const GroupoidPtr& g)
{
    std::vector<std::size_t> parent(g->object_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (MorphismId m = 0; m < g->morphism_count(); ++m)
    {
        std::size_t a = find(g->source(m)), b = find(g->target(m));
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    Components c;
    std::vector<std::size_t> slot(g->object_count(), SIZE_MAX);
    for (ObjectId e = 0; e < g->object_count(); ++e)
    {
        std::size_t root = find(e);
        if (slot[root] == SIZE_MAX)
        {
            slot[root] = c.parts.size();
            c.parts.emplace_back();
        }
        c.parts[slot[root]].push_back(e);
    }
    for (const auto& p : c.parts)
        c.inclusions.push_back(full_subgroupoid(g, p));
    return c;
}

SkeletonRetraction skeleton_retraction(const GroupoidPtr& g)
{
    const auto& G = *g;
    Components comps = connected_components(g);
    std::vector<ObjectId> reps;
    std::vector<ObjectId> rep_of(G.object_count());
    for (const auto& p : comps.parts)
    {
        reps.push_back(p.front());
        for (auto e : p)
            rep_of[e] = p.front();
    }
    GroupoidMap incl = full_subgroupoid(g, reps);
    // gamma_e : e -> r(e), identity on representatives.
    std::vector<MorphismId> gamma(G.object_count());
    for (ObjectId e = 0; e < G.object_count(); ++e)
        gamma[e] = e == rep_of[e] ? G.identity(e) : G.hom(e, rep_of[e]).front();
    std::vector<std::size_t> back(G.morphism_count(), kUndefined);
    for (MorphismId m = 0; m < incl.domain()->morphism_count(); ++m)
        back[incl.on_morphism(m)] = m;
    std::vector<ObjectId> p_obj(G.object_count());
    std::vector<MorphismId> p_mor(G.morphism_count());
    for (ObjectId e = 0; e < G.object_count(); ++e)
        p_obj[e] = static_cast<std::size_t>(std::lower_bound(reps.begin(), reps.end(), rep_of[e]) - reps.begin());
    for (MorphismId m = 0; m < G.morphism_count(); ++m)
    {
        MorphismId conj = G.compose(G.compose(gamma[G.target(m)], m), G.inverse(gamma[G.source(m)]));
        p_mor[m] = back[conj];
    }
    GroupoidMap retr(g, incl.domain(), std::move(p_obj), std::move(p_mor));
    std::vector<MorphismId> comps_h;
    for (ObjectId e = 0; e < G.object_count(); ++e)
        comps_h.push_back(G.inverse(gamma[e]));
    Homotopy h(compose(incl, retr), GroupoidMap::identity(g), std::move(comps_h));
    return SkeletonRetraction{std::move(incl), std::move(retr), std::move(h)};
}

bool check_relative_homotopy(const Homotopy& h, const GroupoidPair& dom, const GroupoidPair& cod)
{
    require_same(h.from().domain(), dom.ambient(), "homotopy domain differs from the pair ambient");
    require_same(h.from().codomain(), cod.ambient(), "homotopy codomain differs from the pair ambient");
    std::set<MorphismId> in_sub(cod.inclusion().morphism_map().begin(), cod.inclusion().morphism_map().end());
    for (ObjectId a = 0; a < dom.sub()->object_count(); ++a)
    {
        if (!in_sub.count(h.component(dom.inclusion().on_object(a))))
            return false;
    }
    return true;
}

bool is_map_of_pairs(const GroupoidMap& f, const GroupoidPair& dom, const GroupoidPair& cod)
{
    std::set<MorphismId> in_sub(cod.inclusion().morphism_map().begin(), cod.inclusion().morphism_map().end());
    for (MorphismId a = 0; a < dom.sub()->morphism_count(); ++a)
    {
        if (!in_sub.count(f.on_morphism(dom.inclusion().on_morphism(a))))
            return false;
    }
    return true;
}

}   // namespace bcoh
