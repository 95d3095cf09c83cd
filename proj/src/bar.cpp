#include "bcoh/bar.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bcoh/errors.hpp"

namespace bcoh {

namespace {

std::size_t saturating_add(std::size_t a, std::size_t b, std::size_t cap)
{
    return (a > cap || b > cap - a) ? cap + 1 : a + b;
}

std::size_t saturating_mul(std::size_t a, std::size_t b, std::size_t cap)
{
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    return p > cap ? cap + 1 : static_cast<std::size_t>(p);
}

/** Path counts per fiber, saturating just above cap. */
std::vector<std::size_t> path_counts(const FiniteGroupoid& g, BarKind kind, std::size_t degree, std::size_t cap)
{
    const std::size_t objects = g.object_count();
    std::vector<std::size_t> counts(objects);
    for (ObjectId e = 0; e < objects; ++e)
        counts[e] = g.ending_at(e).size();
    for (std::size_t k = 1; k <= degree; ++k)
    {
        std::vector<std::size_t> next(objects, 0);
        for (ObjectId e = 0; e < objects; ++e)
        {
            if (kind == BarKind::Homogeneous)
                next[e] = saturating_mul(counts[e], g.ending_at(e).size(), cap);
            else
                for (MorphismId m : g.ending_at(e))
                    next[e] = saturating_add(next[e], counts[g.source(m)], cap);
        }
        counts = std::move(next);
    }
    return counts;
}

void extend(const FiniteGroupoid& g, BarKind kind, ObjectId fiber, std::size_t length, Path& current,
            std::vector<Path>& out)
{
    if (current.size() == length)
    {
        out.push_back(current);
        return;
    }
    ObjectId next = (kind == BarKind::Homogeneous || current.empty()) ? fiber : g.source(current.back());
    for (MorphismId m : g.ending_at(next))
    {
        current.push_back(m);
        extend(g, kind, fiber, length, current, out);
        current.pop_back();
    }
}

std::string path_text(const Path& p)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < p.size(); ++i)
        os << (i ? "," : "") << p[i];
    os << ")";
    return os.str();
}

std::vector<PolyhedralNorm> l1_fibers(const BarBasis& b, std::size_t objects)
{
    std::vector<PolyhedralNorm> out;
    out.reserve(objects);
    for (ObjectId e = 0; e < objects; ++e)
        out.push_back(PolyhedralNorm::l1(b.fiber_size(e)));
    return out;
}

/** Builds a fiber map by sending each basis path of `dom` to a signed combination of `cod` paths. */
template <typename F>
FiberMap path_map(const BarBasis& dom, const BarBasis& cod, const std::vector<ObjectId>& target_fiber, F&& images)
{
    FiberMap out;
    out.reserve(target_fiber.size());
    std::vector<std::pair<Path, int>> terms;
    for (ObjectId e = 0; e < target_fiber.size(); ++e)
    {
        const auto& paths = dom.fiber(e);
        MatrixBuilder b(cod.fiber_size(target_fiber[e]), paths.size());
        for (std::size_t j = 0; j < paths.size(); ++j)
        {
            terms.clear();
            images(paths[j], terms);
            for (const auto& [p, sign] : terms)
                b.add(cod.index(p), j, Rational(sign));
        }
        out.push_back(b.build());
    }
    return out;
}

std::vector<ObjectId> identity_objects(std::size_t n)
{
    std::vector<ObjectId> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

BarComplex build(const GroupoidPtr& g, BarKind kind, int n, const Limits& limits)
{
    if (n < 0)
        throw InvalidArgument("bar complex degree must be nonnegative");
    const FiniteGroupoid& G = *g;
    const std::size_t objects = G.object_count();
    const auto same = identity_objects(objects);

    BarComplex c;
    c.groupoid = g;
    c.kind = kind;
    for (int k = 0; k <= n; ++k)
        c.bases.emplace_back(G, kind, k, limits.path_cap);

    for (int k = 0; k <= n; ++k)
    {
        const BarBasis& b = c.bases[k];
        std::vector<Matrix> action;
        action.reserve(G.morphism_count());
        for (MorphismId m = 0; m < G.morphism_count(); ++m)
        {
            const auto& paths = b.fiber(G.source(m));
            MatrixBuilder mb(b.fiber_size(G.target(m)), paths.size());
            Path q;
            for (std::size_t j = 0; j < paths.size(); ++j)
            {
                q = paths[j];
                if (kind == BarKind::Inhomogeneous)
                    q[0] = G.compose(m, q[0]);
                else
                    for (auto& x : q)
                        x = G.compose(m, x);
                mb.add(b.index(q), j, Rational(1));
            }
            action.push_back(mb.build());
        }
        c.modules.emplace_back(g, l1_fibers(b, objects), std::move(action));
    }

    c.boundary.resize(n + 1);
    for (int k = 1; k <= n; ++k)
    {
        c.boundary[k] = path_map(c.bases[k], c.bases[k - 1], same, [&](const Path& p, auto& terms) {
            int sign = 1;
            if (kind == BarKind::Inhomogeneous)
            {
                for (int i = 0; i < k; ++i, sign = -sign)
                {
                    Path q;
                    q.reserve(k);
                    q.insert(q.end(), p.begin(), p.begin() + i);
                    q.push_back(G.compose(p[i], p[i + 1]));
                    q.insert(q.end(), p.begin() + i + 2, p.end());
                    terms.emplace_back(std::move(q), sign);
                }
                terms.emplace_back(Path(p.begin(), p.end() - 1), sign);
            }
            else
            {
                for (int i = 0; i <= k; ++i, sign = -sign)
                {
                    Path q = p;
                    q.erase(q.begin() + i);
                    terms.emplace_back(std::move(q), sign);
                }
            }
        });
    }

    for (ObjectId e = 0; e < objects; ++e)
    {
        MatrixBuilder mb(1, c.bases[0].fiber_size(e));
        for (std::size_t j = 0; j < c.bases[0].fiber_size(e); ++j)
            mb.add(0, j, Rational(1));
        c.augmentation.push_back(mb.build());
    }

    FiberMap s_minus;
    for (ObjectId e = 0; e < objects; ++e)
    {
        MatrixBuilder mb(c.bases[0].fiber_size(e), 1);
        mb.add(c.bases[0].index(Path{G.identity(e)}), 0, Rational(1));
        s_minus.push_back(mb.build());
    }
    c.contraction.push_back(std::move(s_minus));
    for (int k = 0; k < n; ++k)
    {
        c.contraction.push_back(path_map(c.bases[k], c.bases[k + 1], same, [&](const Path& p, auto& terms) {
            Path q;
            q.reserve(p.size() + 1);
            q.push_back(G.identity(G.target(p[0])));
            q.insert(q.end(), p.begin(), p.end());
            terms.emplace_back(std::move(q), 1);
        }));
    }
    return c;
}

void expect_zero(const FiberMap& f, const std::string& what, std::vector<std::string>& out)
{
    for (ObjectId e = 0; e < f.size(); ++e)
        if (!f[e].is_zero())
            out.push_back(what + " is nonzero at object " + std::to_string(e));
}

FiberMap add(const FiberMap& a, const FiberMap& b)
{
    FiberMap out;
    for (std::size_t e = 0; e < a.size(); ++e)
        out.push_back(a[e] + b[e]);
    return out;
}

void expect_identity(const FiberMap& f, const std::string& what, std::vector<std::string>& out)
{
    for (ObjectId e = 0; e < f.size(); ++e)
        if (!(f[e] == Matrix::identity(f[e].rows())))
            out.push_back(what + " is not the identity at object " + std::to_string(e));
}

}   // namespace

std::size_t BarBasis::PathHash::operator()(const Path& p) const
{
    std::size_t h = p.size();
    for (MorphismId m : p)
        h = h * 1000003u ^ (m + 0x9e3779b9u + (h << 6) + (h >> 2));
    return h;
}

BarBasis::BarBasis(const FiniteGroupoid& g, BarKind kind, std::size_t degree, std::size_t path_cap)
    : kind_(kind), degree_(degree)
{
    auto counts = path_counts(g, kind, degree, path_cap);
    std::size_t total = 0;
    for (std::size_t c : counts)
        total = saturating_add(total, c, path_cap);
    if (total > path_cap)
        throw ResourceCapExceeded("degree " + std::to_string(degree) + " needs more than " +
                                  std::to_string(path_cap) + " basis paths");
    fibers_.resize(g.object_count());
    index_.reserve(total);
    Path current;
    current.reserve(degree + 1);
    for (ObjectId e = 0; e < g.object_count(); ++e)
    {
        fibers_[e].reserve(counts[e]);
        extend(g, kind, e, degree + 1, current, fibers_[e]);
        for (std::size_t i = 0; i < fibers_[e].size(); ++i)
            index_.emplace(fibers_[e][i], i);
    }
}

std::size_t BarBasis::total() const
{
    std::size_t t = 0;
    for (const auto& f : fibers_)
        t += f.size();
    return t;
}

std::size_t BarBasis::index(const Path& p) const
{
    auto it = index_.find(p);
    if (it == index_.end())
        throw InvalidArgument("path " + path_text(p) + " is not a basis path of degree " + std::to_string(degree_));
    return it->second;
}

bool BarBasis::contains(const Path& p) const
{
    return index_.count(p) != 0;
}

BarComplex bar_complex(const GroupoidPtr& g, int n, const Limits& limits)
{
    return build(g, BarKind::Inhomogeneous, n, limits);
}

BarComplex homogeneous_complex(const GroupoidPtr& g, int n, const Limits& limits)
{
    return build(g, BarKind::Homogeneous, n, limits);
}

std::vector<std::string> audit_bar_complex(const BarComplex& c)
{
    std::vector<std::string> out;
    const std::size_t n = c.max_degree();
    NormedModule r = trivial_module(c.groupoid);

    for (std::size_t k = 2; k <= n; ++k)
        expect_zero(compose(c.boundary[k - 1], c.boundary[k]), "d_" + std::to_string(k - 1) + " d_" + std::to_string(k),
                    out);
    if (n >= 1)
        expect_zero(compose(c.augmentation, c.boundary[1]), "eps d_1", out);

    for (std::size_t k = 1; k <= n; ++k)
    {
        for (auto& f : audit_equivariance(c.modules[k], c.modules[k - 1], c.boundary[k]))
            out.push_back("d_" + std::to_string(k) + ": " + f);
        Rational bound = fiber_map_norm(c.modules[k], c.modules[k - 1], c.boundary[k]);
        if (bound > Rational(k + 1))
            out.push_back("norm of d_" + std::to_string(k) + " is " + to_string(bound));
    }
    for (auto& f : audit_equivariance(c.modules[0], r, c.augmentation))
        out.push_back("eps: " + f);

    expect_identity(compose(c.augmentation, c.contraction[0]), "eps s_-1", out);
    if (n >= 1)
        expect_identity(add(compose(c.boundary[1], c.contraction[1]), compose(c.contraction[0], c.augmentation)),
                        "d_1 s_0 + s_-1 eps", out);
    for (std::size_t k = 1; k + 1 <= n; ++k)
        expect_identity(add(compose(c.boundary[k + 1], c.contraction[k + 1]), compose(c.contraction[k], c.boundary[k])),
                        "d s + s d in degree " + std::to_string(k), out);

    if (fiber_map_norm(r, c.modules[0], c.contraction[0]) > 1)
        out.push_back("norm of s_-1 exceeds 1");
    for (std::size_t k = 0; k + 1 <= n; ++k)
        if (fiber_map_norm(c.modules[k], c.modules[k + 1], c.contraction[k + 1]) > 1)
            out.push_back("norm of s_" + std::to_string(k) + " exceeds 1");
    return out;
}

BarIsomorphisms hom_inhom_isos(const BarComplex& inhom, const BarComplex& hom)
{
    if (inhom.kind != BarKind::Inhomogeneous || hom.kind != BarKind::Homogeneous)
        throw InvalidArgument("hom_inhom_isos expects an inhomogeneous and a homogeneous complex");
    if (!(*inhom.groupoid == *hom.groupoid))
        throw InvalidArgument("hom_inhom_isos expects complexes over the same groupoid");
    const FiniteGroupoid& G = *inhom.groupoid;
    const auto same = identity_objects(G.object_count());
    const std::size_t n = std::min(inhom.max_degree(), hom.max_degree());

    BarIsomorphisms out;
    for (std::size_t k = 0; k <= n; ++k)
    {
        out.to_homogeneous.push_back(path_map(inhom.bases[k], hom.bases[k], same, [&](const Path& p, auto& terms) {
            Path q = p;
            for (std::size_t i = 1; i < q.size(); ++i)
                q[i] = G.compose(q[i - 1], p[i]);
            terms.emplace_back(std::move(q), 1);
        }));
        out.to_inhomogeneous.push_back(path_map(hom.bases[k], inhom.bases[k], same, [&](const Path& p, auto& terms) {
            Path q = p;
            for (std::size_t i = 1; i < q.size(); ++i)
                q[i] = G.compose(G.inverse(p[i - 1]), p[i]);
            terms.emplace_back(std::move(q), 1);
        }));
    }
    return out;
}

std::vector<FiberMap> induced_chain_map(const GroupoidMap& f, const BarComplex& dom, const BarComplex& cod)
{
    if (dom.kind != cod.kind)
        throw InvalidArgument("induced_chain_map between complexes of different kinds");
    if (!(*f.domain() == *dom.groupoid) || !(*f.codomain() == *cod.groupoid))
        throw InvalidArgument("induced_chain_map: complexes do not match the map");
    const std::size_t n = std::min(dom.max_degree(), cod.max_degree());
    std::vector<FiberMap> out;
    for (std::size_t k = 0; k <= n; ++k)
        out.push_back(path_map(dom.bases[k], cod.bases[k], f.object_map(), [&](const Path& p, auto& terms) {
            Path q = p;
            for (auto& x : q)
                x = f.on_morphism(x);
            terms.emplace_back(std::move(q), 1);
        }));
    return out;
}

std::vector<FiberMap> homotopy_operator(const Homotopy& h, const BarComplex& dom, const BarComplex& cod)
{
    if (dom.kind != BarKind::Inhomogeneous || cod.kind != BarKind::Inhomogeneous)
        throw InvalidArgument("homotopy_operator is defined on inhomogeneous complexes");
    const GroupoidMap& f1 = h.from();
    const GroupoidMap& f0 = h.to();
    if (!(*f0.domain() == *dom.groupoid) || !(*f0.codomain() == *cod.groupoid))
        throw InvalidArgument("homotopy_operator: complexes do not match the homotopy");
    if (cod.max_degree() == 0)
        return {};
    const FiniteGroupoid& G = *dom.groupoid;
    const std::size_t n = std::min(dom.max_degree(), cod.max_degree() - 1);
    std::vector<FiberMap> out;
    for (std::size_t k = 0; k <= n; ++k)
        out.push_back(path_map(dom.bases[k], cod.bases[k + 1], f0.object_map(), [&](const Path& p, auto& terms) {
            int sign = -1;
            for (std::size_t i = 0; i <= k; ++i, sign = -sign)
            {
                Path q;
                q.reserve(k + 2);
                for (std::size_t j = 0; j <= i; ++j)
                    q.push_back(f0.on_morphism(p[j]));
                q.push_back(h.component(G.source(p[i])));
                for (std::size_t j = i + 1; j <= k; ++j)
                    q.push_back(f1.on_morphism(p[j]));
                terms.emplace_back(std::move(q), sign);
            }
        }));
    return out;
}

std::vector<FiberMap> twisted_chain_map(const Homotopy& h, const BarComplex& dom, const BarComplex& cod)
{
    if (dom.kind != BarKind::Inhomogeneous || cod.kind != BarKind::Inhomogeneous)
        throw InvalidArgument("twisted_chain_map is defined on inhomogeneous complexes");
    const GroupoidMap& f1 = h.from();
    const GroupoidMap& f0 = h.to();
    const FiniteGroupoid& H = *cod.groupoid;
    const FiniteGroupoid& G = *dom.groupoid;
    const std::size_t n = std::min(dom.max_degree(), cod.max_degree());
    std::vector<FiberMap> out;
    for (std::size_t k = 0; k <= n; ++k)
        out.push_back(path_map(dom.bases[k], cod.bases[k], f0.object_map(), [&](const Path& p, auto& terms) {
            Path q = p;
            for (auto& x : q)
                x = f1.on_morphism(x);
            q[0] = H.compose(h.component(G.target(p[0])), q[0]);
            terms.emplace_back(std::move(q), 1);
        }));
    return out;
}

std::vector<FiberMap> alt_operator(const BarComplex& hom)
{
    if (hom.kind != BarKind::Homogeneous)
        throw InvalidArgument("alt_operator is defined on the homogeneous complex");
    const auto same = identity_objects(hom.groupoid->object_count());
    std::vector<FiberMap> out;
    for (std::size_t k = 0; k <= hom.max_degree(); ++k)
    {
        std::vector<std::pair<std::vector<std::size_t>, int>> perms;
        std::vector<std::size_t> sigma(k + 1);
        std::iota(sigma.begin(), sigma.end(), 0);
        do
        {
            int inversions = 0;
            for (std::size_t a = 0; a <= k; ++a)
                for (std::size_t b = a + 1; b <= k; ++b)
                    inversions += sigma[a] > sigma[b];
            perms.emplace_back(sigma, inversions % 2 ? -1 : 1);
        } while (std::next_permutation(sigma.begin(), sigma.end()));

        FiberMap raw = path_map(hom.bases[k], hom.bases[k], same, [&](const Path& p, auto& terms) {
            for (const auto& [s, sign] : perms)
            {
                Path q(k + 1);
                for (std::size_t i = 0; i <= k; ++i)
                    q[i] = p[s[i]];
                terms.emplace_back(std::move(q), sign);
            }
        });
        Rational scale = Rational(1) / factorial(k + 1);
        for (auto& m : raw)
            m = m * scale;
        out.push_back(std::move(raw));
    }
    return out;
}

Rational chain_map_norm(const FiberMap& f)
{
    Rational best = 0;
    for (const Matrix& m : f)
    {
        Matrix t = m.transpose();
        for (std::size_t j = 0; j < t.rows(); ++j)
        {
            Rational s = 0;
            for (const auto& [i, v] : t.row(j))
                s += abs(v);
            if (s > best)
                best = s;
        }
    }
    return best;
}

}   // namespace bcoh
