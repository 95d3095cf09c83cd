#include "bcoh/checks.hpp"

#include <algorithm>

#include "bcoh/errors.hpp"

namespace bcoh {

namespace {

std::string num(std::size_t x)
{
    return std::to_string(x);
}

std::size_t checked_rank(const Matrix& m)
{
    return m.rows() == 0 || m.cols() == 0 ? 0 : rank(m);
}

CohomologyOptions up_to(const CohomologyOptions& options, int n)
{
    CohomologyOptions o = options;
    o.max_degree = static_cast<std::size_t>(n);
    return o;
}

bool same_maps_on_cohomology(const std::vector<Matrix>& a, const std::vector<Matrix>& b, const std::vector<Matrix>& t,
                             const CohomologyResult& src, const CohomologyResult& mid, const CohomologyResult& dst,
                             int n)
{
    // a : src -> dst, b : src -> mid, t : mid -> dst
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k)
    {
        Matrix ha = induced_on_cohomology(a[k], src, dst, k);
        Matrix hb = induced_on_cohomology(b[k], src, mid, k);
        Matrix ht = induced_on_cohomology(t[k], mid, dst, k);
        if (!(ha == ht * hb))
            return false;
    }
    return true;
}

}   // namespace

AdditivityReport additivity_check(const NormedModule& v, int n, const CohomologyOptions& options)
{
    const CohomologyOptions opts = up_to(options, n);
    Components comps = connected_components(v.base());
    BarCochains whole = cochain_complex(v, n, options.limits);
    CohomologyResult h = cohomology(whole.complex, opts);

    std::vector<BarCochains> parts;
    std::vector<CohomologyResult> hs;
    std::vector<std::vector<Matrix>> res;
    for (const GroupoidMap& inc : comps.inclusions)
    {
        parts.push_back(cochain_complex(pullback(inc, v), n, options.limits));
        hs.push_back(cohomology(parts.back().complex, opts));
        res.push_back(pullback_cochain_map(inc, whole, parts.back()));
    }

    AdditivityReport out;
    out.components = comps.parts;
    out.ok = true;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k)
    {
        AdditivityDegree d;
        d.dim = h.degrees[k].dim;
        std::vector<Matrix> stacked;
        std::size_t total = 0;
        for (std::size_t j = 0; j < parts.size(); ++j)
        {
            d.component_dims.push_back(hs[j].degrees[k].dim);
            total += hs[j].degrees[k].dim;
            stacked.push_back(induced_on_cohomology(res[j][k], h, hs[j], k));
        }
        d.restriction_rank = stacked.empty() ? 0 : checked_rank(Matrix::vstack(stacked));
        if (d.dim != total || d.restriction_rank != d.dim)
            out.ok = false;
        const auto& reps = h.degrees[k].representatives;
        for (std::size_t i = 0; i < h.degrees[k].seminorms.size(); ++i)
        {
            Rational best = 0;
            for (std::size_t j = 0; j < parts.size(); ++j)
            {
                Rational s = class_seminorm(parts[j].complex, k, res[j][k].apply(reps[i]), options.limits).value;
                best = std::max(best, s);
            }
            d.seminorms.emplace_back(h.degrees[k].seminorms[i], best);
            if (h.degrees[k].seminorms[i] != best)
                out.ok = false;
        }
        out.degrees.push_back(std::move(d));
    }
    return out;
}

EquivalenceWitness witness_from_skeleton(const SkeletonRetraction& s)
{
    EquivalenceWitness w;
    w.f = s.inclusion;
    w.g = s.retraction;
    w.gf = Homotopy::identity(compose(s.retraction, s.inclusion));
    w.fg = s.homotopy;
    return w;
}

EquivalenceReport equivalence_invariance_check(const EquivalenceWitness& w, const NormedModule& v, int n,
                                               const CohomologyOptions& options)
{
    const GroupoidPtr& g_dom = w.f.domain();
    const GroupoidPtr& h_dom = w.f.codomain();
    if (!(*w.g.domain() == *h_dom) || !(*w.g.codomain() == *g_dom))
        throw InvalidArgument("equivalence witness: quasi-inverse has the wrong domain or codomain");
    if (!(w.gf.from() == compose(w.g, w.f)) || !(w.gf.to() == GroupoidMap::identity(g_dom)))
        throw InvalidArgument("equivalence witness: first homotopy is not from g f to the identity");
    if (!(w.fg.from() == compose(w.f, w.g)) || !(w.fg.to() == GroupoidMap::identity(h_dom)))
        throw InvalidArgument("equivalence witness: second homotopy is not from f g to the identity");
    if (!(*v.base() == *h_dom))
        throw InvalidArgument("equivalence check: module does not live over the codomain");

    const CohomologyOptions opts = up_to(options, n);
    BarCochains over_h = cochain_complex(v, n, options.limits);
    BarCochains over_g = cochain_complex(pullback(w.f, v), n, options.limits);
    CohomologyResult hh = cohomology(over_h.complex, opts);
    CohomologyResult hg = cohomology(over_g.complex, opts);
    std::vector<Matrix> f = pullback_cochain_map(w.f, over_h, over_g);

    EquivalenceReport out;
    out.ok = true;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k)
    {
        EquivalenceDegree d;
        d.dim_codomain = hh.degrees[k].dim;
        d.dim_domain = hg.degrees[k].dim;
        d.induced_rank = checked_rank(induced_on_cohomology(f[k], hh, hg, k));
        if (d.dim_domain != d.dim_codomain || d.induced_rank != d.dim_codomain)
            out.ok = false;
        const auto& reps = hh.degrees[k].representatives;
        for (std::size_t i = 0; i < hh.degrees[k].seminorms.size(); ++i)
        {
            Rational pulled = class_seminorm(over_g.complex, k, f[k].apply(reps[i]), options.limits).value;
            d.seminorms.emplace_back(hh.degrees[k].seminorms[i], pulled);
            if (pulled != hh.degrees[k].seminorms[i])
                out.ok = false;
        }
        out.degrees.push_back(std::move(d));
    }
    return out;
}

bool homotopy_twist_check(const Homotopy& h, const NormedModule& v, int n)
{
    const GroupoidMap& f1 = h.from();
    const GroupoidMap& f0 = h.to();
    CohomologyOptions opts;
    opts.seminorms = false;
    opts.max_degree = static_cast<std::size_t>(n);
    BarCochains over_h = cochain_complex(v, n);
    BarCochains c1 = cochain_complex(pullback(f1, v), n);
    BarCochains c0 = cochain_complex(pullback(f0, v), n);
    EquivariantMap t = homotopy_action(h, v);
    auto a0 = pullback_cochain_map(f0, over_h, c0);
    auto a1 = pullback_cochain_map(f1, over_h, c1);
    auto tc = coefficient_cochain_map(t.components(), c1, c0);
    return same_maps_on_cohomology(a0, a1, tc, cohomology(over_h.complex, opts), cohomology(c1.complex, opts),
                                   cohomology(c0.complex, opts), n);
}

bool relative_homotopy_twist_check(const Homotopy& h, const GroupoidPair& dom, const GroupoidPair& cod,
                                   const NormedModule& v, int n)
{
    const GroupoidMap& f1 = h.from();
    const GroupoidMap& f0 = h.to();
    if (!is_map_of_pairs(f0, dom, cod) || !is_map_of_pairs(f1, dom, cod))
        throw InvalidArgument("homotopy twist: maps do not respect the pairs");
    if (!check_relative_homotopy(h, dom, cod))
        throw InvalidArgument("homotopy twist: homotopy is not relative to the subgroupoids");
    CohomologyOptions opts;
    opts.seminorms = false;
    opts.max_degree = static_cast<std::size_t>(n);
    RelativeComplex over_h = relative_complex(cod, v, n);
    RelativeComplex r1 = relative_complex(dom, pullback(f1, v), n);
    RelativeComplex r0 = relative_complex(dom, pullback(f0, v), n);
    EquivariantMap t = homotopy_action(h, v);
    auto a0 = relative_pullback_map(f0, over_h, r0);
    auto a1 = relative_pullback_map(f1, over_h, r1);
    auto full = coefficient_cochain_map(t.components(), r1.ambient, r0.ambient);
    std::vector<Matrix> tc;
    for (std::size_t k = 0; k < full.size(); ++k)
        tc.push_back(full[k].select_rows(r0.kernel_coordinates[k]).select_columns(r1.kernel_coordinates[k]));
    return same_maps_on_cohomology(a0, a1, tc, cohomology(over_h.kernel, opts), cohomology(r1.kernel, opts),
                                   cohomology(r0.kernel, opts), n);
}

std::vector<std::string> audit_reduced_cochains(const NormedModule& v, int n, const Limits& limits)
{
    std::vector<std::string> out;
    const FiniteGroupoid& G = *v.base();
    BarComplex bar = bar_complex(v.base(), n + 1, limits);
    BarCochains c = cochain_complex(v, n, limits);
    std::vector<NormedModule> homs;
    std::vector<Matrix> ext;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n) + 1; ++k)
    {
        homs.push_back(hom_module(bar.modules[k], v));
        ext.push_back(extension_matrix(c, bar, homs[k], k));
    }

    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k)
    {
        const NormedModule& hom = homs[k];
        const Matrix& e = ext[k];
        const std::string where = " in degree " + num(k);
        if (checked_rank(e) != c.complex.dims[k])
            out.push_back("extension is not injective" + where);
        if (invariants(hom).basis.size() != c.complex.dims[k])
            out.push_back("reduced dimension differs from the invariants" + where);
        for (MorphismId g = 0; g < G.morphism_count(); ++g)
        {
            Matrix src = e.submatrix(hom.fiber_offset(G.source(g)), hom.fiber_dim(G.source(g)), 0, e.cols());
            Matrix dst = e.submatrix(hom.fiber_offset(G.target(g)), hom.fiber_dim(G.target(g)), 0, e.cols());
            if (!(hom.action(g) * src == dst))
            {
                out.push_back("extended cochains are not invariant under morphism " + num(g) + where);
                break;
            }
        }
        std::vector<Vector> probes;
        for (std::size_t i = 0; i < c.complex.dims[k]; ++i)
            probes.push_back(unit_vector(c.complex.dims[k], i));
        Vector mixed(c.complex.dims[k]);
        for (std::size_t i = 0; i < mixed.size(); ++i)
            mixed[i] = Rational(static_cast<long>(i % 5) - 2, static_cast<long>(i % 3) + 1);
        probes.push_back(mixed);
        for (const Vector& x : probes)
        {
            Vector y = e.apply(x);
            Rational sup = 0;
            for (ObjectId o = 0; o < G.object_count(); ++o)
            {
                Vector part(y.begin() + hom.fiber_offset(o), y.begin() + hom.fiber_offset(o) + hom.fiber_dim(o));
                sup = std::max(sup, hom.fiber_norm(o).eval(part));
            }
            if (sup != c.complex.norms[k].eval(x))
            {
                out.push_back("extension does not preserve the norm" + where);
                break;
            }
        }

        std::vector<Matrix> blocks;
        for (ObjectId o = 0; o < G.object_count(); ++o)
            blocks.push_back(Matrix::kron(bar.boundary[k + 1][o].transpose(), Matrix::identity(v.fiber_dim(o))));
        if (!(ext[k + 1] * c.complex.coboundary[k] == Matrix::block_diagonal(blocks) * e))
            out.push_back("reduced coboundary does not match precomposition with the boundary" + where);
    }
    return out;
}

}   // namespace bcoh
