#include "bcoh/homalg.hpp"

#include "bcoh/errors.hpp"

namespace bcoh {

namespace {

std::string num(std::size_t x)
{
    return std::to_string(x);
}

FiberMap identity_map(const NormedModule& v)
{
    FiberMap out;
    for (ObjectId e = 0; e < v.base()->object_count(); ++e)
        out.push_back(Matrix::identity(v.fiber_dim(e)));
    return out;
}

FiberMap add(const FiberMap& a, const FiberMap& b)
{
    FiberMap out;
    for (std::size_t e = 0; e < a.size(); ++e)
        out.push_back(a[e] + b[e]);
    return out;
}

bool is_zero(const FiberMap& f)
{
    for (const Matrix& m : f)
        if (!m.is_zero())
            return false;
    return true;
}

/** Precomposition with a chain map between bar fibers, tensored with V. */
FiberMap precompose(const FiberMap& chain, const NormedModule& v)
{
    FiberMap out;
    for (ObjectId e = 0; e < chain.size(); ++e)
        out.push_back(Matrix::kron(chain[e].transpose(), Matrix::identity(v.fiber_dim(e))));
    return out;
}

AugmentedResolution from_chains(const NormedModule& v, const BarComplex& bar, int n)
{
    AugmentedResolution r;
    r.coefficients = v;
    r.chain_bases = bar.bases;
    for (int k = 0; k <= n; ++k)
        r.modules.push_back(hom_module(bar.modules[k], v));
    r.augmentation = precompose(bar.augmentation, v);
    for (int k = 0; k < n; ++k)
        r.coboundary.push_back(precompose(bar.boundary[k + 1], v));
    for (int k = 0; k <= n; ++k)
        r.contraction.push_back(precompose(bar.contraction[k], v));
    return r;
}

/** A fiber map indexed by objects of A composed with one indexed by objects of G, along i. */
FiberMap after_along(const FiberMap& over_a, const FiberMap& over_g, const std::vector<ObjectId>& object_map)
{
    FiberMap out;
    for (std::size_t a = 0; a < over_a.size(); ++a)
        out.push_back(over_a[a] * over_g[object_map[a]]);
    return out;
}

FiberMap restrict_along(const FiberMap& over_g, const std::vector<ObjectId>& object_map)
{
    FiberMap out;
    for (ObjectId x : object_map)
        out.push_back(over_g[x]);
    return out;
}

/** Selection D^k_G(i(a)) -> D^k_A(a): evaluate on the image of each path of A. */
std::vector<FiberMap> selection_maps(const GroupoidPair& pair, const AugmentedResolution& g_res,
                                     const AugmentedResolution& a_res)
{
    const GroupoidMap& inc = pair.inclusion();
    const auto& objects = inc.object_map();
    const auto& morphisms = inc.morphism_map();
    std::vector<FiberMap> out;
    for (std::size_t k = 0; k < a_res.modules.size(); ++k)
    {
        const BarBasis& ga = g_res.chain_bases[k];
        const BarBasis& aa = a_res.chain_bases[k];
        FiberMap phi;
        for (ObjectId a = 0; a < objects.size(); ++a)
        {
            const std::size_t d = a_res.coefficients.fiber_dim(a);
            MatrixBuilder b(a_res.modules[k].fiber_dim(a), g_res.modules[k].fiber_dim(objects[a]));
            const auto& paths = aa.fiber(a);
            for (std::size_t j = 0; j < paths.size(); ++j)
            {
                Path image;
                for (MorphismId m : paths[j])
                    image.push_back(morphisms[m]);
                b.add_block(j * d, ga.index(image) * d, Matrix::identity(d));
            }
            phi.push_back(b.build());
        }
        out.push_back(std::move(phi));
    }
    return out;
}

}   // namespace

Matrix direct_sum_matrix(const FiberMap& f)
{
    return Matrix::block_diagonal(f);
}

std::vector<std::string> audit_resolution(const AugmentedResolution& r)
{
    std::vector<std::string> out;
    const std::size_t n = r.top_degree();
    for (const auto& s : audit_equivariance(r.coefficients, r.modules[0], r.augmentation))
        out.push_back("augmentation: " + s);
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& s : audit_equivariance(r.modules[k], r.modules[k + 1], r.coboundary[k]))
            out.push_back("coboundary " + num(k) + ": " + s);
    if (n >= 1 && !is_zero(compose(r.coboundary[0], r.augmentation)))
        out.push_back("d^0 eps is not zero");
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (!is_zero(compose(r.coboundary[k + 1], r.coboundary[k])))
            out.push_back("d^" + num(k + 1) + " d^" + num(k) + " is not zero");

    if (compose(r.contraction[0], r.augmentation) != identity_map(r.coefficients))
        out.push_back("s^0 eps is not the identity");
    for (std::size_t k = 0; k < n; ++k)
    {
        FiberMap lower = k == 0 ? compose(r.augmentation, r.contraction[0])
                                : compose(r.coboundary[k - 1], r.contraction[k]);
        if (add(lower, compose(r.contraction[k + 1], r.coboundary[k])) != identity_map(r.modules[k]))
            out.push_back("contraction identity fails in degree " + num(k));
    }
    for (std::size_t k = 0; k <= n; ++k)
    {
        const NormedModule& cod = k == 0 ? r.coefficients : r.modules[k - 1];
        if (fiber_map_norm(r.modules[k], cod, r.contraction[k]) > 1)
            out.push_back("contraction s^" + num(k) + " has norm above 1");
    }
    return out;
}

AugmentedResolution standard_resolution(const NormedModule& v, int n, const Limits& limits)
{
    if (n < 0)
        throw InvalidArgument("resolution degree must be nonnegative");
    return from_chains(v, bar_complex(v.base(), n, limits), n);
}

AugmentedResolution homogeneous_resolution(const NormedModule& v, int n, const Limits& limits)
{
    if (n < 0)
        throw InvalidArgument("resolution degree must be nonnegative");
    return from_chains(v, homogeneous_complex(v.base(), n, limits), n);
}

std::vector<FiberMap> comparison_map(const AugmentedResolution& res, const Limits& limits)
{
    auto fails = audit_resolution(res);
    if (!fails.empty())
        throw AxiomViolation("comparison map: " + fails.front());
    const NormedModule& v = res.coefficients;
    const FiniteGroupoid& G = *v.base();
    const std::size_t n = res.top_degree();
    std::vector<BarBasis> bases;
    for (std::size_t k = 0; k <= n; ++k)
        bases.emplace_back(G, BarKind::Inhomogeneous, k, limits.path_cap);

    std::vector<FiberMap> alpha;
    for (std::size_t k = 0; k <= n; ++k)
    {
        const NormedModule& below = k == 0 ? v : res.modules[k - 1];
        const NormedModule& here = res.modules[k];
        // g_0 s^k g_0^-1, from D^k_{t g_0} to the degree below at t g_0
        std::vector<Matrix> conj(G.morphism_count());
        for (MorphismId g = 0; g < G.morphism_count(); ++g)
            conj[g] = below.action(g) * res.contraction[k][G.source(g)] * here.action(G.inverse(g));
        FiberMap a;
        for (ObjectId e = 0; e < G.object_count(); ++e)
        {
            const std::size_t d = v.fiber_dim(e);
            const auto& paths = bases[k].fiber(e);
            MatrixBuilder b(paths.size() * d, here.fiber_dim(e));
            for (std::size_t j = 0; j < paths.size(); ++j)
            {
                const Path& p = paths[j];
                if (k == 0)
                {
                    b.add_block(j * d, 0, conj[p[0]]);
                    continue;
                }
                Path q;
                q.push_back(G.compose(p[0], p[1]));
                q.insert(q.end(), p.begin() + 2, p.end());
                const std::size_t jq = bases[k - 1].index(q);
                Matrix prev = alpha[k - 1][e].submatrix(jq * d, d, 0, below.fiber_dim(e));
                b.add_block(j * d, 0, prev * conj[p[0]]);
            }
            a.push_back(b.build());
        }
        alpha.push_back(std::move(a));
    }
    return alpha;
}

std::vector<std::string> audit_comparison(const AugmentedResolution& res, const AugmentedResolution& standard,
                                          const std::vector<FiberMap>& alpha)
{
    std::vector<std::string> out;
    if (compose(alpha[0], res.augmentation) != standard.augmentation)
        out.push_back("alpha^0 eps differs from eps");
    for (std::size_t k = 0; k < alpha.size(); ++k)
    {
        for (const auto& s : audit_equivariance(res.modules[k], standard.modules[k], alpha[k]))
            out.push_back("alpha^" + num(k) + ": " + s);
        if (k + 1 < alpha.size() &&
            compose(alpha[k + 1], res.coboundary[k]) != compose(standard.coboundary[k], alpha[k]))
            out.push_back("alpha is not a cochain map in degree " + num(k));
        if (fiber_map_norm(res.modules[k], standard.modules[k], alpha[k]) > 1)
            out.push_back("alpha^" + num(k) + " has norm above 1");
    }
    return out;
}

InvariantComplex invariant_complex(const AugmentedResolution& r)
{
    const std::size_t n = r.top_degree();
    if (n == 0)
        throw InvalidArgument("invariant complex needs a resolution of degree at least 1");
    InvariantComplex out;
    for (std::size_t k = 0; k <= n; ++k)
    {
        Invariants inv = invariants(r.modules[k]);
        const std::size_t total = r.modules[k].total_dim();
        out.basis.push_back(Matrix::from_columns(inv.basis, total));
        out.subspaces.emplace_back(total, inv.basis);
        out.complex.dims.push_back(inv.basis.size());
        out.complex.norms.push_back(inv.norm);
    }
    for (std::size_t k = 0; k < n; ++k)
        out.complex.coboundary.push_back(
            out.subspaces[k + 1].coordinates(direct_sum_matrix(r.coboundary[k]) * out.basis[k]));
    return out;
}

std::vector<Matrix> restrict_to_invariants(const std::vector<FiberMap>& f, const InvariantComplex& dom,
                                           const InvariantComplex& cod)
{
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < f.size(); ++k)
        out.push_back(cod.subspaces[k].coordinates(direct_sum_matrix(f[k]) * dom.basis[k]));
    return out;
}

std::vector<std::string> audit_pair_resolution(const PairResolution& p)
{
    std::vector<std::string> out;
    const auto& objects = p.pair.inclusion().object_map();
    const auto& morphisms = p.pair.inclusion().morphism_map();
    const FiniteGroupoid& A = *p.pair.sub();
    const std::size_t n = p.restriction.size() - 1;

    FiberMap eps_g = restrict_along(p.ambient.augmentation, objects);
    if (compose(p.restriction[0], eps_g) != p.sub.augmentation)
        out.push_back("restriction does not commute with the augmentations");
    for (std::size_t k = 0; k <= n; ++k)
    {
        if (k < n && after_along(p.restriction[k + 1], p.ambient.coboundary[k], objects) !=
                         compose(p.sub.coboundary[k], p.restriction[k]))
            out.push_back("restriction does not commute with d^" + num(k));
        FiberMap top = k == 0 ? restrict_along(p.ambient.contraction[0], objects)
                              : after_along(p.restriction[k - 1], p.ambient.contraction[k], objects);
        if (top != compose(p.sub.contraction[k], p.restriction[k]))
            out.push_back("restriction does not commute with s^" + num(k));
        for (MorphismId m = 0; m < A.morphism_count(); ++m)
        {
            const Matrix& lhs = p.restriction[k][A.target(m)];
            const Matrix& rhs = p.restriction[k][A.source(m)];
            if (lhs * p.ambient.modules[k].action(morphisms[m]) != p.sub.modules[k].action(m) * rhs)
            {
                out.push_back("restriction is not equivariant in degree " + num(k));
                break;
            }
        }
    }
    return out;
}

PairResolution standard_pair_resolution(const GroupoidPair& pair, const NormedModule& v, int n, const Limits& limits)
{
    PairResolution p;
    p.pair = pair;
    p.ambient = standard_resolution(v, n, limits);
    p.sub = standard_resolution(pullback(pair.inclusion(), v), n, limits);
    p.restriction = selection_maps(pair, p.ambient, p.sub);
    return p;
}

PairResolution homogeneous_pair_resolution(const GroupoidPair& pair, const NormedModule& v, int n,
                                           const Limits& limits)
{
    PairResolution p;
    p.pair = pair;
    p.ambient = homogeneous_resolution(v, n, limits);
    p.sub = homogeneous_resolution(pullback(pair.inclusion(), v), n, limits);
    p.restriction = selection_maps(pair, p.ambient, p.sub);
    return p;
}

PairComparison pair_comparison_map(const PairResolution& res, const PairResolution& standard, const Limits& limits)
{
    auto fails = audit_pair_resolution(res);
    if (!fails.empty())
        throw AxiomViolation("pair comparison: " + fails.front());
    PairComparison out;
    out.ambient = comparison_map(res.ambient, limits);
    out.sub = comparison_map(res.sub, limits);
    const auto& objects = res.pair.inclusion().object_map();
    out.commutes = true;
    for (std::size_t k = 0; k < out.ambient.size(); ++k)
        if (after_along(standard.restriction[k], out.ambient[k], objects) != compose(out.sub[k], res.restriction[k]))
            out.commutes = false;
    return out;
}

RelativeInvariantComplex relative_invariant_complex(const PairResolution& p)
{
    RelativeInvariantComplex out;
    out.ambient = invariant_complex(p.ambient);
    const auto& objects = p.pair.inclusion().object_map();
    const std::size_t n = p.ambient.top_degree();
    std::vector<Subspace> kernels;
    for (std::size_t k = 0; k <= n; ++k)
    {
        const NormedModule& g_mod = p.ambient.modules[k];
        const NormedModule& a_mod = p.sub.modules[k];
        MatrixBuilder b(a_mod.total_dim(), g_mod.total_dim());
        for (ObjectId a = 0; a < objects.size(); ++a)
            b.add_block(a_mod.fiber_offset(a), g_mod.fiber_offset(objects[a]), p.restriction[k][a]);
        Matrix on_invariants = b.build() * out.ambient.basis[k];
        const std::size_t dim = out.ambient.complex.dims[k];
        std::vector<Vector> ker;
        if (on_invariants.rows() == 0)
            for (std::size_t i = 0; i < dim; ++i)
                ker.push_back(unit_vector(dim, i));
        else
            ker = kernel_basis(on_invariants);
        Matrix basis = Matrix::from_columns(ker, dim);
        out.complex.dims.push_back(ker.size());
        out.complex.norms.push_back(pullback_norm(out.ambient.complex.norms[k], basis));
        out.basis.push_back(std::move(basis));
        kernels.emplace_back(dim, ker);
    }
    for (std::size_t k = 0; k < n; ++k)
        out.complex.coboundary.push_back(
            kernels[k + 1].coordinates(out.ambient.complex.coboundary[k] * out.basis[k]));
    return out;
}

InjectivityWitness verify_relative_injectivity_witness(const InjectivityProblem& p, const Limits& limits)
{
    const NormedModule& v = p.i.dom();
    const NormedModule& w = p.i.cod();
    const NormedModule& u = p.target_coefficients;
    const FiniteGroupoid& G = *v.base();
    if (!(p.alpha.dom().base() == v.base() || *p.alpha.dom().base() == G) ||
        p.alpha.dom().total_dim() != v.total_dim())
        throw InvalidArgument("injectivity: alpha is not defined on the domain of i");
    if (p.sigma.size() != G.object_count())
        throw InvalidArgument("injectivity: sigma has the wrong number of components");
    for (ObjectId e = 0; e < G.object_count(); ++e)
    {
        if (p.sigma[e].rows() != v.fiber_dim(e) || p.sigma[e].cols() != w.fiber_dim(e))
            throw InvalidArgument("injectivity: sigma has the wrong shape at object " + num(e));
        if (p.sigma[e] * p.i.component(e) != Matrix::identity(v.fiber_dim(e)))
            throw InvalidArgument("injectivity: sigma i is not the identity at object " + num(e));
    }
    if (fiber_map_norm(w, v, p.sigma) > 1)
        throw InvalidArgument("injectivity: sigma has norm above 1");

    BarComplex bar = bar_complex(v.base(), static_cast<int>(p.degree), limits);
    NormedModule expected = hom_module(bar.modules[p.degree], u);
    const NormedModule& target = p.alpha.cod();
    for (ObjectId e = 0; e < G.object_count(); ++e)
        if (target.fiber_dim(e) != expected.fiber_dim(e) || !(target.fiber_norm(e) == expected.fiber_norm(e)))
            throw InvalidArgument("injectivity: alpha does not land in B(C_n(G), U)");
    for (MorphismId m = 0; m < G.morphism_count(); ++m)
        if (target.action(m) != expected.action(m))
            throw InvalidArgument("injectivity: alpha does not land in B(C_n(G), U)");

    // g_0 sigma g_0^-1 : W_{t g_0} -> V_{t g_0}
    std::vector<Matrix> conj(G.morphism_count());
    for (MorphismId g = 0; g < G.morphism_count(); ++g)
        conj[g] = v.action(g) * p.sigma[G.source(g)] * w.action(G.inverse(g));

    InjectivityWitness out;
    for (ObjectId e = 0; e < G.object_count(); ++e)
    {
        const std::size_t d = u.fiber_dim(e);
        const auto& paths = bar.bases[p.degree].fiber(e);
        MatrixBuilder b(paths.size() * d, w.fiber_dim(e));
        for (std::size_t j = 0; j < paths.size(); ++j)
            b.add_block(j * d, 0, p.alpha.component(e).submatrix(j * d, d, 0, v.fiber_dim(e)) * conj[paths[j][0]]);
        out.beta.push_back(b.build());
    }
    out.extends = compose(out.beta, p.i.components()) == p.alpha.components();
    out.equivariant = audit_equivariance(w, target, out.beta).empty();
    out.beta_norm = fiber_map_norm(w, target, out.beta);
    out.ok = out.extends && out.equivariant && out.beta_norm <= p.alpha.norm();
    return out;
}

}   // namespace bcoh
