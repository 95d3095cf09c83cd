#include "bcoh/amenability.hpp"

#include <optional>

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

bool all_zero(const FiberMap& f)
{
    for (const Matrix& m : f)
        if (!m.is_zero())
            return false;
    return true;
}

FiberMap precompose(const FiberMap& chain, const NormedModule& v)
{
    FiberMap out;
    for (ObjectId e = 0; e < chain.size(); ++e)
        out.push_back(Matrix::kron(chain[e].transpose(), Matrix::identity(v.fiber_dim(e))));
    return out;
}

CohomologyOptions dims_only(int n, const Limits& limits)
{
    CohomologyOptions o;
    o.seminorms = false;
    o.max_degree = static_cast<std::size_t>(n);
    o.limits = limits;
    return o;
}

/** Phi_i^n for one slot. */
FiberMap build_phi(const AugmentedResolution& res, const GroupoidPair& pair, const Mean& m, std::size_t n,
                   std::size_t slot)
{
    const FiniteGroupoid& G = *res.coefficients.base();
    const FiniteGroupoid& A = *pair.sub();
    const auto& objects = pair.inclusion().object_map();
    const auto& morphisms = pair.inclusion().morphism_map();
    std::vector<std::optional<ObjectId>> preimage(G.object_count());
    for (ObjectId a = 0; a < objects.size(); ++a)
        preimage[objects[a]] = a;

    const NormedModule& v = res.coefficients;
    const BarBasis& basis = res.chain_bases[n];
    FiberMap out;
    for (ObjectId e = 0; e < G.object_count(); ++e)
    {
        const std::size_t d = v.fiber_dim(e);
        const auto& tuples = basis.fiber(e);
        MatrixBuilder b(tuples.size() * d, tuples.size() * d);
        for (std::size_t j = 0; j < tuples.size(); ++j)
        {
            const Path& p = tuples[j];
            const MorphismId g = p[slot];
            const std::optional<ObjectId> ax = preimage[G.source(g)];
            if (!ax)
            {
                b.add_block(j * d, j * d, Matrix::identity(d));
                continue;
            }
            const std::size_t dx = v.fiber_dim(G.source(g));
            const Matrix& mean = m.components[*ax];
            const auto& ends = A.ending_at(*ax);
            const Matrix& out_action = v.action(g);
            const Matrix& in_action = v.action(G.inverse(g));
            for (std::size_t k = 0; k < ends.size(); ++k)
            {
                Path q = p;
                q[slot] = G.compose(g, morphisms[ends[k]]);
                Matrix block = out_action * mean.submatrix(0, dx, k * dx, dx) * in_action;
                b.add_block(j * d, basis.index(q) * d, block);
            }
        }
        out.push_back(b.build());
    }
    return out;
}

}   // namespace

std::vector<std::string> audit_mean(const Mean& m)
{
    std::vector<std::string> out;
    for (const auto& s : audit_equivariance(m.linf.module, m.coefficients, m.components))
        out.push_back("mean: " + s);
    if (m.base()->object_count() > 0)
    {
        Rational norm = fiber_map_norm(m.linf.module, m.coefficients, m.components);
        if (norm != 1)
            out.push_back("mean has norm " + norm.str() + ", not 1");
    }
    if (compose(m.components, m.linf.constants.components()) != identity_map(m.coefficients))
        out.push_back("mean does not fix constant functions");
    return out;
}

Mean uniform_mean(const GroupoidPtr& g)
{
    Mean m;
    m.coefficients = trivial_module(g);
    m.linf = linf_module(m.coefficients);
    for (ObjectId e = 0; e < g->object_count(); ++e)
    {
        const std::size_t size = g->ending_at(e).size();
        MatrixBuilder b(1, size);
        for (std::size_t k = 0; k < size; ++k)
            b.set(0, k, Rational(1, static_cast<long>(size)));
        m.components.push_back(b.build());
    }
    return m;
}

Mean dual_coefficient_mean(const Mean& m, const NormedModule& v)
{
    if (!(*m.base() == *v.base()))
        throw InvalidArgument("dual mean: module lives over a different groupoid");
    for (ObjectId e = 0; e < m.base()->object_count(); ++e)
        if (m.coefficients.fiber_dim(e) != 1)
            throw InvalidArgument("dual mean: the input mean must have trivial coefficients");
    Mean out;
    out.coefficients = dual_module(v);
    out.linf = linf_module(out.coefficients);
    for (ObjectId e = 0; e < m.base()->object_count(); ++e)
        out.components.push_back(Matrix::kron(m.components[e], Matrix::identity(out.coefficients.fiber_dim(e))));
    return out;
}

FiberMap homogeneous_face(const AugmentedResolution& res, std::size_t n, std::size_t i)
{
    if (n == 0 || n >= res.chain_bases.size() || i > n)
        throw InvalidArgument("homogeneous face " + num(i) + " in degree " + num(n) + " is out of range");
    const NormedModule& v = res.coefficients;
    const BarBasis& top = res.chain_bases[n];
    const BarBasis& below = res.chain_bases[n - 1];
    FiberMap out;
    for (ObjectId e = 0; e < v.base()->object_count(); ++e)
    {
        const std::size_t d = v.fiber_dim(e);
        const auto& tuples = top.fiber(e);
        MatrixBuilder b(tuples.size() * d, below.fiber_size(e) * d);
        for (std::size_t j = 0; j < tuples.size(); ++j)
        {
            Path q = tuples[j];
            q.erase(q.begin() + static_cast<std::ptrdiff_t>(i));
            b.add_block(j * d, below.index(q) * d, Matrix::identity(d));
        }
        out.push_back(b.build());
    }
    return out;
}

AveragingOperator averaging_operator(const GroupoidPair& pair, const Mean& m, const NormedModule& v_dual, int n,
                                     const Limits& limits)
{
    if (!(*m.base() == *pair.sub()))
        throw InvalidArgument("averaging operator: mean is not over the subgroupoid");
    const auto& objects = pair.inclusion().object_map();
    for (ObjectId a = 0; a < objects.size(); ++a)
        if (m.coefficients.fiber_dim(a) != v_dual.fiber_dim(objects[a]))
            throw InvalidArgument("averaging operator: mean coefficients do not match the restricted module");
    AveragingOperator op;
    op.pair = pair;
    op.resolution = homogeneous_resolution(v_dual, n, limits);
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k)
    {
        std::vector<FiberMap> phis;
        for (std::size_t i = 0; i <= k; ++i)
            phis.push_back(build_phi(op.resolution, pair, m, k, i));
        FiberMap a = phis[k];
        for (std::size_t i = k; i-- > 0;)
            a = compose(phis[i], a);
        op.phi.push_back(std::move(phis));
        op.a.push_back(std::move(a));
    }
    return op;
}

std::vector<std::string> audit_averaging(const AveragingOperator& op)
{
    std::vector<std::string> out;
    const AugmentedResolution& r = op.resolution;
    const std::size_t n = r.top_degree();
    if (compose(op.a[0], r.augmentation) != r.augmentation)
        out.push_back("A^0 does not extend the identity");
    for (std::size_t k = 0; k <= n; ++k)
    {
        for (const auto& s : audit_equivariance(r.modules[k], r.modules[k], op.a[k]))
            out.push_back("A^" + num(k) + ": " + s);
        if (fiber_map_norm(r.modules[k], r.modules[k], op.a[k]) > 1)
            out.push_back("A^" + num(k) + " has norm above 1");
        if (k < n && compose(op.a[k + 1], r.coboundary[k]) != compose(r.coboundary[k], op.a[k]))
            out.push_back("A is not a cochain map in degree " + num(k));
    }
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t i = 0; i <= k; ++i)
        {
            FiberMap face = homogeneous_face(r, k, i);
            for (std::size_t j = 0; j <= k; ++j)
            {
                FiberMap lhs = compose(op.phi[k][j], face);
                FiberMap rhs = i > j ? compose(face, op.phi[k - 1][j])
                               : i < j ? compose(face, op.phi[k - 1][j - 1])
                                       : face;
                if (lhs != rhs)
                    out.push_back("Phi_" + num(j) + " d_" + num(i) + " relation fails in degree " + num(k));
            }
        }
    return out;
}

FactorizationReport factorization_check(const GroupoidPair& pair, const NormedModule& v, int n, const Limits& limits)
{
    if (n < 1)
        throw InvalidArgument("factorization check needs n >= 1");
    const NormedModule v_dual = dual_module(v);
    const GroupoidPtr& g = pair.ambient();
    Mean m = dual_coefficient_mean(uniform_mean(pair.sub()), pullback(pair.inclusion(), v));
    AveragingOperator op = averaging_operator(pair, m, v_dual, n, limits);
    PairResolution pr = homogeneous_pair_resolution(pair, v_dual, n, limits);
    auto alt = alt_operator(homogeneous_complex(g, n, limits));
    const AugmentedResolution& r = op.resolution;
    const auto& objects = pair.inclusion().object_map();

    FactorizationReport out;
    out.averaging_failures = audit_averaging(op);
    std::vector<FiberMap> t;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k)
        t.push_back(compose(precompose(alt[k], v_dual), op.a[k]));
    out.extends_identity = compose(t[0], r.augmentation) == r.augmentation;
    out.cochain_map = true;
    for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k)
        if (compose(t[k + 1], r.coboundary[k]) != compose(r.coboundary[k], t[k]))
            out.cochain_map = false;
    out.ok = out.extends_identity && out.cochain_map && out.averaging_failures.empty();
    for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k)
    {
        FactorizationDegree d;
        d.degree = k;
        FiberMap restricted;
        for (ObjectId a = 0; a < objects.size(); ++a)
            restricted.push_back(pr.restriction[k][a] * t[k][objects[a]]);
        d.restriction_vanishes = all_zero(restricted);
        d.norm = fiber_map_norm(r.modules[k], r.modules[k], t[k]);
        d.equivariant = audit_equivariance(r.modules[k], r.modules[k], t[k]).empty();
        if (!d.restriction_vanishes || d.norm > 1 || !d.equivariant)
            out.ok = false;
        out.degrees.push_back(std::move(d));
    }
    return out;
}

VanishingReport amenable_vanishing_check(const NormedModule& v, int n, const Limits& limits)
{
    BarCochains c = cochain_complex(dual_module(v), n, limits);
    CohomologyResult h = cohomology(c.complex, dims_only(n, limits));
    VanishingReport out;
    out.ok = true;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k)
    {
        out.dims.push_back(h.degrees[k].dim);
        if (k >= 1 && h.degrees[k].dim != 0)
            out.ok = false;
    }
    return out;
}

MappingReport algebraic_mapping_theorem_check(const GroupoidPair& pair, const NormedModule& v, int n,
                                              const CohomologyOptions& options)
{
    if (n < 1)
        throw InvalidArgument("mapping theorem check needs n >= 1");
    RelativeComplex rc = relative_complex(pair, dual_module(v), n, options.limits);
    CohomologyOptions opts = options;
    opts.max_degree = static_cast<std::size_t>(n);
    CohomologyResult rel = cohomology(rc.kernel, opts);
    CohomologyResult abs = cohomology(rc.ambient.complex, opts);

    MappingReport out;
    out.ok = true;
    for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k)
    {
        MappingDegree d;
        d.degree = k;
        d.dim_relative = rel.degrees[k].dim;
        d.dim_absolute = abs.degrees[k].dim;
        Matrix induced = induced_on_cohomology(rc.kernel_inclusion[k], rel, abs, k);
        d.rank = induced.rows() == 0 || induced.cols() == 0 ? 0 : rank(induced);
        d.asserted = k >= 2;
        d.holds = d.dim_relative == d.dim_absolute && d.rank == d.dim_absolute;
        const auto& reps = rel.degrees[k].representatives;
        for (std::size_t i = 0; i < rel.degrees[k].seminorms.size(); ++i)
        {
            Vector image = rc.kernel_inclusion[k].apply(reps[i]);
            Rational s = class_seminorm(rc.ambient.complex, k, image, options.limits).value;
            d.seminorms.emplace_back(rel.degrees[k].seminorms[i], s);
            if (s != rel.degrees[k].seminorms[i])
                d.holds = false;
        }
        if (d.asserted && !d.holds)
            out.ok = false;
        out.degrees.push_back(std::move(d));
    }
    return out;
}

ConverseProbe converse_amenability_probe(const GroupoidPtr& g, const Limits& limits)
{
    SigmaModule s = sigma_module(g);
    BarCochains c = cochain_complex(dual_module(s.module), 1, limits);
    CohomologyResult h = cohomology(c.complex, dims_only(1, limits));
    ConverseProbe out;
    out.sigma_dim = s.module.total_dim();
    out.h1_dim = h.degrees[1].dim;
    out.ok = out.h1_dim == 0;
    return out;
}

}   // namespace bcoh
