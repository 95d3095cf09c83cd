#include "bcoh/module.hpp"

#include <algorithm>

#include "bcoh/errors.hpp"
#include "bcoh/linalg.hpp"

namespace bcoh {

namespace {

std::string id(std::size_t x)
{
    return std::to_string(x);
}

}   // namespace

std::vector<std::string> audit_module(const FiniteGroupoid& g, const std::vector<PolyhedralNorm>& fibers,
                                      const std::vector<Matrix>& action)
{
    std::vector<std::string> fails;
    if (fibers.size() != g.object_count())
        return {"module needs one fiber per object"};
    if (action.size() != g.morphism_count())
        return {"module needs one action matrix per morphism"};
    for (MorphismId m = 0; m < g.morphism_count(); ++m)
    {
        const Matrix& a = action[m];
        if (a.rows() != fibers[g.target(m)].dim() || a.cols() != fibers[g.source(m)].dim())
            return {"action of morphism " + id(m) + " has the wrong shape"};
    }
    for (ObjectId e = 0; e < g.object_count(); ++e)
    {
        if (!(action[g.identity(e)] == Matrix::identity(fibers[e].dim())))
            fails.push_back("identity at object " + id(e) + " does not act trivially");
    }
    for (MorphismId a = 0; a < g.morphism_count(); ++a)
    {
        for (MorphismId b : g.ending_at(g.source(a)))
        {
            if (!(action[g.compose(a, b)] == action[a] * action[b]))
                fails.push_back("action is not multiplicative at (" + id(a) + ", " + id(b) + ")");
        }
    }
    if (!fails.empty())
        return fails;
    // Each rho(g) has inverse rho(g^-1), so norm <= 1 for all g means isometric.
    for (MorphismId m = 0; m < g.morphism_count(); ++m)
    {
        if (g.is_identity(m))
            continue;
        if (operator_norm(action[m], fibers[g.source(m)], fibers[g.target(m)]) > 1)
            fails.push_back("morphism " + id(m) + " does not act isometrically");
    }
    return fails;
}

NormedModule::NormedModule(GroupoidPtr base, std::vector<PolyhedralNorm> fibers, std::vector<Matrix> action)
{
    auto fails = audit_module(*base, fibers, action);
    if (!fails.empty())
        throw AxiomViolation(fails.front());
    auto d = std::make_shared<Data>();
    d->base = std::move(base);
    d->fibers = std::move(fibers);
    d->action = std::move(action);
    d->offsets.push_back(0);
    for (const auto& f : d->fibers)
        d->offsets.push_back(d->offsets.back() + f.dim());
    d_ = std::move(d);
}

std::vector<std::string> audit_equivariance(const NormedModule& dom, const NormedModule& cod, const FiberMap& f)
{
    const auto& g = *dom.base();
    if (!(g == *cod.base()))
        return {"modules live over different groupoids"};
    if (f.size() != g.object_count())
        return {"fiber map needs one component per object"};
    for (ObjectId e = 0; e < g.object_count(); ++e)
    {
        if (f[e].rows() != cod.fiber_dim(e) || f[e].cols() != dom.fiber_dim(e))
            return {"component at object " + id(e) + " has the wrong shape"};
    }
    std::vector<std::string> fails;
    for (MorphismId m = 0; m < g.morphism_count(); ++m)
    {
        if (!(f[g.target(m)] * dom.action(m) == cod.action(m) * f[g.source(m)]))
            fails.push_back("map does not commute with morphism " + id(m));
    }
    return fails;
}

Rational fiber_map_norm(const NormedModule& dom, const NormedModule& cod, const FiberMap& f)
{
    Rational best = 0;
    for (ObjectId e = 0; e < f.size(); ++e)
    {
        Rational n = operator_norm(f[e], dom.fiber_norm(e), cod.fiber_norm(e));
        if (n > best)
            best = n;
    }
    return best;
}

FiberMap compose(const FiberMap& second, const FiberMap& first)
{
    if (second.size() != first.size())
        throw DimensionMismatch("composing fiber maps over different object sets");
    FiberMap out;
    for (std::size_t e = 0; e < first.size(); ++e)
        out.push_back(second[e] * first[e]);
    return out;
}

EquivariantMap::EquivariantMap(NormedModule dom, NormedModule cod, FiberMap components)
    : dom_(std::move(dom)), cod_(std::move(cod)), components_(std::move(components))
{
    auto fails = audit_equivariance(dom_, cod_, components_);
    if (!fails.empty())
        throw AxiomViolation(fails.front());
    norm_ = fiber_map_norm(dom_, cod_, components_);
}

NormedModule trivial_module(const GroupoidPtr& g)
{
    return NormedModule(g, std::vector<PolyhedralNorm>(g->object_count(), PolyhedralNorm::absolute_value()),
                        std::vector<Matrix>(g->morphism_count(), Matrix::identity(1)));
}

NormedModule pullback(const GroupoidMap& f, const NormedModule& u)
{
    if (!(*f.codomain() == *u.base()))
        throw InvalidArgument("pullback along a map whose codomain is not the module base");
    std::vector<PolyhedralNorm> fibers;
    std::vector<Matrix> action;
    for (ObjectId e = 0; e < f.domain()->object_count(); ++e)
        fibers.push_back(u.fiber_norm(f.on_object(e)));
    for (MorphismId m = 0; m < f.domain()->morphism_count(); ++m)
        action.push_back(u.action(f.on_morphism(m)));
    return NormedModule(f.domain(), std::move(fibers), std::move(action));
}

PolyhedralNorm operator_norm_on_hom(const PolyhedralNorm& v, const PolyhedralNorm& w)
{
    const std::size_t dw = w.dim();
    if (v.dim() == 0 || dw == 0)
        return PolyhedralNorm::zero();
    // Facets a (x) u of Hom(V_b, W) for a facet a of W and a vertex u of V_b.
    auto atomic = [&](const std::vector<Vector>& v_vertices, std::size_t dv) {
        std::vector<Vector> facets;
        for (const auto& a : w.all_facets())
        {
            for (const auto& u : v_vertices)
            {
                Vector f(dv * dw, Rational(0));
                for (std::size_t j = 0; j < dv; ++j)
                    for (std::size_t i = 0; i < dw; ++i)
                        f[j * dw + i] = a[i] * u[j];
                facets.push_back(std::move(f));
            }
        }
        return PolyhedralNorm::from_facets(dv * dw, facets);
    };
    if (v.combine() == Combine::Max && v.blocks().size() > 1)
        return atomic(v.all_vertices(), v.dim());
    // Sum of blocks (or one block): the operator norm is the max over the blocks.
    std::vector<PolyhedralNorm> parts;
    for (const auto& b : v.blocks())
    {
        if (b.dim == 1 && b.facets == std::vector<Vector>{Vector{1}})
            parts.push_back(w);
        else
        {
            if (!b.has_vertices)
                throw ResourceCapExceeded("operator norm on Hom needs domain vertices in dimension " + std::to_string(b.dim));
            parts.push_back(atomic(b.vertices, b.dim));
        }
    }
    return PolyhedralNorm::max_product(parts);
}

NormedModule hom_module(const NormedModule& v, const NormedModule& w)
{
    const auto& g = *v.base();
    if (!(g == *w.base()))
        throw InvalidArgument("hom_module of modules over different groupoids");
    std::vector<PolyhedralNorm> fibers;
    for (ObjectId e = 0; e < g.object_count(); ++e)
        fibers.push_back(operator_norm_on_hom(v.fiber_norm(e), w.fiber_norm(e)));
    std::vector<Matrix> action;
    for (MorphismId m = 0; m < g.morphism_count(); ++m)
        action.push_back(Matrix::kron(v.action(g.inverse(m)).transpose(), w.action(m)));
    return NormedModule(v.base(), std::move(fibers), std::move(action));
}

namespace {

/** Stacked rows rho(g) v_{s(g)} - v_{t(g)} over all non-identity morphisms. */
Matrix invariance_constraints(const NormedModule& v)
{
    const auto& g = *v.base();
    std::size_t rows = 0;
    for (MorphismId m = 0; m < g.morphism_count(); ++m)
    {
        if (!g.is_identity(m))
            rows += v.fiber_dim(g.target(m));
    }
    MatrixBuilder b(rows, v.total_dim());
    std::size_t r0 = 0;
    for (MorphismId m = 0; m < g.morphism_count(); ++m)
    {
        if (g.is_identity(m))
            continue;
        ObjectId s = g.source(m), t = g.target(m);
        b.add_block(r0, v.fiber_offset(s), v.action(m));
        b.add_block(r0, v.fiber_offset(t), Matrix::identity(v.fiber_dim(t)), Rational(-1));
        r0 += v.fiber_dim(t);
    }
    return b.build();
}

}   // namespace

Invariants invariants(const NormedModule& v)
{
    Invariants out;
    out.basis = kernel_basis(invariance_constraints(v));
    if (out.basis.empty())
    {
        out.norm = PolyhedralNorm::zero();
        return out;
    }
    PolyhedralNorm sup = PolyhedralNorm::max_product(v.fiber_norms());
    out.norm = pullback_norm(sup, Matrix::from_columns(out.basis, v.total_dim()));
    return out;
}

std::vector<Vector> equivariant_maps_basis(const NormedModule& v, const NormedModule& w)
{
    const auto& g = *v.base();
    if (!(g == *w.base()))
        throw InvalidArgument("equivariant maps between modules over different groupoids");
    // Unknowns: vec(f_e) column-major, one block per object.
    std::vector<std::size_t> off{0};
    for (ObjectId e = 0; e < g.object_count(); ++e)
        off.push_back(off.back() + v.fiber_dim(e) * w.fiber_dim(e));
    std::vector<Matrix> rows;
    for (MorphismId m = 0; m < g.morphism_count(); ++m)
    {
        if (g.is_identity(m))
            continue;
        ObjectId s = g.source(m), t = g.target(m);
        // vec(F_t rho_V) = (rho_V^T (x) I) vec F_t ; vec(rho_W F_s) = (I (x) rho_W) vec F_s.
        Matrix lhs = Matrix::kron(v.action(m).transpose(), Matrix::identity(w.fiber_dim(t)));
        Matrix rhs = Matrix::kron(Matrix::identity(v.fiber_dim(s)), w.action(m));
        MatrixBuilder b(lhs.rows(), off.back());
        b.add_block(0, off[t], lhs);
        b.add_block(0, off[s], rhs, Rational(-1));
        rows.push_back(b.build());
    }
    if (rows.empty())
        return kernel_basis(Matrix(0, off.back()));
    return kernel_basis(Matrix::vstack(rows));
}

LinfModule linf_module(const NormedModule& v)
{
    const auto& g = *v.base();
    std::vector<PolyhedralNorm> fibers;
    std::vector<std::vector<std::size_t>> pos(g.object_count());
    std::vector<std::size_t> slot(g.morphism_count());
    for (ObjectId e = 0; e < g.object_count(); ++e)
    {
        const auto& ends = g.ending_at(e);
        for (std::size_t k = 0; k < ends.size(); ++k)
            slot[ends[k]] = k;
        fibers.push_back(PolyhedralNorm::max_product(std::vector<PolyhedralNorm>(ends.size(), v.fiber_norm(e))));
    }
    std::vector<Matrix> action;
    for (MorphismId m = 0; m < g.morphism_count(); ++m)
    {
        ObjectId s = g.source(m), t = g.target(m);
        std::size_t ds = v.fiber_dim(s), dt = v.fiber_dim(t);
        MatrixBuilder b(fibers[t].dim(), fibers[s].dim());
        MorphismId inv = g.inverse(m);
        for (MorphismId h : g.ending_at(t))
            b.add_block(slot[h] * dt, slot[g.compose(inv, h)] * ds, v.action(m));
        action.push_back(b.build());
    }
    NormedModule lm(v.base(), std::move(fibers), std::move(action));
    FiberMap c;
    for (ObjectId e = 0; e < g.object_count(); ++e)
    {
        std::size_t d = v.fiber_dim(e);
        MatrixBuilder b(lm.fiber_dim(e), d);
        for (std::size_t k = 0; k < g.ending_at(e).size(); ++k)
            b.add_block(k * d, 0, Matrix::identity(d));
        c.push_back(b.build());
    }
    EquivariantMap constants(v, lm, std::move(c));
    return LinfModule{lm, constants};
}

NormedModule dual_module(const NormedModule& v)
{
    const auto& g = *v.base();
    std::vector<PolyhedralNorm> fibers;
    for (const auto& f : v.fiber_norms())
        fibers.push_back(dual_norm(f));
    std::vector<Matrix> action;
    for (MorphismId m = 0; m < g.morphism_count(); ++m)
        action.push_back(v.action(g.inverse(m)).transpose());
    return NormedModule(v.base(), std::move(fibers), std::move(action));
}

SigmaModule sigma_module(const GroupoidPtr& g)
{
    LinfModule linf = linf_module(trivial_module(g));
    std::vector<QuotientNorm> q;
    std::vector<PolyhedralNorm> fibers;
    for (ObjectId e = 0; e < g->object_count(); ++e)
    {
        q.push_back(quotient_norm(linf.module.fiber_norm(e), {linf.constants.component(e).column(0)}));
        fibers.push_back(q.back().norm);
    }
    std::vector<Matrix> action;
    for (MorphismId m = 0; m < g->morphism_count(); ++m)
        action.push_back(q[g->target(m)].projection * linf.module.action(m) * q[g->source(m)].lift);
    NormedModule sigma(g, std::move(fibers), std::move(action));
    FiberMap proj;
    for (const auto& x : q)
        proj.push_back(x.projection);
    EquivariantMap quotient(linf.module, sigma, std::move(proj));
    return SigmaModule{sigma, linf, quotient};
}

EquivariantMap homotopy_action(const Homotopy& h, const NormedModule& v)
{
    NormedModule dom = pullback(h.from(), v);
    NormedModule cod = pullback(h.to(), v);
    FiberMap c;
    for (auto m : h.components())
        c.push_back(v.action(m));
    return EquivariantMap(dom, cod, std::move(c));
}

PolyhedralNorm normed_product(const std::vector<PolyhedralNorm>& parts)
{
    return PolyhedralNorm::max_product(parts);
}

}   // namespace bcoh
