#include "bcoh/cochain.hpp"

#include <algorithm>

#include "bcoh/errors.hpp"
#include "bcoh/lp.hpp"

namespace bcoh {

namespace {

std::string num(std::size_t x)
{
    return std::to_string(x);
}

/** Max-product norm over blocks, reusing one flattened norm per object. */
PolyhedralNorm blocks_norm(const std::vector<CochainBlock>& blocks, const std::vector<PolyhedralNorm>& per_object)
{
    std::vector<PolyhedralNorm> parts;
    parts.reserve(blocks.size());
    for (const auto& b : blocks)
        parts.push_back(per_object[b.object]);
    return PolyhedralNorm::max_product(parts);
}

/** Adds f . (row block of m) for facet f over rows [offset, offset + f.size()) into out. */
void accumulate_rows(const Matrix& m, std::size_t offset, const Vector& f, Vector& out)
{
    for (std::size_t r = 0; r < f.size(); ++r)
    {
        if (f[r] == 0)
            continue;
        for (const auto& [j, v] : m.row(offset + r))
            out[j] += f[r] * v;
    }
}

}   // namespace

std::vector<std::string> audit_cochain_complex(const CochainComplex& c)
{
    std::vector<std::string> out;
    if (c.dims.size() != c.coboundary.size() + 1 || c.norms.size() != c.dims.size())
        return {"cochain complex has inconsistent degree ranges"};
    for (std::size_t k = 0; k < c.coboundary.size(); ++k)
    {
        if (c.coboundary[k].cols() != c.dims[k] || c.coboundary[k].rows() != c.dims[k + 1])
            out.push_back("coboundary " + num(k) + " has the wrong shape");
        if (c.norms[k].dim() != c.dims[k])
            out.push_back("norm in degree " + num(k) + " has the wrong dimension");
    }
    if (!out.empty())
        return out;
    for (std::size_t k = 0; k + 1 < c.coboundary.size(); ++k)
        if (!(c.coboundary[k + 1] * c.coboundary[k]).is_zero())
            out.push_back("d^" + num(k + 1) + " d^" + num(k) + " is nonzero");
    return out;
}

std::size_t BarCochains::block_index(ObjectId e, const Path& path) const
{
    const std::size_t k = path.size();
    if (k == 0)
        return fiber_start[0][e];
    return fiber_start[k][e] + bases[k].index(path);
}

BarCochains cochain_complex(const NormedModule& v, int n, const Limits& limits)
{
    if (n < 0)
        throw InvalidArgument("cochain complex degree must be nonnegative");
    const FiniteGroupoid& G = *v.base();
    const std::size_t objects = G.object_count();
    const std::size_t top = static_cast<std::size_t>(n) + 1;

    BarCochains c;
    c.module = v;
    c.bases.resize(top + 1);
    for (std::size_t k = 1; k <= top; ++k)
        c.bases[k] = BarBasis(G, BarKind::Inhomogeneous, k - 1, limits.path_cap);

    std::vector<PolyhedralNorm> per_object;
    for (ObjectId e = 0; e < objects; ++e)
        per_object.push_back(PolyhedralNorm::max_product({v.fiber_norm(e)}));

    c.blocks.resize(top + 1);
    c.fiber_start.resize(top + 1);
    for (std::size_t k = 0; k <= top; ++k)
    {
        std::size_t offset = 0;
        for (ObjectId e = 0; e < objects; ++e)
        {
            c.fiber_start[k].push_back(c.blocks[k].size());
            const std::size_t d = v.fiber_dim(e);
            if (k == 0)
            {
                c.blocks[k].push_back({e, {}, offset, d});
                offset += d;
                continue;
            }
            for (const Path& p : c.bases[k].fiber(e))
            {
                c.blocks[k].push_back({e, p, offset, d});
                offset += d;
            }
        }
        c.complex.dims.push_back(offset);
        c.complex.norms.push_back(blocks_norm(c.blocks[k], per_object));
    }

    for (std::size_t k = 0; k < top; ++k)
    {
        MatrixBuilder b(c.complex.dims[k + 1], c.complex.dims[k]);
        const int last_sign = (k + 1) % 2 ? -1 : 1;
        for (const CochainBlock& row : c.blocks[k + 1])
        {
            const Path& p = row.path;   // (g_1, ..., g_{k+1})
            const Matrix id = Matrix::identity(row.dim);
            const MorphismId g1 = p[0];
            const Path rest(p.begin() + 1, p.end());
            const CochainBlock& first = c.blocks[k][c.block_index(G.source(g1), rest)];
            b.add_block(row.offset, first.offset, v.action(g1));
            for (std::size_t i = 1; i <= k; ++i)
            {
                Path merged;
                merged.reserve(k);
                merged.insert(merged.end(), p.begin(), p.begin() + (i - 1));
                merged.push_back(G.compose(p[i - 1], p[i]));
                merged.insert(merged.end(), p.begin() + i + 1, p.end());
                const CochainBlock& col = c.blocks[k][c.block_index(row.object, merged)];
                b.add_block(row.offset, col.offset, id, Rational(i % 2 ? -1 : 1));
            }
            const CochainBlock& dropped = c.blocks[k][c.block_index(row.object, Path(p.begin(), p.end() - 1))];
            b.add_block(row.offset, dropped.offset, id, Rational(last_sign));
        }
        c.complex.coboundary.push_back(b.build());
    }
    return c;
}

Matrix extension_matrix(const BarCochains& c, const BarComplex& bar, const NormedModule& hom, std::size_t k)
{
    const FiniteGroupoid& G = *c.module.base();
    if (bar.kind != BarKind::Inhomogeneous || k > bar.max_degree() || k >= c.blocks.size())
        throw InvalidArgument("extension_matrix needs the inhomogeneous bar complex in degree " + num(k));
    MatrixBuilder b(hom.total_dim(), c.complex.dims[k]);
    for (ObjectId e = 0; e < G.object_count(); ++e)
    {
        const std::size_t d = c.module.fiber_dim(e);
        const auto& paths = bar.bases[k].fiber(e);
        for (std::size_t j = 0; j < paths.size(); ++j)
        {
            const MorphismId g0 = paths[j][0];
            const Path rest(paths[j].begin() + 1, paths[j].end());
            const CochainBlock& blk = c.blocks[k][c.block_index(G.source(g0), rest)];
            b.add_block(hom.fiber_offset(e) + j * d, blk.offset, c.module.action(g0));
        }
    }
    return b.build();
}

SeminormResult class_seminorm(const CochainComplex& c, std::size_t k, const Vector& cocycle, const Limits& limits)
{
    if (k > c.top_degree())
        throw InvalidArgument("seminorm requested above the top degree " + num(c.top_degree()));
    if (cocycle.size() != c.dims[k])
        throw DimensionMismatch("cocycle of length " + num(cocycle.size()) + " in degree of dimension " + num(c.dims[k]));
    if (!is_zero(c.coboundary[k].apply(cocycle)))
        throw InvalidArgument("seminorm requested for a cochain that is not a cocycle");
    if (k == 0 || is_zero(cocycle))
        return {c.norms[k].eval(cocycle), Vector(k == 0 ? 0 : c.dims[k - 1], Rational(0))};
    if (c.dims[k - 1] > limits.lp_var_cap)
        throw ResourceCapExceeded("seminorm LP needs " + num(c.dims[k - 1]) + " variables, cap is " +
                                  num(limits.lp_var_cap));

    const Matrix& d = c.coboundary[k - 1];
    const std::vector<std::size_t> pivots = row_reduce(d).pivot_columns;
    const Matrix dp = d.select_columns(pivots);
    const std::size_t m = pivots.size();
    const PolyhedralNorm& norm = c.norms[k];

    LPProblem lp;
    lp.variables = m + 1;
    lp.objective = Vector(m + 1, Rational(0));
    lp.objective[m] = 1;
    auto add_facet = [&](const Vector& f, std::size_t offset) {
        Vector fd(m + 1, Rational(0));
        accumulate_rows(dp, offset, f, fd);
        Rational fc = 0;
        for (std::size_t r = 0; r < f.size(); ++r)
            fc += f[r] * cocycle[offset + r];
        // |f.(c - D u)| <= t
        LinearConstraint up{fd, Relation::LessEqual, fc};
        up.coefficients[m] = -1;
        for (std::size_t i = 0; i < m; ++i)
            fd[i] = -fd[i];
        fd[m] = -1;
        LinearConstraint lo{std::move(fd), Relation::LessEqual, -fc};
        lp.constraints.push_back(std::move(up));
        lp.constraints.push_back(std::move(lo));
    };
    if (norm.combine() == Combine::Max)
    {
        for (std::size_t bi = 0; bi < norm.blocks().size(); ++bi)
            for (const Vector& f : norm.blocks()[bi].facets)
                add_facet(f, norm.block_offset(bi));
    }
    else
    {
        for (const Vector& f : norm.all_facets())
            add_facet(f, 0);
    }

    LPResult r = solve_lp(lp);
    if (r.status != LPStatus::Optimal)
        throw Error("seminorm LP did not reach an optimum");
    SeminormResult out;
    out.value = r.value;
    out.witness = Vector(c.dims[k - 1], Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        out.witness[pivots[i]] = r.witness[i];
    return out;
}

Vector CohomologyResult::class_coordinates(std::size_t k, const Vector& cocycle) const
{
    const CohomologyDegree& d = degrees.at(k);
    if (!d.cocycles.contains(cocycle))
        throw InvalidArgument("vector is not a cocycle in degree " + num(k));
    Vector all = d.cocycles.coordinates(cocycle);
    return Vector(all.begin() + d.boundary_rank, all.end());
}

bool CohomologyResult::is_cocycle_in(std::size_t k, const Vector& x) const
{
    return degrees.at(k).cocycles.contains(x);
}

CohomologyResult cohomology(const CochainComplex& c, const CohomologyOptions& options)
{
    auto fails = audit_cochain_complex(c);
    if (!fails.empty())
        throw InvalidArgument(fails.front());
    CohomologyResult out;
    const std::size_t top = std::min(options.max_degree, c.top_degree());
    for (std::size_t k = 0; k <= top; ++k)
    {
        CohomologyDegree d;
        std::vector<Vector> z = kernel_basis(c.coboundary[k]);
        std::vector<Vector> b = k == 0 ? std::vector<Vector>{} : image_basis(c.coboundary[k - 1]);
        d.boundary_rank = b.size();
        std::vector<Vector> basis = b;
        if (!z.empty())
        {
            std::vector<Vector> both = b;
            both.insert(both.end(), z.begin(), z.end());
            for (std::size_t p : row_reduce(Matrix::from_columns(both, c.dims[k])).pivot_columns)
                if (p >= b.size())
                    d.representatives.push_back(z[p - b.size()]);
        }
        basis.insert(basis.end(), d.representatives.begin(), d.representatives.end());
        d.dim = d.representatives.size();
        if (d.dim + d.boundary_rank != z.size())
            throw Error("boundaries are not contained in the cocycles in degree " + num(k));
        d.cocycles = Subspace(c.dims[k], basis);
        if (options.seminorms && k <= options.seminorm_max_degree)
            for (const Vector& r : d.representatives)
                d.seminorms.push_back(class_seminorm(c, k, r, options.limits).value);
        out.degrees.push_back(std::move(d));
    }
    return out;
}

Matrix induced_on_cohomology(const Matrix& f, const CohomologyResult& dom, const CohomologyResult& cod, std::size_t k)
{
    const CohomologyDegree& src = dom.degrees.at(k);
    std::vector<Vector> cols;
    for (const Vector& r : src.representatives)
        cols.push_back(cod.class_coordinates(k, f.apply(r)));
    return Matrix::from_columns(cols, cod.degrees.at(k).dim);
}

std::vector<Matrix> pullback_cochain_map(const GroupoidMap& f, const BarCochains& over_h, const BarCochains& over_g)
{
    if (!(*f.codomain() == *over_h.module.base()) || !(*f.domain() == *over_g.module.base()))
        throw InvalidArgument("pullback_cochain_map: complexes do not match the map");
    const std::size_t degrees = std::min(over_h.blocks.size(), over_g.blocks.size());
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < degrees; ++k)
    {
        MatrixBuilder b(over_g.complex.dims[k], over_h.complex.dims[k]);
        Path q;
        for (const CochainBlock& blk : over_g.blocks[k])
        {
            q = blk.path;
            for (auto& x : q)
                x = f.on_morphism(x);
            const CochainBlock& src = over_h.blocks[k][over_h.block_index(f.on_object(blk.object), q)];
            if (src.dim != blk.dim)
                throw DimensionMismatch("pulled-back module has a fiber of the wrong dimension");
            b.add_block(blk.offset, src.offset, Matrix::identity(blk.dim));
        }
        out.push_back(b.build());
    }
    return out;
}

std::vector<Matrix> coefficient_cochain_map(const FiberMap& t, const BarCochains& over_v, const BarCochains& over_w)
{
    if (!(*over_v.module.base() == *over_w.module.base()))
        throw InvalidArgument("coefficient_cochain_map: modules over different groupoids");
    const std::size_t degrees = std::min(over_v.blocks.size(), over_w.blocks.size());
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < degrees; ++k)
    {
        MatrixBuilder b(over_w.complex.dims[k], over_v.complex.dims[k]);
        for (std::size_t i = 0; i < over_v.blocks[k].size(); ++i)
        {
            const CochainBlock& src = over_v.blocks[k][i];
            b.add_block(over_w.blocks[k][i].offset, src.offset, t.at(src.object));
        }
        out.push_back(b.build());
    }
    return out;
}

}   // namespace bcoh
