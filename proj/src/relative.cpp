#include "bcoh/relative.hpp"

#include <algorithm>

#include "bcoh/errors.hpp"

namespace bcoh {

namespace {

std::string num(std::size_t x)
{
    return std::to_string(x);
}

/** Selection matrix: column i of the result is e_{idx[i]} in R^n. */
Matrix coordinate_inclusion(std::size_t n, const std::vector<std::size_t>& idx)
{
    MatrixBuilder b(n, idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        b.add(idx[i], i, Rational(1));
    return b.build();
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& used)
{
    std::vector<bool> hit(n, false);
    for (std::size_t i : used)
        hit[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (!hit[i])
            out.push_back(i);
    return out;
}

/** Selected submatrix, checking that the dropped rows vanish on the selected columns. */
Matrix restrict_map(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                    const char* what)
{
    Matrix by_cols = m.select_columns(cols);
    for (std::size_t i : complement(m.rows(), rows))
        if (!by_cols.row(i).empty())
            throw InvalidArgument(std::string(what) + " does not preserve the relative cochains");
    return by_cols.select_rows(rows);
}

std::size_t checked_rank(const Matrix& m)
{
    return m.rows() == 0 || m.cols() == 0 ? 0 : rank(m);
}

ExactnessSlot slot(std::string name, std::size_t dim, const Matrix* in, const Matrix* out)
{
    ExactnessSlot s;
    s.name = std::move(name);
    s.dim = dim;
    s.rank_in = in ? checked_rank(*in) : 0;
    s.rank_out = out ? checked_rank(*out) : 0;
    if (in && out)
        s.composite_zero = ((*out) * (*in)).is_zero();
    return s;
}

}   // namespace

RelativeComplex relative_complex(const GroupoidPair& pair, const NormedModule& v, int n, const Limits& limits)
{
    if (!(*pair.ambient() == *v.base()))
        throw InvalidArgument("relative_complex: module does not live over the ambient groupoid");
    RelativeComplex r;
    r.pair = pair;
    r.ambient = cochain_complex(v, n, limits);
    r.sub = cochain_complex(pullback(pair.inclusion(), v), n, limits);
    r.restriction = pullback_cochain_map(pair.inclusion(), r.ambient, r.sub);

    std::vector<PolyhedralNorm> per_object;
    for (ObjectId e = 0; e < v.base()->object_count(); ++e)
        per_object.push_back(PolyhedralNorm::max_product({v.fiber_norm(e)}));

    const std::size_t degrees = r.ambient.complex.dims.size();
    for (std::size_t k = 0; k < degrees; ++k)
    {
        std::vector<std::size_t> used;
        const Matrix& res = r.restriction[k];
        for (std::size_t i = 0; i < res.rows(); ++i)
            for (const auto& [j, x] : res.row(i))
                used.push_back(j);
        std::vector<std::size_t> kept = complement(res.cols(), used);
        std::vector<PolyhedralNorm> parts;
        std::vector<bool> is_kept(res.cols(), false);
        for (std::size_t i : kept)
            is_kept[i] = true;
        for (const CochainBlock& b : r.ambient.blocks[k])
            if (b.dim > 0 && is_kept[b.offset])
                parts.push_back(per_object[b.object]);
        r.kernel.dims.push_back(kept.size());
        r.kernel.norms.push_back(PolyhedralNorm::max_product(parts));
        r.kernel_inclusion.push_back(coordinate_inclusion(res.cols(), kept));
        r.kernel_coordinates.push_back(std::move(kept));
    }
    for (std::size_t k = 0; k + 1 < degrees; ++k)
        r.kernel.coboundary.push_back(restrict_map(r.ambient.complex.coboundary[k], r.kernel_coordinates[k + 1],
                                                   r.kernel_coordinates[k], "coboundary"));
    return r;
}

std::vector<std::string> audit_relative_complex(const RelativeComplex& r)
{
    std::vector<std::string> out = audit_cochain_complex(r.kernel);
    for (std::size_t k = 0; k < r.restriction.size(); ++k)
    {
        const Matrix& res = r.restriction[k];
        if (checked_rank(res) != r.sub.complex.dims[k])
            out.push_back("restriction is not surjective in degree " + num(k));
        if (!(res * r.kernel_inclusion[k]).is_zero())
            out.push_back("kernel does not restrict to zero in degree " + num(k));
        if (r.kernel.dims[k] + r.sub.complex.dims[k] != r.ambient.complex.dims[k])
            out.push_back("kernel and restriction dimensions do not add up in degree " + num(k));
    }
    for (std::size_t k = 0; k + 1 < r.restriction.size(); ++k)
    {
        if (!(r.restriction[k + 1] * r.ambient.complex.coboundary[k] == r.sub.complex.coboundary[k] * r.restriction[k]))
            out.push_back("restriction is not a cochain map in degree " + num(k));
        if (!(r.ambient.complex.coboundary[k] * r.kernel_inclusion[k] ==
              r.kernel_inclusion[k + 1] * r.kernel.coboundary[k]))
            out.push_back("kernel is not a subcomplex in degree " + num(k));
    }
    return out;
}

std::vector<Matrix> relative_pullback_map(const GroupoidMap& f, const RelativeComplex& over_h, const RelativeComplex& over_g)
{
    std::vector<Matrix> full = pullback_cochain_map(f, over_h.ambient, over_g.ambient);
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < full.size(); ++k)
        out.push_back(restrict_map(full[k], over_g.kernel_coordinates[k], over_h.kernel_coordinates[k], "map of pairs"));
    return out;
}

bool LongExactSequence::exact() const
{
    return std::all_of(slots.begin(), slots.end(), [](const ExactnessSlot& s) { return s.exact(); });
}

LongExactSequence long_exact_sequence(const GroupoidPair& pair, const NormedModule& v, int n,
                                      const CohomologyOptions& options)
{
    if (n < 0)
        throw InvalidArgument("long exact sequence degree must be nonnegative");
    const std::size_t top = static_cast<std::size_t>(n);
    LongExactSequence les;
    les.complexes = relative_complex(pair, v, n + 1, options.limits);
    const RelativeComplex& rc = les.complexes;

    CohomologyOptions lower = options;
    lower.max_degree = top;
    lower.seminorm_max_degree = std::min(options.seminorm_max_degree, top);
    CohomologyOptions upper = lower;
    upper.max_degree = top + 1;
    les.relative = cohomology(rc.kernel, upper);
    les.ambient = cohomology(rc.ambient.complex, lower);
    les.sub = cohomology(rc.sub.complex, lower);

    for (std::size_t k = 0; k <= top; ++k)
    {
        les.j.push_back(induced_on_cohomology(rc.kernel_inclusion[k], les.relative, les.ambient, k));
        les.r.push_back(induced_on_cohomology(rc.restriction[k], les.ambient, les.sub, k));

        std::vector<Vector> cols;
        const auto& reps = les.sub.degrees[k].representatives;
        for (std::size_t i = 0; i < reps.size(); ++i)
        {
            Vector lifted = rc.restriction[k].apply_left(reps[i]);
            Vector image = rc.ambient.complex.coboundary[k].apply(lifted);
            Vector in_kernel;
            for (std::size_t idx : rc.kernel_coordinates[k + 1])
                in_kernel.push_back(image[idx]);
            cols.push_back(les.relative.class_coordinates(k + 1, in_kernel));

            const bool have_norms = i < les.sub.degrees[k].seminorms.size() && k + 1 <= options.seminorm_max_degree;
            if (have_norms && les.sub.degrees[k].seminorms[i] > 0)
            {
                Rational image_norm = class_seminorm(rc.kernel, k + 1, in_kernel, options.limits).value;
                Rational ratio = image_norm / les.sub.degrees[k].seminorms[i];
                if (!les.connecting_ratio || ratio > *les.connecting_ratio)
                    les.connecting_ratio = ratio;
            }
        }
        les.connecting.push_back(Matrix::from_columns(cols, les.relative.degrees[k + 1].dim));
    }

    for (std::size_t k = 0; k <= top; ++k)
    {
        les.slots.push_back(slot("H^" + num(k) + "(G,A)", les.relative.degrees[k].dim,
                                 k == 0 ? nullptr : &les.connecting[k - 1], &les.j[k]));
        les.slots.push_back(slot("H^" + num(k) + "(G)", les.ambient.degrees[k].dim, &les.j[k], &les.r[k]));
        les.slots.push_back(slot("H^" + num(k) + "(A)", les.sub.degrees[k].dim, &les.r[k], &les.connecting[k]));
    }
    return les;
}

FamilyCohomology family_cohomology(const GroupTable& table, const std::vector<std::vector<std::size_t>>& subgroups,
                                   const NormedModule& v, int n, const CohomologyOptions& options)
{
    const std::size_t unit = validate_group_table(table);
    const std::size_t order = table.size();
    if (subgroups.empty())
        throw InvalidArgument("family_cohomology needs at least one subgroup");
    for (std::size_t i = 0; i < subgroups.size(); ++i)
    {
        const auto& s = subgroups[i];
        std::vector<bool> in(order, false);
        for (std::size_t a : s)
        {
            if (a >= order)
                throw InvalidArgument("subgroup " + num(i) + " names element " + num(a) + " outside the group");
            in[a] = true;
        }
        if (!in[unit])
            throw InvalidArgument("subgroup " + num(i) + " does not contain the identity");
        for (std::size_t a : s)
            for (std::size_t b : s)
                if (!in[table[a][b]])
                    throw InvalidArgument("subgroup " + num(i) + " is not closed under multiplication");
    }

    FamilyCohomology out;
    out.group = share(from_group_table(table));
    if (!(*out.group == *v.base()))
        throw InvalidArgument("family_cohomology: module does not live over the group");
    const std::size_t k = subgroups.size();
    out.blow_up = share(blow_up(table, k));

    std::vector<MorphismId> collapse(out.blow_up->morphism_count());
    for (MorphismId m = 0; m < collapse.size(); ++m)
        collapse[m] = m % order;
    out.collapse = GroupoidMap(out.blow_up, out.group, std::vector<ObjectId>(k, 0), collapse);

    std::vector<MorphismId> sub;
    for (std::size_t i = 0; i < k; ++i)
    {
        std::vector<MorphismId> vertex(order);
        for (std::size_t g = 0; g < order; ++g)
            vertex[g] = blow_up_morphism(order, k, i, i, g);
        out.vertex_inclusions.emplace_back(out.group, out.blow_up, std::vector<ObjectId>{i}, vertex);
        std::vector<bool> seen(order, false);
        for (std::size_t a : subgroups[i])
            if (!seen[a])
            {
                seen[a] = true;
                sub.push_back(blow_up_morphism(order, k, i, i, a));
            }
    }
    std::sort(sub.begin(), sub.end());
    GroupoidPair pair(subgroupoid(out.blow_up, sub));
    NormedModule vi = pullback(out.collapse, v);

    out.les = long_exact_sequence(pair, vi, n, options);
    CohomologyOptions lower = options;
    lower.max_degree = static_cast<std::size_t>(n);
    BarCochains over_group = cochain_complex(v, n, options.limits);
    out.absolute = cohomology(over_group.complex, lower);

    const BarCochains& over_blow = out.les.complexes.ambient;
    out.vertex_maps_agree = true;
    for (const GroupoidMap& l : out.vertex_inclusions)
    {
        std::vector<Matrix> f = pullback_cochain_map(l, over_blow, over_group);
        std::vector<Matrix> maps;
        for (std::size_t d = 0; d <= static_cast<std::size_t>(n); ++d)
            maps.push_back(induced_on_cohomology(f[d], out.les.ambient, out.absolute, d));
        if (!out.vertex_maps.empty() && !(maps == out.vertex_maps.front()))
            out.vertex_maps_agree = false;
        out.vertex_maps.push_back(std::move(maps));
    }

    GroupoidMap fold = compose(out.collapse, pair.inclusion());
    std::vector<Matrix> psi = pullback_cochain_map(fold, over_group, out.les.complexes.sub);
    out.restriction_factors = true;
    for (std::size_t d = 0; d <= static_cast<std::size_t>(n); ++d)
    {
        Matrix h_psi = induced_on_cohomology(psi[d], out.absolute, out.les.sub, d);
        if (!(out.les.r[d] == h_psi * out.vertex_maps.front()[d]))
            out.restriction_factors = false;
    }
    return out;
}

}   // namespace bcoh
