#include "bcoh/norm.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bcoh/errors.hpp"
#include "bcoh/linalg.hpp"
#include "bcoh/lp.hpp"

namespace bcoh {

namespace {

Rational abs_value(const Rational& x)
{
    return x < 0 ? Rational(-x) : x;
}

/** Flip sign so the first nonzero entry is positive. Returns false for the zero vector. */
bool sign_normalize(Vector& v)
{
    for (const auto& x : v)
    {
        if (x.is_zero())
            continue;
        if (x < 0)
        {
            for (auto& y : v)
                y = -y;
        }
        return true;
    }
    return false;
}

std::vector<Vector> canonical(const std::vector<Vector>& in)
{
    std::set<Vector> s;
    for (auto v : in)
    {
        if (sign_normalize(v))
            s.insert(std::move(v));
    }
    return {s.begin(), s.end()};
}

void require_cap(std::size_t d, const char* what)
{
    if (d > kConversionDimCap)
        throw ResourceCapExceeded(std::string(what) + " in dimension " + std::to_string(d) + " (cap " +
                                  std::to_string(kConversionDimCap) + ")");
}

void require_spanning(std::size_t d, const std::vector<Vector>& vs, const char* what)
{
    if (vs.empty())
    {
        if (d == 0)
            return;
        throw InvalidArgument(std::string("degenerate norm: no ") + what);
    }
    for (const auto& v : vs)
    {
        if (v.size() != d)
            throw DimensionMismatch(std::string(what) + " of length " + std::to_string(v.size()) + " in dimension " + std::to_string(d));
    }
    if (rank(Matrix::from_dense(vs, d)) != d)
        throw InvalidArgument(std::string("degenerate norm: ") + what + " do not span");
}

/** Calls f(subset) for every k-subset of {0..n-1} in lexicographic order. */
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F f)
{
    if (k > n)
        return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    for (;;)
    {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

NormBlock abs_block()
{
    NormBlock b;
    b.dim = 1;
    b.facets = {Vector{1}};
    b.vertices = {Vector{1}};
    b.has_vertices = true;
    return b;
}

Vector lift(const Vector& x, std::size_t offset, std::size_t n)
{
    Vector out(n, Rational(0));
    std::copy(x.begin(), x.end(), out.begin() + static_cast<std::ptrdiff_t>(offset));
    return out;
}

/** All sums a_1 + ... + a_k with a_b drawn from +-choices[b]; used for product facets/vertices. */
std::vector<Vector> signed_products(const std::vector<std::vector<Vector>>& choices, std::size_t n)
{
    std::vector<Vector> acc{Vector(n, Rational(0))};
    for (std::size_t b = 0; b < choices.size(); ++b)
    {
        std::vector<Vector> next;
        for (const auto& a : acc)
        {
            for (const auto& c : choices[b])
            {
                for (int s : {1, -1})
                {
                    Vector v = a;
                    for (std::size_t i = 0; i < n; ++i)
                        v[i] += c[i] * s;
                    next.push_back(std::move(v));
                }
            }
        }
        acc = canonical(next);
    }
    return acc;
}

}   // namespace

std::vector<Vector> enumerate_vertices(std::size_t d, const std::vector<Vector>& facets)
{
    require_cap(d, "vertex enumeration");
    if (d == 0)
        return {};
    std::vector<Vector> f = canonical(facets);
    require_spanning(d, f, "facets");
    std::set<Vector> found;
    for_each_subset(f.size(), d, [&](const std::vector<std::size_t>& sub) {
        std::vector<Vector> rows;
        for (auto i : sub)
            rows.push_back(f[i]);
        Matrix a = Matrix::from_dense(rows, d);
        if (rank(a) != d)
            return;
        Matrix inv = inverse(a);
        // Sign patterns with the first sign fixed; the opposite pattern gives -x.
        for (std::size_t mask = 0; mask < (std::size_t(1) << (d - 1)); ++mask)
        {
            Vector rhs(d, Rational(1));
            for (std::size_t i = 1; i < d; ++i)
            {
                if (mask & (std::size_t(1) << (i - 1)))
                    rhs[i] = -1;
            }
            Vector x = inv.apply(rhs);
            bool inside = true;
            for (const auto& g : f)
            {
                if (abs_value(dot(g, x)) > 1)
                {
                    inside = false;
                    break;
                }
            }
            if (inside && sign_normalize(x))
                found.insert(std::move(x));
        }
    });
    return {found.begin(), found.end()};
}

Rational NormBlock::eval(const Vector& x) const
{
    Rational best = 0;
    for (const auto& f : facets)
    {
        Rational v = abs_value(dot(f, x));
        if (v > best)
            best = v;
    }
    return best;
}

Rational NormBlock::dual_eval(const Vector& y) const
{
    Rational best = 0;
    if (has_vertices)
    {
        for (const auto& v : vertices)
        {
            Rational s = abs_value(dot(v, y));
            if (s > best)
                best = s;
        }
        return best;
    }
    if (is_zero(y))
        return best;
    // max y.x over the ball, i.e. min -y.x subject to |f.x| <= 1.
    LPProblem lp;
    lp.variables = dim;
    for (const auto& x : y)
        lp.objective.push_back(-x);
    for (const auto& f : facets)
    {
        lp.constraints.push_back({f, Relation::LessEqual, 1});
        lp.constraints.push_back({f, Relation::GreaterEqual, -1});
    }
    LPResult r = solve_lp(lp);
    if (r.status != LPStatus::Optimal)
        throw Error("dual norm LP did not reach an optimum");
    return -r.value;
}

PolyhedralNorm PolyhedralNorm::from_blocks(Combine c, std::vector<NormBlock> blocks)
{
    PolyhedralNorm n;
    n.combine_ = blocks.size() <= 1 ? Combine::Max : c;
    n.blocks_ = std::move(blocks);
    for (const auto& b : n.blocks_)
    {
        n.offsets_.push_back(n.dim_);
        n.dim_ += b.dim;
    }
    return n;
}

PolyhedralNorm PolyhedralNorm::zero()
{
    return from_blocks(Combine::Max, {});
}

PolyhedralNorm PolyhedralNorm::absolute_value()
{
    return from_blocks(Combine::Max, {abs_block()});
}

PolyhedralNorm PolyhedralNorm::linf(std::size_t d)
{
    return from_blocks(Combine::Max, std::vector<NormBlock>(d, abs_block()));
}

PolyhedralNorm PolyhedralNorm::l1(std::size_t d)
{
    return from_blocks(Combine::Sum, std::vector<NormBlock>(d, abs_block()));
}

PolyhedralNorm PolyhedralNorm::from_facets(std::size_t d, const std::vector<Vector>& facets)
{
    NormBlock b;
    b.dim = d;
    b.facets = canonical(facets);
    require_spanning(d, b.facets, "facets");
    if (d == 0)
        return zero();
    if (d <= kConversionDimCap)
    {
        b.vertices = enumerate_vertices(d, b.facets);
        b.facets = enumerate_vertices(d, b.vertices);
        b.has_vertices = true;
    }
    return from_blocks(Combine::Max, {std::move(b)});
}

PolyhedralNorm PolyhedralNorm::facets_only(std::size_t d, const std::vector<Vector>& facets)
{
    NormBlock b;
    b.dim = d;
    b.facets = canonical(facets);
    require_spanning(d, b.facets, "facets");
    if (d == 0)
        return zero();
    return from_blocks(Combine::Max, {std::move(b)});
}

PolyhedralNorm PolyhedralNorm::from_vertices(std::size_t d, const std::vector<Vector>& vertices)
{
    require_cap(d, "facet enumeration");
    if (d == 0)
        return zero();
    std::vector<Vector> v = canonical(vertices);
    require_spanning(d, v, "vertices");
    NormBlock b;
    b.dim = d;
    b.facets = enumerate_vertices(d, v);
    b.vertices = enumerate_vertices(d, b.facets);
    b.has_vertices = true;
    return from_blocks(Combine::Max, {std::move(b)});
}

NormBlock PolyhedralNorm::as_single_block() const
{
    if (blocks_.size() == 1)
        return blocks_[0];
    NormBlock b;
    b.dim = dim_;
    b.facets = all_facets();
    b.vertices = all_vertices();
    b.has_vertices = true;
    return b;
}

PolyhedralNorm PolyhedralNorm::max_product(const std::vector<PolyhedralNorm>& parts)
{
    std::vector<NormBlock> blocks;
    for (const auto& p : parts)
    {
        if (p.combine_ == Combine::Max)
            blocks.insert(blocks.end(), p.blocks_.begin(), p.blocks_.end());
        else
            blocks.push_back(p.as_single_block());
    }
    return from_blocks(Combine::Max, std::move(blocks));
}

PolyhedralNorm PolyhedralNorm::sum_product(const std::vector<PolyhedralNorm>& parts)
{
    std::vector<NormBlock> blocks;
    for (const auto& p : parts)
    {
        if (p.combine_ == Combine::Sum || p.blocks_.size() <= 1)
            blocks.insert(blocks.end(), p.blocks_.begin(), p.blocks_.end());
        else
            blocks.push_back(p.as_single_block());
    }
    return from_blocks(Combine::Sum, std::move(blocks));
}

bool PolyhedralNorm::has_vertex_data() const
{
    return std::all_of(blocks_.begin(), blocks_.end(), [](const NormBlock& b) { return b.has_vertices; });
}

Rational PolyhedralNorm::eval(const Vector& x) const
{
    if (x.size() != dim_)
        throw DimensionMismatch("norm of vector of length " + std::to_string(x.size()) + " in dimension " + std::to_string(dim_));
    Rational acc = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b)
    {
        Vector part(x.begin() + static_cast<std::ptrdiff_t>(offsets_[b]),
                    x.begin() + static_cast<std::ptrdiff_t>(offsets_[b] + blocks_[b].dim));
        Rational v = blocks_[b].eval(part);
        if (combine_ == Combine::Sum)
            acc += v;
        else if (v > acc)
            acc = v;
    }
    return acc;
}

Rational PolyhedralNorm::dual_eval(const Vector& y) const
{
    if (y.size() != dim_)
        throw DimensionMismatch("dual norm of vector of length " + std::to_string(y.size()) + " in dimension " + std::to_string(dim_));
    Rational acc = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b)
    {
        Vector part(y.begin() + static_cast<std::ptrdiff_t>(offsets_[b]),
                    y.begin() + static_cast<std::ptrdiff_t>(offsets_[b] + blocks_[b].dim));
        Rational v = blocks_[b].dual_eval(part);
        if (combine_ == Combine::Max)
            acc += v;
        else if (v > acc)
            acc = v;
    }
    return acc;
}

std::vector<Vector> PolyhedralNorm::all_facets() const
{
    if (combine_ == Combine::Max)
    {
        std::vector<Vector> out;
        for (std::size_t b = 0; b < blocks_.size(); ++b)
        {
            for (const auto& f : blocks_[b].facets)
                out.push_back(lift(f, offsets_[b], dim_));
        }
        return out;
    }
    require_cap(dim_, "facets of a sum of blocks");
    std::vector<std::vector<Vector>> choices;
    for (std::size_t b = 0; b < blocks_.size(); ++b)
    {
        std::vector<Vector> c;
        for (const auto& f : blocks_[b].facets)
            c.push_back(lift(f, offsets_[b], dim_));
        choices.push_back(std::move(c));
    }
    return signed_products(choices, dim_);
}

std::vector<Vector> PolyhedralNorm::all_vertices() const
{
    if (combine_ == Combine::Sum || blocks_.size() == 1)
    {
        std::vector<Vector> out;
        for (std::size_t b = 0; b < blocks_.size(); ++b)
        {
            if (!blocks_[b].has_vertices)
                throw ResourceCapExceeded("no vertex description in dimension " + std::to_string(blocks_[b].dim));
            for (const auto& v : blocks_[b].vertices)
                out.push_back(lift(v, offsets_[b], dim_));
        }
        return out;
    }
    require_cap(dim_, "vertices of a max of blocks");
    std::vector<std::vector<Vector>> choices;
    for (std::size_t b = 0; b < blocks_.size(); ++b)
    {
        if (!blocks_[b].has_vertices)
            throw ResourceCapExceeded("no vertex description in dimension " + std::to_string(blocks_[b].dim));
        std::vector<Vector> c;
        for (const auto& v : blocks_[b].vertices)
            c.push_back(lift(v, offsets_[b], dim_));
        choices.push_back(std::move(c));
    }
    return signed_products(choices, dim_);
}

bool PolyhedralNorm::operator==(const PolyhedralNorm& other) const
{
    if (dim_ != other.dim_ || combine_ != other.combine_ || blocks_.size() != other.blocks_.size())
        return false;
    for (std::size_t b = 0; b < blocks_.size(); ++b)
    {
        const auto& x = blocks_[b];
        const auto& y = other.blocks_[b];
        if (x.dim != y.dim || x.facets != y.facets || x.has_vertices != y.has_vertices || x.vertices != y.vertices)
            return false;
    }
    return true;
}

Rational norm_eval(const PolyhedralNorm& n, const Vector& x)
{
    return n.eval(x);
}

PolyhedralNorm PolyhedralNorm::dual() const
{
    std::vector<NormBlock> blocks;
    for (const auto& b : blocks_)
    {
        if (!b.has_vertices)
            throw ResourceCapExceeded("dual norm needs a vertex description in dimension " + std::to_string(b.dim));
        NormBlock d;
        d.dim = b.dim;
        d.facets = b.vertices;
        d.vertices = b.facets;
        d.has_vertices = true;
        blocks.push_back(std::move(d));
    }
    return from_blocks(combine_ == Combine::Max ? Combine::Sum : Combine::Max, std::move(blocks));
}

PolyhedralNorm dual_norm(const PolyhedralNorm& n)
{
    return n.dual();
}

PolyhedralNorm pullback_norm(const PolyhedralNorm& n, const Matrix& q)
{
    if (q.rows() != n.dim())
        throw DimensionMismatch("pullback of a norm in dimension " + std::to_string(n.dim()) + " along " +
                                std::to_string(q.rows()) + " rows");
    if (n.combine() != Combine::Max)
        throw InvalidArgument("pullback needs a max-combined norm");
    if (rank(q) != q.cols())
        throw InvalidArgument("pullback along a non-injective map");
    if (q.cols() == 0)
        return PolyhedralNorm::zero();
    Matrix qt = q.transpose();
    std::vector<Vector> facets;
    for (std::size_t b = 0; b < n.blocks().size(); ++b)
    {
        std::size_t off = n.block_offset(b);
        for (const auto& f : n.blocks()[b].facets)
        {
            // f^T Q restricted to the block rows.
            Vector g(q.cols(), Rational(0));
            for (std::size_t k = 0; k < f.size(); ++k)
            {
                if (f[k].is_zero())
                    continue;
                for (const auto& [j, v] : q.row(off + k))
                    g[j] += f[k] * v;
            }
            if (!is_zero(g))
                facets.push_back(std::move(g));
        }
    }
    return PolyhedralNorm::facets_only(q.cols(), facets);
}

QuotientNorm quotient_norm(const PolyhedralNorm& n, const std::vector<Vector>& subspace)
{
    const std::size_t d = n.dim();
    for (const auto& w : subspace)
    {
        if (w.size() != d)
            throw DimensionMismatch("subspace vector of length " + std::to_string(w.size()) + " in dimension " + std::to_string(d));
    }
    RowEchelon e = row_reduce(Matrix::from_dense(subspace, d));
    std::vector<bool> pivot(d, false);
    for (auto c : e.pivot_columns)
        pivot[c] = true;
    QuotientNorm q;
    for (std::size_t j = 0; j < d; ++j)
    {
        if (!pivot[j])
            q.complement.push_back(j);
    }
    const std::size_t k = q.complement.size();
    MatrixBuilder proj(k, d), lift_b(d, k);
    for (std::size_t c = 0; c < k; ++c)
    {
        proj.add(c, q.complement[c], 1);
        lift_b.add(q.complement[c], c, 1);
        for (std::size_t r = 0; r < e.pivot_columns.size(); ++r)
            proj.add(c, e.pivot_columns[r], -e.reduced.at(r, q.complement[c]));
    }
    q.projection = proj.build();
    q.lift = lift_b.build();
    if (k == 0)
    {
        q.norm = PolyhedralNorm::zero();
        return q;
    }
    std::vector<Vector> projected;
    for (const auto& v : n.all_vertices())
        projected.push_back(q.projection.apply(v));
    q.norm = PolyhedralNorm::from_vertices(k, projected);
    return q;
}

Rational distance_to_subspace(const PolyhedralNorm& n, const std::vector<Vector>& subspace, const Vector& v)
{
    // Variables: c (one per subspace vector), then t. Minimize t subject to |f.v - f.Wc| <= t.
    const std::size_t m = subspace.size();
    LPProblem lp;
    lp.variables = m + 1;
    lp.objective = Vector(m + 1, Rational(0));
    lp.objective[m] = 1;
    for (const auto& f : n.all_facets())
    {
        LinearConstraint up{Vector(m + 1), Relation::LessEqual, -dot(f, v)};
        LinearConstraint lo{Vector(m + 1), Relation::LessEqual, dot(f, v)};
        for (std::size_t i = 0; i < m; ++i)
        {
            Rational fw = dot(f, subspace[i]);
            up.coefficients[i] = -fw;
            lo.coefficients[i] = fw;
        }
        up.coefficients[m] = -1;
        lo.coefficients[m] = -1;
        lp.constraints.push_back(std::move(up));
        lp.constraints.push_back(std::move(lo));
    }
    LPResult r = solve_lp(lp);
    if (r.status != LPStatus::Optimal)
        throw Error("distance LP did not reach an optimum");
    return r.value;
}

Rational operator_norm(const Matrix& t, const PolyhedralNorm& dom, const PolyhedralNorm& cod)
{
    if (t.cols() != dom.dim() || t.rows() != cod.dim())
        throw DimensionMismatch("operator of shape " + std::to_string(t.rows()) + "x" + std::to_string(t.cols()) +
                                " between dimensions " + std::to_string(dom.dim()) + " and " + std::to_string(cod.dim()));
    Rational best = 0;
    if (dom.dim() == 0 || cod.dim() == 0)
        return best;
    if (dom.combine() == Combine::Sum || (dom.blocks().size() == 1 && dom.has_vertex_data()))
    {
        // Convex in x, so the maximum sits at a vertex of the domain ball.
        Matrix tt = t.transpose();
        std::vector<std::size_t> cod_block(cod.dim());
        for (std::size_t b = 0; b < cod.blocks().size(); ++b)
        {
            for (std::size_t k = 0; k < cod.blocks()[b].dim; ++k)
                cod_block[cod.block_offset(b) + k] = b;
        }
        for (std::size_t b = 0; b < dom.blocks().size(); ++b)
        {
            const auto& block = dom.blocks()[b];
            if (!block.has_vertices)
                throw ResourceCapExceeded("operator norm needs domain vertices in dimension " + std::to_string(block.dim));
            for (const auto& v : block.vertices)
            {
                std::map<std::size_t, Rational> image;
                for (std::size_t k = 0; k < v.size(); ++k)
                {
                    if (v[k].is_zero())
                        continue;
                    for (const auto& [i, x] : tt.row(dom.block_offset(b) + k))
                        image[i] += v[k] * x;
                }
                // Evaluate the codomain norm on the touched blocks only.
                Rational val = 0;
                auto it = image.begin();
                while (it != image.end())
                {
                    std::size_t c = cod_block[it->first];
                    const auto& cb = cod.blocks()[c];
                    Vector part(cb.dim, Rational(0));
                    for (; it != image.end() && cod_block[it->first] == c; ++it)
                        part[it->first - cod.block_offset(c)] = it->second;
                    Rational x = cb.eval(part);
                    if (cod.combine() == Combine::Sum)
                        val += x;
                    else if (x > val)
                        val = x;
                }
                if (val > best)
                    best = val;
            }
        }
        return best;
    }
    if (cod.combine() != Combine::Max && cod.blocks().size() > 1)
        return operator_norm(t, dom, PolyhedralNorm::facets_only(cod.dim(), cod.all_facets()));
    // ||T|| = max over codomain facets f of the dual domain norm of f^T T.
    std::vector<std::size_t> block_of(dom.dim());
    for (std::size_t b = 0; b < dom.blocks().size(); ++b)
    {
        for (std::size_t k = 0; k < dom.blocks()[b].dim; ++k)
            block_of[dom.block_offset(b) + k] = b;
    }
    for (std::size_t c = 0; c < cod.blocks().size(); ++c)
    {
        for (const auto& f : cod.blocks()[c].facets)
        {
            std::map<std::size_t, Rational> row;
            for (std::size_t k = 0; k < f.size(); ++k)
            {
                if (f[k].is_zero())
                    continue;
                for (const auto& [j, x] : t.row(cod.block_offset(c) + k))
                    row[j] += f[k] * x;
            }
            Rational total = 0;
            auto it = row.begin();
            while (it != row.end())
            {
                std::size_t b = block_of[it->first];
                const auto& block = dom.blocks()[b];
                Vector part(block.dim, Rational(0));
                for (; it != row.end() && block_of[it->first] == b; ++it)
                    part[it->first - dom.block_offset(b)] = it->second;
                total += block.dual_eval(part);
            }
            if (total > best)
                best = total;
        }
    }
    return best;
}

}   // namespace bcoh
