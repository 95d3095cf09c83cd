#include "bcoh/linalg.hpp"

#include <algorithm>
#include <map>

#include "bcoh/errors.hpp"

namespace bcoh {

namespace {

typedef Matrix::Row Row;

/** out = a - s * b, both sorted. */
Row axpy(const Row& a, const Rational& s, const Row& b)
{
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t p = 0, q = 0;
    while (p < a.size() || q < b.size())
    {
        if (q == b.size() || (p < a.size() && a[p].first < b[q].first))
            out.push_back(a[p++]);
        else if (p == a.size() || b[q].first < a[p].first)
        {
            out.emplace_back(b[q].first, -s * b[q].second);
            ++q;
        }
        else
        {
            Rational v = a[p].second - s * b[q].second;
            if (!v.is_zero())
                out.emplace_back(a[p].first, std::move(v));
            ++p;
            ++q;
        }
    }
    return out;
}

void normalize(Row& r)
{
    Rational lead = r.front().second;
    if (lead == 1)
        return;
    for (auto& e : r)
        e.second /= lead;
}

/** Echelon rows keyed by pivot column; not yet back-substituted. */
std::map<std::size_t, Row> echelon(const Matrix& m)
{
    std::map<std::size_t, Row> pivots;
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        Row r = m.row(i);
        // Reduce the leading entry until it lands on a fresh column.
        while (!r.empty())
        {
            auto it = pivots.find(r.front().first);
            if (it == pivots.end())
                break;
            Rational s = r.front().second;
            r = axpy(r, s, it->second);
        }
        if (r.empty())
            continue;
        normalize(r);
        std::size_t c = r.front().first;
        pivots.emplace(c, std::move(r));
    }
    return pivots;
}

}   // namespace

RowEchelon row_reduce(const Matrix& m)
{
    auto pivots = echelon(m);
    std::vector<std::size_t> cols;
    std::vector<Row> rows;
    for (auto& [c, r] : pivots)
    {
        cols.push_back(c);
        rows.push_back(std::move(r));
    }
    // Back substitution, last pivot first.
    for (std::size_t k = rows.size(); k-- > 0;)
    {
        std::size_t c = cols[k];
        for (std::size_t i = 0; i < k; ++i)
        {
            const auto& ri = rows[i];
            auto it = std::lower_bound(ri.begin(), ri.end(), c, [](const Matrix::Entry& e, std::size_t x) { return e.first < x; });
            if (it != ri.end() && it->first == c)
            {
                Rational s = it->second;
                rows[i] = axpy(ri, s, rows[k]);
            }
        }
    }
    MatrixBuilder b(rows.size(), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        for (const auto& [j, v] : rows[i])
            b.add(i, j, v);
    }
    return RowEchelon{b.build(), cols};
}

std::size_t rank(const Matrix& m)
{
    if (m.rows() > m.cols())
        return echelon(m.transpose()).size();
    return echelon(m).size();
}

std::vector<Vector> kernel_basis(const Matrix& m)
{
    RowEchelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_columns)
        is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f)
    {
        if (is_pivot[f])
            continue;
        Vector x(m.cols(), Rational(0));
        x[f] = 1;
        for (std::size_t i = 0; i < e.pivot_columns.size(); ++i)
            x[e.pivot_columns[i]] = -e.reduced.at(i, f);
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<Vector> image_basis(const Matrix& m)
{
    RowEchelon e = row_reduce(m);
    return m.select_columns(e.pivot_columns).columns();
}

std::optional<Vector> solve(const Matrix& m, const Vector& b)
{
    if (b.size() != m.rows())
        throw DimensionMismatch("right-hand side of length " + std::to_string(b.size()) + " for " + std::to_string(m.rows()) + " rows");
    Matrix aug = Matrix::hstack({m, Matrix::from_columns({b}, m.rows())});
    RowEchelon e = row_reduce(aug);
    Vector x(m.cols(), Rational(0));
    for (std::size_t i = 0; i < e.pivot_columns.size(); ++i)
    {
        if (e.pivot_columns[i] == m.cols())
            return std::nullopt;
        x[e.pivot_columns[i]] = e.reduced.at(i, m.cols());
    }
    return x;
}

Matrix inverse(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw DimensionMismatch("inverse of non-square matrix");
    std::size_t n = m.rows();
    RowEchelon e = row_reduce(Matrix::hstack({m, Matrix::identity(n)}));
    if (e.pivot_columns.size() < n || (n > 0 && e.pivot_columns[n - 1] != n - 1))
        throw InvalidArgument("matrix is singular");
    return e.reduced.submatrix(0, n, n, n);
}

Subspace::Subspace(std::size_t ambient_dim, const std::vector<Vector>& basis)
    : ambient_(ambient_dim), basis_(Matrix::from_columns(basis, ambient_dim))
{
    if (basis.empty())
        return;
    RowEchelon e = row_reduce(basis_.transpose());
    if (e.pivot_columns.size() != basis.size())
        throw InvalidArgument("subspace basis is linearly dependent");
    pivot_rows_ = e.pivot_columns;
    pivot_inverse_ = inverse(basis_.select_rows(pivot_rows_));
}

Vector Subspace::coordinates(const Vector& x) const
{
    if (x.size() != ambient_)
        throw DimensionMismatch("vector of length " + std::to_string(x.size()) + " in ambient dimension " + std::to_string(ambient_));
    Vector picked(pivot_rows_.size());
    for (std::size_t i = 0; i < pivot_rows_.size(); ++i)
        picked[i] = x[pivot_rows_[i]];
    if (picked.empty())
        return picked;
    return pivot_inverse_.apply(picked);
}

Matrix Subspace::coordinates(const Matrix& m) const
{
    if (m.rows() != ambient_)
        throw DimensionMismatch("matrix with " + std::to_string(m.rows()) + " rows in ambient dimension " + std::to_string(ambient_));
    if (pivot_rows_.empty())
        return Matrix(0, m.cols());
    return pivot_inverse_ * m.select_rows(pivot_rows_);
}

bool Subspace::contains(const Vector& x) const
{
    if (dim() == 0)
        return bcoh::is_zero(x);
    return basis_.apply(coordinates(x)) == x;
}

}   // namespace bcoh
