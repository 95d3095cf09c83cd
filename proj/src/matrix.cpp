#include "bcoh/matrix.hpp"

#include <algorithm>
#include <string>

#include "bcoh/errors.hpp"

namespace bcoh {

namespace {

std::string shape(std::size_t r, std::size_t c)
{
    return std::to_string(r) + "x" + std::to_string(c);
}

/** Dense accumulator over a fixed column range that remembers touched slots. */
class RowAccumulator
{
  public:
    explicit RowAccumulator(std::size_t n) : values_(n), touched_(n, false) {}

    void add(std::size_t j, const Rational& v)
    {
        if (!touched_[j])
        {
            touched_[j] = true;
            order_.push_back(j);
            values_[j] = v;
        }
        else
            values_[j] += v;
    }

    Matrix::Row take()
    {
        std::sort(order_.begin(), order_.end());
        Matrix::Row out;
        for (auto j : order_)
        {
            if (!values_[j].is_zero())
                out.emplace_back(j, std::move(values_[j]));
            values_[j] = 0;
            touched_[j] = false;
        }
        order_.clear();
        return out;
    }

  private:
    std::vector<Rational> values_;
    std::vector<bool> touched_;
    std::vector<std::size_t> order_;
};

}   // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i].emplace_back(i, Rational(1));
    return m;
}

Matrix Matrix::from_dense(const std::vector<Vector>& rows, std::size_t cols)
{
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        if (rows[i].size() != cols)
            throw DimensionMismatch("dense row " + std::to_string(i) + " has length " + std::to_string(rows[i].size()));
        for (std::size_t j = 0; j < cols; ++j)
        {
            if (!rows[i][j].is_zero())
                m.data_[i].emplace_back(j, rows[i][j]);
        }
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows)
{
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
    {
        if (columns[j].size() != rows)
            throw DimensionMismatch("column " + std::to_string(j) + " has length " + std::to_string(columns[j].size()));
        for (std::size_t i = 0; i < rows; ++i)
        {
            if (!columns[j][i].is_zero())
                m.data_[i].emplace_back(j, columns[j][i]);
        }
    }
    return m;
}

Matrix Matrix::block_diagonal(const std::vector<Matrix>& blocks)
{
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks)
    {
        r += b.rows_;
        c += b.cols_;
    }
    Matrix m(r, c);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks)
    {
        for (std::size_t i = 0; i < b.rows_; ++i)
        {
            for (const auto& [j, v] : b.data_[i])
                m.data_[r0 + i].emplace_back(c0 + j, v);
        }
        r0 += b.rows_;
        c0 += b.cols_;
    }
    return m;
}

Matrix Matrix::hstack(const std::vector<Matrix>& parts)
{
    if (parts.empty())
        return Matrix();
    std::size_t r = parts[0].rows_, c = 0;
    for (const auto& p : parts)
    {
        if (p.rows_ != r)
            throw DimensionMismatch("hstack of " + shape(r, 0) + " with " + shape(p.rows_, p.cols_));
        c += p.cols_;
    }
    Matrix m(r, c);
    std::size_t c0 = 0;
    for (const auto& p : parts)
    {
        for (std::size_t i = 0; i < r; ++i)
        {
            for (const auto& [j, v] : p.data_[i])
                m.data_[i].emplace_back(c0 + j, v);
        }
        c0 += p.cols_;
    }
    return m;
}

Matrix Matrix::vstack(const std::vector<Matrix>& parts)
{
    if (parts.empty())
        return Matrix();
    std::size_t c = parts[0].cols_, r = 0;
    for (const auto& p : parts)
    {
        if (p.cols_ != c)
            throw DimensionMismatch("vstack of " + shape(0, c) + " with " + shape(p.rows_, p.cols_));
        r += p.rows_;
    }
    Matrix m(r, c);
    std::size_t r0 = 0;
    for (const auto& p : parts)
    {
        for (std::size_t i = 0; i < p.rows_; ++i)
            m.data_[r0 + i] = p.data_[i];
        r0 += p.rows_;
    }
    return m;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b)
{
    Matrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
    {
        for (std::size_t k = 0; k < b.rows_; ++k)
        {
            auto& out = m.data_[i * b.rows_ + k];
            for (const auto& [j, va] : a.data_[i])
            {
                for (const auto& [l, vb] : b.data_[k])
                    out.emplace_back(j * b.cols_ + l, va * vb);
            }
        }
    }
    return m;
}

Rational Matrix::at(std::size_t i, std::size_t j) const
{
    if (i >= rows_ || j >= cols_)
        throw DimensionMismatch("index (" + std::to_string(i) + ", " + std::to_string(j) + ") outside " + shape(rows_, cols_));
    const auto& r = data_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j)
        return it->second;
    return Rational(0);
}

std::size_t Matrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& r : data_)
        n += r.size();
    return n;
}

bool Matrix::is_zero() const
{
    for (const auto& r : data_)
    {
        if (!r.empty())
            return false;
    }
    return true;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
    {
        for (const auto& [j, v] : data_[i])
            t.data_[j].emplace_back(i, v);
    }
    return t;
}

Vector Matrix::apply(const Vector& x) const
{
    if (x.size() != cols_)
        throw DimensionMismatch("apply " + shape(rows_, cols_) + " to vector of length " + std::to_string(x.size()));
    Vector y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
    {
        for (const auto& [j, v] : data_[i])
        {
            if (!x[j].is_zero())
                y[i] += v * x[j];
        }
    }
    return y;
}

Vector Matrix::apply_left(const Vector& x) const
{
    if (x.size() != rows_)
        throw DimensionMismatch("row vector of length " + std::to_string(x.size()) + " times " + shape(rows_, cols_));
    Vector y(cols_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
    {
        if (x[i].is_zero())
            continue;
        for (const auto& [j, v] : data_[i])
            y[j] += x[i] * v;
    }
    return y;
}

Vector Matrix::column(std::size_t j) const
{
    Vector c(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
        c[i] = at(i, j);
    return c;
}

std::vector<Vector> Matrix::columns() const
{
    std::vector<Vector> out(cols_, Vector(rows_, Rational(0)));
    for (std::size_t i = 0; i < rows_; ++i)
    {
        for (const auto& [j, v] : data_[i])
            out[j][i] = v;
    }
    return out;
}

std::vector<Vector> Matrix::to_dense() const
{
    std::vector<Vector> out(rows_, Vector(cols_, Rational(0)));
    for (std::size_t i = 0; i < rows_; ++i)
    {
        for (const auto& [j, v] : data_[i])
            out[i][j] = v;
    }
    return out;
}

Matrix Matrix::submatrix(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw DimensionMismatch("submatrix outside " + shape(rows_, cols_));
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
    {
        for (const auto& [j, v] : data_[r0 + i])
        {
            if (j >= c0 && j < c0 + nc)
                m.data_[i].emplace_back(j - c0, v);
        }
    }
    return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const
{
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
    {
        if (idx[i] >= rows_)
            throw DimensionMismatch("row index " + std::to_string(idx[i]) + " outside " + shape(rows_, cols_));
        m.data_[i] = data_[idx[i]];
    }
    return m;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const
{
    std::vector<std::vector<std::size_t>> where(cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
    {
        if (idx[k] >= cols_)
            throw DimensionMismatch("column index " + std::to_string(idx[k]) + " outside " + shape(rows_, cols_));
        where[idx[k]].push_back(k);
    }
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
    {
        for (const auto& [j, v] : data_[i])
        {
            for (auto k : where[j])
                m.data_[i].emplace_back(k, v);
        }
        std::sort(m.data_[i].begin(), m.data_[i].end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    }
    return m;
}

Matrix Matrix::operator*(const Matrix& other) const
{
    if (cols_ != other.rows_)
        throw DimensionMismatch("product " + shape(rows_, cols_) + " * " + shape(other.rows_, other.cols_));
    Matrix m(rows_, other.cols_);
    RowAccumulator acc(other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
    {
        for (const auto& [k, v] : data_[i])
        {
            for (const auto& [j, w] : other.data_[k])
                acc.add(j, v * w);
        }
        m.data_[i] = acc.take();
    }
    return m;
}

Matrix Matrix::operator+(const Matrix& other) const
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("sum " + shape(rows_, cols_) + " + " + shape(other.rows_, other.cols_));
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
    {
        const auto& a = data_[i];
        const auto& b = other.data_[i];
        auto& out = m.data_[i];
        std::size_t p = 0, q = 0;
        while (p < a.size() || q < b.size())
        {
            if (q == b.size() || (p < a.size() && a[p].first < b[q].first))
                out.push_back(a[p++]);
            else if (p == a.size() || b[q].first < a[p].first)
                out.push_back(b[q++]);
            else
            {
                Rational s = a[p].second + b[q].second;
                if (!s.is_zero())
                    out.emplace_back(a[p].first, std::move(s));
                ++p;
                ++q;
            }
        }
    }
    return m;
}

Matrix Matrix::operator-() const
{
    Matrix m = *this;
    for (auto& r : m.data_)
    {
        for (auto& e : r)
            e.second = -e.second;
    }
    return m;
}

Matrix Matrix::operator-(const Matrix& other) const
{
    return *this + (-other);
}

Matrix Matrix::operator*(const Rational& s) const
{
    Matrix m(rows_, cols_);
    if (s.is_zero())
        return m;
    for (std::size_t i = 0; i < rows_; ++i)
    {
        for (const auto& [j, v] : data_[i])
            m.data_[i].emplace_back(j, v * s);
    }
    return m;
}

bool Matrix::operator==(const Matrix& other) const
{
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m)
{
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? " " : "") << m.at(i, j);
    }
    return os << "]";
}

MatrixBuilder::MatrixBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows) {}

void MatrixBuilder::add(std::size_t i, std::size_t j, const Rational& v)
{
    if (i >= rows_ || j >= cols_)
        throw DimensionMismatch("builder index (" + std::to_string(i) + ", " + std::to_string(j) + ") outside " + shape(rows_, cols_));
    if (v.is_zero())
        return;
    auto [it, inserted] = cells_[i].emplace(j, v);
    if (!inserted)
        it->second += v;
}

void MatrixBuilder::set(std::size_t i, std::size_t j, const Rational& v)
{
    if (i >= rows_ || j >= cols_)
        throw DimensionMismatch("builder index (" + std::to_string(i) + ", " + std::to_string(j) + ") outside " + shape(rows_, cols_));
    cells_[i][j] = v;
}

void MatrixBuilder::add_block(std::size_t i0, std::size_t j0, const Matrix& m, const Rational& s)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        for (const auto& [j, v] : m.row(i))
            add(i0 + i, j0 + j, v * s);
    }
}

Matrix MatrixBuilder::build() const
{
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
    {
        for (const auto& [j, v] : cells_[i])
        {
            if (!v.is_zero())
                m.data_[i].emplace_back(j, v);
        }
    }
    return m;
}

}   // namespace bcoh
