#ifndef BCOH_MATRIX_HPP
#define BCOH_MATRIX_HPP

#include <cstddef>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "bcoh/rational.hpp"

namespace bcoh {

/**
 * Exact rational matrix stored as sorted sparse rows. Zero entries are never
 * stored, so structural equality is value equality.
 */
class Matrix
{
  public:
    typedef std::pair<std::size_t, Rational> Entry;
    typedef std::vector<Entry> Row;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix from_dense(const std::vector<Vector>& rows, std::size_t cols);
    /** Matrix whose j-th column is columns[j]; every column must have length `rows`. */
    static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);
    static Matrix block_diagonal(const std::vector<Matrix>& blocks);
    static Matrix hstack(const std::vector<Matrix>& parts);
    static Matrix vstack(const std::vector<Matrix>& parts);
    /** Kronecker product a (x) b. */
    static Matrix kron(const Matrix& a, const Matrix& b);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Row& row(std::size_t i) const { return data_[i]; }
    Rational at(std::size_t i, std::size_t j) const;
    std::size_t nonzeros() const;
    bool is_zero() const;

    Matrix transpose() const;
    Vector apply(const Vector& x) const;
    /** Row vector x times this matrix. */
    Vector apply_left(const Vector& x) const;
    Vector column(std::size_t j) const;
    std::vector<Vector> columns() const;
    std::vector<Vector> to_dense() const;
    /** Rows [r0, r0 + nr) and columns [c0, c0 + nc). */
    Matrix submatrix(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const;
    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    Matrix select_columns(const std::vector<std::size_t>& idx) const;

    Matrix operator*(const Matrix& other) const;
    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix operator*(const Rational& s) const;
    Matrix operator-() const;
    bool operator==(const Matrix& other) const;

  private:
    friend class MatrixBuilder;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Row> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/** Accumulating builder; repeated add() to the same cell sums the values. */
class MatrixBuilder
{
  public:
    MatrixBuilder(std::size_t rows, std::size_t cols);

    void add(std::size_t i, std::size_t j, const Rational& v);
    void set(std::size_t i, std::size_t j, const Rational& v);
    /** Adds s * m with m's (0, 0) placed at (i0, j0). */
    void add_block(std::size_t i0, std::size_t j0, const Matrix& m, const Rational& s = Rational(1));
    Matrix build() const;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::map<std::size_t, Rational>> cells_;
};

}   // namespace bcoh

#endif
