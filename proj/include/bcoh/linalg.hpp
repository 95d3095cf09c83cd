#ifndef BCOH_LINALG_HPP
#define BCOH_LINALG_HPP

#include <optional>
#include <vector>

#include "bcoh/matrix.hpp"

namespace bcoh {

/** Reduced row echelon form: nonzero rows only, each with leading entry 1. */
struct RowEchelon
{
    Matrix reduced;
    std::vector<std::size_t> pivot_columns;
};

/**
 * Gauss-Jordan elimination. Rows are folded in one at a time and reduced
 * against the pivots found so far; the pivot set is the lexicographically
 * first set of independent columns, so the result is deterministic.
 */
RowEchelon row_reduce(const Matrix& m);

std::size_t rank(const Matrix& m);

/** Basis of {x : m x = 0}, one vector per free column in increasing order. */
std::vector<Vector> kernel_basis(const Matrix& m);

/** The pivot columns of m, a basis of its column space. */
std::vector<Vector> image_basis(const Matrix& m);

/** Some x with m x = b (free variables set to 0), or nothing if inconsistent. */
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/** Inverse of a square matrix; throws InvalidArgument if singular. */
Matrix inverse(const Matrix& m);

/**
 * Subspace given by a basis (the columns of `basis`). Coordinates of members
 * are read off a fixed set of pivot rows where the basis is invertible.
 */
class Subspace
{
  public:
    Subspace() = default;
    /** The columns must be linearly independent. */
    Subspace(std::size_t ambient_dim, const std::vector<Vector>& basis);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }

    /** Coordinates of x, assuming x lies in the subspace. */
    Vector coordinates(const Vector& x) const;
    /** Coordinates of each column of m (result is dim x m.cols()); assumes containment. */
    Matrix coordinates(const Matrix& m) const;
    bool contains(const Vector& x) const;

  private:
    std::size_t ambient_ = 0;
    Matrix basis_;
    std::vector<std::size_t> pivot_rows_;
    Matrix pivot_inverse_;
};

}   // namespace bcoh

#endif
