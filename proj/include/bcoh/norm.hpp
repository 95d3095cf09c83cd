#ifndef BCOH_NORM_HPP
#define BCOH_NORM_HPP

#include <vector>

#include "bcoh/matrix.hpp"

namespace bcoh {

/** Largest dimension at which facet/vertex conversion is attempted. */
inline constexpr std::size_t kConversionDimCap = 6;

/**
 * A centrally symmetric polytope norm on a small coordinate block. The unit
 * ball is {x : |f . x| <= 1 for every facet f}; when `vertices` is filled the
 * ball is also conv(+-v). Both lists are sign-normalized (first nonzero entry
 * positive), duplicate-free and sorted.
 */
struct NormBlock
{
    std::size_t dim = 0;
    std::vector<Vector> facets;
    std::vector<Vector> vertices;
    bool has_vertices = false;

    Rational eval(const Vector& x) const;
    /** Dual norm: max |v . y| over vertices, or an LP over the facets. */
    Rational dual_eval(const Vector& y) const;
};

enum class Combine
{
    Max,
    Sum
};

/**
 * Norm on R^n split into consecutive coordinate blocks, combined by max
 * (l-infinity sum of blocks) or by sum (l1 sum of blocks). A single block is
 * always tagged Max.
 */
class PolyhedralNorm
{
  public:
    PolyhedralNorm() = default;

    static PolyhedralNorm absolute_value();
    static PolyhedralNorm linf(std::size_t d);
    static PolyhedralNorm l1(std::size_t d);
    /** Single block from facet normals; vertices are derived when d <= 6. */
    static PolyhedralNorm from_facets(std::size_t d, const std::vector<Vector>& facets);
    /** Single block from facet normals without deriving vertices. */
    static PolyhedralNorm facets_only(std::size_t d, const std::vector<Vector>& facets);
    /** Single block from vertices; requires d <= 6. */
    static PolyhedralNorm from_vertices(std::size_t d, const std::vector<Vector>& vertices);
    static PolyhedralNorm max_product(const std::vector<PolyhedralNorm>& parts);
    static PolyhedralNorm sum_product(const std::vector<PolyhedralNorm>& parts);
    /** Zero space. */
    static PolyhedralNorm zero();

    std::size_t dim() const { return dim_; }
    Combine combine() const { return combine_; }
    const std::vector<NormBlock>& blocks() const { return blocks_; }
    std::size_t block_offset(std::size_t b) const { return offsets_[b]; }
    bool has_vertex_data() const;

    Rational eval(const Vector& x) const;
    Rational dual_eval(const Vector& y) const;
    PolyhedralNorm dual() const;

    /** Facet normals of the whole ball, lifted to R^n (products are capped at dim 6). */
    std::vector<Vector> all_facets() const;
    /** Vertices of the whole ball, lifted to R^n (products are capped at dim 6). */
    std::vector<Vector> all_vertices() const;

    bool operator==(const PolyhedralNorm& other) const;

  private:
    static PolyhedralNorm from_blocks(Combine c, std::vector<NormBlock> blocks);
    NormBlock as_single_block() const;

    std::size_t dim_ = 0;
    Combine combine_ = Combine::Max;
    std::vector<NormBlock> blocks_;
    std::vector<std::size_t> offsets_;
};

Rational norm_eval(const PolyhedralNorm& n, const Vector& x);

/** Polar norm; swaps facets and vertices block by block. */
PolyhedralNorm dual_norm(const PolyhedralNorm& n);

/** The norm x -> n(q x) as a facet-only block; n must be max-combined, q injective. */
PolyhedralNorm pullback_norm(const PolyhedralNorm& n, const Matrix& q);

/**
 * Quotient of (R^d, n) by span(subspace). The quotient is identified with the
 * coordinates not used as pivots of the subspace basis; `projection` maps R^d
 * onto those coordinates along the subspace and `lift` is the coordinate
 * inclusion, so projection * lift = I.
 */
struct QuotientNorm
{
    PolyhedralNorm norm;
    Matrix projection;
    Matrix lift;
    std::vector<std::size_t> complement;
};

QuotientNorm quotient_norm(const PolyhedralNorm& n, const std::vector<Vector>& subspace);

/** min over c of n(v - W c), by LP over the facets of n. */
Rational distance_to_subspace(const PolyhedralNorm& n, const std::vector<Vector>& subspace, const Vector& v);

/**
 * Operator norm of t : (R^m, dom) -> (R^k, cod). Sum-combined or single-block
 * domains use the domain vertices; max-combined domains need a max-combined
 * codomain and use dual block norms.
 */
Rational operator_norm(const Matrix& t, const PolyhedralNorm& dom, const PolyhedralNorm& cod);

/** Vertices of {x in R^d : |f . x| <= 1 for all f}; requires d <= 6. */
std::vector<Vector> enumerate_vertices(std::size_t d, const std::vector<Vector>& facets);

}   // namespace bcoh

#endif
