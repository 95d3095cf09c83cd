#ifndef BCOH_COCHAIN_HPP
#define BCOH_COCHAIN_HPP

#include <optional>
#include <string>
#include <vector>

#include "bcoh/bar.hpp"
#include "bcoh/limits.hpp"
#include "bcoh/linalg.hpp"
#include "bcoh/module.hpp"

namespace bcoh {

/**
 * A finite cochain complex C^0 -> ... -> C^{n+1} with a norm per degree.
 * coboundary[k] : C^k -> C^{k+1} for k = 0..n; cohomology is available in
 * degrees 0..n.
 */
struct CochainComplex
{
    std::vector<std::size_t> dims;
    std::vector<Matrix> coboundary;
    std::vector<PolyhedralNorm> norms;

    std::size_t top_degree() const { return coboundary.size() - 1; }
};

/** Failures of dimension consistency and d d = 0. */
std::vector<std::string> audit_cochain_complex(const CochainComplex& c);

/**
 * One coordinate block of a reduced bar cochain: the value at
 * (id_object, path...) in V_object, occupying [offset, offset + dim).
 */
struct CochainBlock
{
    ObjectId object = 0;
    Path path;
    std::size_t offset = 0;
    std::size_t dim = 0;
};

/**
 * Equivariant bounded cochains on the inhomogeneous bar complex, stored by
 * their values on paths that start with an identity. Degree k blocks follow
 * the degree k-1 bar basis (objects for k = 0), fiber by fiber.
 */
struct BarCochains
{
    NormedModule module;
    CochainComplex complex;
    std::vector<std::vector<CochainBlock>> blocks;
    /** bases[k] is the bar basis of degree k - 1 indexing degree k blocks (bases[0] unused). */
    std::vector<BarBasis> bases;
    /** fiber_start[k][e]: index of the first degree k block at object e. */
    std::vector<std::vector<std::size_t>> fiber_start;

    /** Position of the block for (id_e, path) in degree path.size(). */
    std::size_t block_index(ObjectId e, const Path& path) const;
};

/** Reduced cochains with cohomology available through degree n (built to n + 1). */
BarCochains cochain_complex(const NormedModule& v, int n, const Limits& limits = {});

/**
 * Extension of reduced cochains to all paths, f(g_0, ..) = g_0 f(id, ..), in
 * the direct-sum layout of hom_module(C_k, V) (objects in order, entry (i, j)
 * of fiber e at offset_e + j * dim V_e + i).
 */
Matrix extension_matrix(const BarCochains& c, const BarComplex& bar, const NormedModule& hom, std::size_t k);

/** Seminorm LP result: value = min_u ||c - d u|| and the minimizing u. */
struct SeminormResult
{
    Rational value;
    Vector witness;
};

/**
 * Exact seminorm of the class of a degree-k cocycle. The LP runs over u in the
 * span of the pivot coordinates of d^{k-1}; throws ResourceCapExceeded when
 * dim C^{k-1} exceeds limits.lp_var_cap, InvalidArgument on non-cocycles.
 */
SeminormResult class_seminorm(const CochainComplex& c, std::size_t k, const Vector& cocycle, const Limits& limits = {});

struct CohomologyDegree
{
    std::size_t dim = 0;
    std::vector<Vector> representatives;
    /** Seminorms of the representatives' classes, when requested. */
    std::vector<Rational> seminorms;
    /** Subspace with basis (boundary basis, representatives), used for class coordinates. */
    Subspace cocycles;
    std::size_t boundary_rank = 0;
};

struct CohomologyResult
{
    std::vector<CohomologyDegree> degrees;

    /** Coordinates of the class of a degree-k cocycle in the representative basis. */
    Vector class_coordinates(std::size_t k, const Vector& cocycle) const;
    bool is_cocycle_in(std::size_t k, const Vector& x) const;
};

struct CohomologyOptions
{
    bool seminorms = true;
    /** Cohomology is computed in degrees 0..min(max_degree, top). */
    std::size_t max_degree = static_cast<std::size_t>(-1);
    /** Seminorms are computed only in degrees <= this bound. */
    std::size_t seminorm_max_degree = static_cast<std::size_t>(-1);
    Limits limits;
};

CohomologyResult cohomology(const CochainComplex& c, const CohomologyOptions& options = {});

/**
 * Matrix of the map on H^k induced by a cochain map F^k : C -> D, in the
 * representative bases.
 */
Matrix induced_on_cohomology(const Matrix& f, const CohomologyResult& dom, const CohomologyResult& cod, std::size_t k);

/**
 * f^* : C^k(H; V) -> C^k(G; f^*V) on reduced cochains, in every degree both
 * complexes have. over_g must be built from pullback(f, V).
 */
std::vector<Matrix> pullback_cochain_map(const GroupoidMap& f, const BarCochains& over_h, const BarCochains& over_g);

/**
 * Post-composition with a fiber map t : V -> W (same groupoid) on reduced
 * cochains of both modules.
 */
std::vector<Matrix> coefficient_cochain_map(const FiberMap& t, const BarCochains& over_v, const BarCochains& over_w);

}   // namespace bcoh

#endif
