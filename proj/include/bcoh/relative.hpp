#ifndef BCOH_RELATIVE_HPP
#define BCOH_RELATIVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "bcoh/cochain.hpp"

namespace bcoh {

/**
 * Relative cochains of a pair (G, A): the kernel of restriction to A. In the
 * reduced parameterization restriction selects the blocks of paths in A, so
 * the kernel is spanned by the remaining coordinates.
 */
struct RelativeComplex
{
    GroupoidPair pair;
    BarCochains ambient;
    BarCochains sub;
    /** restriction[k] : C^k(G; V) -> C^k(A; V|A). */
    std::vector<Matrix> restriction;
    /** Ambient coordinates spanning the kernel, increasing, per degree. */
    std::vector<std::vector<std::size_t>> kernel_coordinates;
    /** Kernel coordinates -> ambient coordinates. */
    std::vector<Matrix> kernel_inclusion;
    CochainComplex kernel;
};

RelativeComplex relative_complex(const GroupoidPair& pair, const NormedModule& v, int n, const Limits& limits = {});

/** Restriction surjectivity, kernel complex closure and d d = 0. */
std::vector<std::string> audit_relative_complex(const RelativeComplex& r);

/**
 * Relative cochain map of a map of pairs f : (G, A) -> (H, B):
 * K(H, B; V) -> K(G, A; f^*V). dom is the complex of (H, B), cod of (G, A).
 */
std::vector<Matrix> relative_pullback_map(const GroupoidMap& f, const RelativeComplex& over_h, const RelativeComplex& over_g);

/** Exactness data at one slot X of the sequence, with maps a : P -> X and b : X -> Q. */
struct ExactnessSlot
{
    std::string name;
    std::size_t dim = 0;
    std::size_t rank_in = 0;
    std::size_t rank_out = 0;
    bool composite_zero = true;
    bool exact() const { return composite_zero && rank_in + rank_out == dim; }
};

/**
 * H^k(G, A) -j-> H^k(G) -r-> H^k(A) -c-> H^{k+1}(G, A). Maps are matrices in
 * the representative bases of the three cohomology results.
 */
struct LongExactSequence
{
    RelativeComplex complexes;
    CohomologyResult relative;
    CohomologyResult ambient;
    CohomologyResult sub;
    std::vector<Matrix> j;
    std::vector<Matrix> r;
    std::vector<Matrix> connecting;
    /** Slots H^k(G, A), H^k(G), H^k(A) for k = 0..n. */
    std::vector<ExactnessSlot> slots;
    /**
     * Largest observed seminorm(c(x)) / seminorm(x) over basis classes x of
     * H^k(A) with nonzero seminorm; empty when no such class exists or
     * seminorms were not requested.
     */
    std::optional<Rational> connecting_ratio;

    bool exact() const;
};

/** Complexes are built through degree n + 1 so that every slot up to H^n(A) is checked. */
LongExactSequence long_exact_sequence(const GroupoidPair& pair, const NormedModule& v, int n,
                                      const CohomologyOptions& options = {});

/**
 * H^*(G_I, union of A_i; V_I) for subgroups A_i of a group G: G_I is the
 * blow-up on one object per subgroup, A_i sits in the vertex group at i and
 * V_I is V pulled back along the collapse G_I -> G.
 */
struct FamilyCohomology
{
    GroupoidPtr group;
    GroupoidPtr blow_up;
    GroupoidMap collapse;
    std::vector<GroupoidMap> vertex_inclusions;
    LongExactSequence les;
    CohomologyResult absolute;
    /** vertex_maps[i][k]: H^k(l_i) : H^k(G_I; V_I) -> H^k(G; V). */
    std::vector<std::vector<Matrix>> vertex_maps;
    bool vertex_maps_agree = false;
    /** H(iota) equals H(psi) H(l_0), psi : union of A_i -> G the folding map. */
    bool restriction_factors = false;
};

/** Throws InvalidArgument when some A_i is not a subgroup; v must live over the group. */
FamilyCohomology family_cohomology(const GroupTable& table, const std::vector<std::vector<std::size_t>>& subgroups,
                                   const NormedModule& v, int n, const CohomologyOptions& options = {});

}   // namespace bcoh

#endif
