#ifndef BCOH_CHECKS_HPP
#define BCOH_CHECKS_HPP

#include <string>
#include <vector>

#include "bcoh/relative.hpp"

namespace bcoh {

/** Per degree comparison of H^k(G; V) with the product over components. */
struct AdditivityDegree
{
    std::size_t dim = 0;
    std::vector<std::size_t> component_dims;
    /** Rank of the stacked restriction H^k(G) -> prod_j H^k(G_j). */
    std::size_t restriction_rank = 0;
    /** For each basis class: its seminorm and the max of the component seminorms. */
    std::vector<std::pair<Rational, Rational>> seminorms;
};

struct AdditivityReport
{
    std::vector<std::vector<ObjectId>> components;
    std::vector<AdditivityDegree> degrees;
    bool ok = false;
};

AdditivityReport additivity_check(const NormedModule& v, int n, const CohomologyOptions& options = {});

/**
 * Equivalence data: f : G -> H, a quasi-inverse g and homotopies g f => id_G
 * and f g => id_H.
 */
struct EquivalenceWitness
{
    GroupoidMap f;
    GroupoidMap g;
    Homotopy gf;
    Homotopy fg;
};

/** f = skeleton inclusion, g = retraction. */
EquivalenceWitness witness_from_skeleton(const SkeletonRetraction& s);

struct EquivalenceDegree
{
    std::size_t dim_domain = 0;
    std::size_t dim_codomain = 0;
    std::size_t induced_rank = 0;
    /** For each basis class c of H^k(H; V): (seminorm of c, seminorm of f^* c). */
    std::vector<std::pair<Rational, Rational>> seminorms;
};

struct EquivalenceReport
{
    std::vector<EquivalenceDegree> degrees;
    bool ok = false;
};

/**
 * Compares H^*(H; V) with H^*(G; f^*V) through f^*. Throws InvalidArgument when
 * the witness does not fit together.
 */
EquivalenceReport equivalence_invariance_check(const EquivalenceWitness& w, const NormedModule& v, int n,
                                               const CohomologyOptions& options = {});

/**
 * For h : f1 => f0 between maps G -> H and V over H, checks
 * H(f0) = H(T_h) H(f1) as maps H^k(H; V) -> H^k(G; f0^*V) for k <= n, where
 * T_h : f1^*V -> f0^*V acts by rho(h_e).
 */
bool homotopy_twist_check(const Homotopy& h, const NormedModule& v, int n);

/**
 * Relative form for maps of pairs (G, A) -> (H, B); h must be a relative
 * homotopy. Throws InvalidArgument otherwise.
 */
bool relative_homotopy_twist_check(const Homotopy& h, const GroupoidPair& dom, const GroupoidPair& cod,
                                   const NormedModule& v, int n);

/**
 * Audits the reduced parameterization in degrees 0..n against
 * invariants(hom_module(C_k, V)): extension is injective into the invariants,
 * dimensions and norms agree, and it intertwines the coboundaries.
 */
std::vector<std::string> audit_reduced_cochains(const NormedModule& v, int n, const Limits& limits = {});

}   // namespace bcoh

#endif
