#ifndef BCOH_AMENABILITY_HPP
#define BCOH_AMENABILITY_HPP

#include <string>
#include <vector>

#include "bcoh/homalg.hpp"

namespace bcoh {

/** Equivariant mean m : l-infinity(G, V) -> V, one matrix per object. */
struct Mean
{
    NormedModule coefficients;
    LinfModule linf;
    FiberMap components;

    const GroupoidPtr& base() const { return coefficients.base(); }
};

/** Failures of equivariance, ||m|| = 1 and m c_V = id. */
std::vector<std::string> audit_mean(const Mean& m);

/** Average over t^-1(e), with trivial coefficients. */
Mean uniform_mean(const GroupoidPtr& g);

/**
 * m_V(phi)(v) = m_R(g -> phi(g)(v)) with coefficients dual_module(v). In
 * coordinates this is m_R tensored with the identity of V'_e.
 */
Mean dual_coefficient_mean(const Mean& m, const NormedModule& v);

/** Dual cochain of a degree-(n-1) homogeneous face: (d_i phi)(g) = phi(g without slot i). */
FiberMap homogeneous_face(const AugmentedResolution& res, std::size_t n, std::size_t i);

/**
 * Phi_i^n and A^n = Phi_0 .. Phi_n on B(L_n(G), V') for a mean on the
 * subgroupoid A with coefficients i^*V'.
 */
struct AveragingOperator
{
    GroupoidPair pair;
    /** Homogeneous resolution of V' over G. */
    AugmentedResolution resolution;
    /** phi[n][i] = Phi_i^n. */
    std::vector<std::vector<FiberMap>> phi;
    /** a[n] = A^n. */
    std::vector<FiberMap> a;
};

/** v_dual is the G-module V'; the mean must be over pair.sub() with coefficients i^*V'. */
AveragingOperator averaging_operator(const GroupoidPair& pair, const Mean& m, const NormedModule& v_dual, int n,
                                     const Limits& limits = {});

/**
 * Failures of norm <= 1, equivariance, the cochain map identity, A^0 eps = eps
 * and the face relations of Phi with the homogeneous coface maps.
 */
std::vector<std::string> audit_averaging(const AveragingOperator& op);

struct FactorizationDegree
{
    std::size_t degree = 0;
    /** B(L_k(i), V') Alt A == 0. */
    bool restriction_vanishes = false;
    Rational norm;
    bool equivariant = false;
};

struct FactorizationReport
{
    std::vector<FactorizationDegree> degrees;
    /** Alt A is a cochain map with A^0 eps = eps. */
    bool cochain_map = false;
    bool extends_identity = false;
    std::vector<std::string> averaging_failures;
    bool ok = false;
};

/** Uses the uniform mean on A and V' = dual_module(v); degrees 1..n. */
FactorizationReport factorization_check(const GroupoidPair& pair, const NormedModule& v, int n,
                                        const Limits& limits = {});

struct VanishingReport
{
    /** dim H^k_b(G; V') for k = 0..n. */
    std::vector<std::size_t> dims;
    bool ok = false;
};

/** H^k_b(G; dual_module(v)) = 0 for 1 <= k <= n. */
VanishingReport amenable_vanishing_check(const NormedModule& v, int n, const Limits& limits = {});

struct MappingDegree
{
    std::size_t degree = 0;
    std::size_t dim_relative = 0;
    std::size_t dim_absolute = 0;
    std::size_t rank = 0;
    /** (seminorm of a relative basis class, seminorm of its image). */
    std::vector<std::pair<Rational, Rational>> seminorms;
    /** Degrees below 2 are reported only. */
    bool asserted = false;
    bool holds = false;
};

struct MappingReport
{
    std::vector<MappingDegree> degrees;
    bool ok = false;
};

/** H^k(j) : H^k_b(G, A; V') -> H^k_b(G; V') for 1 <= k <= n, V' = dual_module(v). */
MappingReport algebraic_mapping_theorem_check(const GroupoidPair& pair, const NormedModule& v, int n,
                                              const CohomologyOptions& options = {});

struct ConverseProbe
{
    std::size_t sigma_dim = 0;
    std::size_t h1_dim = 0;
    /** Finite groupoids are amenable, so only h1_dim == 0 is consistent. */
    bool ok = false;
};

/** dim H^1_b(G; (Sigma R_G)'). */
ConverseProbe converse_amenability_probe(const GroupoidPtr& g, const Limits& limits = {});

}   // namespace bcoh

#endif
