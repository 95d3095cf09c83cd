#ifndef BCOH_HOMALG_HPP
#define BCOH_HOMALG_HPP

#include <string>
#include <vector>

#include "bcoh/checks.hpp"

namespace bcoh {

/**
 * Augmented cochain complex V -> D^0 -> ... -> D^n of normed G-modules with a
 * fiberwise contraction s^k : D^k -> D^{k-1} (s^0 : D^0 -> V).
 */
struct AugmentedResolution
{
    NormedModule coefficients;
    std::vector<NormedModule> modules;
    FiberMap augmentation;
    /** coboundary[k] : D^k -> D^{k+1}, k = 0..n-1. */
    std::vector<FiberMap> coboundary;
    /** contraction[k] : D^k -> D^{k-1}, k = 0..n. */
    std::vector<FiberMap> contraction;
    /** Chain bases D^k = B(C_k, V) is built on, for the standard and homogeneous resolutions. */
    std::vector<BarBasis> chain_bases;

    std::size_t top_degree() const { return modules.size() - 1; }
};

/**
 * Failures of: equivariance of augmentation and coboundaries, d d = 0,
 * s^0 eps = id, eps s^0 + s^1 d = id, d s + s d = id below the top degree,
 * and norm bounds ||s^k|| <= 1.
 */
std::vector<std::string> audit_resolution(const AugmentedResolution& r);

/** D^k = B(C_k(G), V); contraction is precomposition with the bar contraction. */
AugmentedResolution standard_resolution(const NormedModule& v, int n, const Limits& limits = {});

/** D^k = B(L_k(G), V); contraction transported from the inhomogeneous one. */
AugmentedResolution homogeneous_resolution(const NormedModule& v, int n, const Limits& limits = {});

/**
 * alpha^k : D^k -> B(C_k(G), V) by the recursion
 *   alpha^k(phi)(g_0, .., g_k) = alpha^{k-1}(g_0 s^k(g_0^-1 phi))(g_0 g_1, g_2, .., g_k),
 * alpha^{-1} = id_V. Throws AxiomViolation when res fails its audit.
 */
std::vector<FiberMap> comparison_map(const AugmentedResolution& res, const Limits& limits = {});

/** Failures of equivariance, the cochain map identity, alpha eps = eps and ||alpha^k|| <= 1. */
std::vector<std::string> audit_comparison(const AugmentedResolution& res, const AugmentedResolution& standard,
                                          const std::vector<FiberMap>& alpha);

/**
 * The G-invariant part of a resolution as a cochain complex (degrees 0..n,
 * cohomology through n - 1). basis[k] spans the invariants of D^k in the
 * direct-sum layout.
 */
struct InvariantComplex
{
    CochainComplex complex;
    std::vector<Matrix> basis;
    std::vector<Subspace> subspaces;
};

InvariantComplex invariant_complex(const AugmentedResolution& r);

/** A G-map D -> D' restricted to invariants, in the invariant bases. */
std::vector<Matrix> restrict_to_invariants(const std::vector<FiberMap>& f, const InvariantComplex& dom,
                                           const InvariantComplex& cod);

/** Block-diagonal matrix of a fiber map over the direct sums of two modules. */
Matrix direct_sum_matrix(const FiberMap& f);

/**
 * Resolutions of (G, A): one over G, one over A for i^*V, and the restriction
 * phi^k : D^k_G -> D^k_A indexed by objects of A (fiber i(a) -> fiber a).
 */
struct PairResolution
{
    GroupoidPair pair;
    AugmentedResolution ambient;
    AugmentedResolution sub;
    std::vector<FiberMap> restriction;
};

/** Failures of phi commuting with coboundaries, augmentations and contractions. */
std::vector<std::string> audit_pair_resolution(const PairResolution& p);

PairResolution standard_pair_resolution(const GroupoidPair& pair, const NormedModule& v, int n, const Limits& limits = {});
PairResolution homogeneous_pair_resolution(const GroupoidPair& pair, const NormedModule& v, int n,
                                           const Limits& limits = {});

struct PairComparison
{
    std::vector<FiberMap> ambient;
    std::vector<FiberMap> sub;
    /** phi_std alpha_G == alpha_A phi_res in every degree. */
    bool commutes = false;
};

/** Throws AxiomViolation when the pair resolution fails its audit. */
PairComparison pair_comparison_map(const PairResolution& res, const PairResolution& standard, const Limits& limits = {});

/**
 * Invariant kernel complex of a pair resolution: invariant cochains of D_G
 * whose restriction vanishes.
 */
struct RelativeInvariantComplex
{
    InvariantComplex ambient;
    CochainComplex complex;
    /** Kernel basis in ambient-invariant coordinates, per degree. */
    std::vector<Matrix> basis;
};

RelativeInvariantComplex relative_invariant_complex(const PairResolution& p);

/**
 * Input of the relative-injectivity extension: i : V -> W with split sigma
 * (fiberwise, sigma i = id, ||sigma|| <= 1) and alpha : V -> B(C_n(G), U).
 */
struct InjectivityProblem
{
    EquivariantMap i;
    FiberMap sigma;
    EquivariantMap alpha;
    NormedModule target_coefficients;
    std::size_t degree = 0;
};

struct InjectivityWitness
{
    FiberMap beta;
    Rational beta_norm;
    bool extends = false;
    bool equivariant = false;
    bool ok = false;
};

/**
 * beta(w)(g_0, ..) = alpha(g_0 sigma(g_0^-1 w))(g_0, ..). Throws InvalidArgument
 * when sigma is not a norm-one split of i or alpha's target is not
 * B(C_n(G), U).
 */
InjectivityWitness verify_relative_injectivity_witness(const InjectivityProblem& p, const Limits& limits = {});

}   // namespace bcoh

#endif
