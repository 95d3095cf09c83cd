#ifndef BCOH_BAR_HPP
#define BCOH_BAR_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "bcoh/limits.hpp"
#include "bcoh/module.hpp"

namespace bcoh {

enum class BarKind
{
    /** Composable paths (g_0, ..., g_n), s(g_i) = t(g_{i+1}), in fiber t(g_0). */
    Inhomogeneous,
    /** Tuples (g_0, ..., g_n) with a common target, in that fiber. */
    Homogeneous
};

typedef std::vector<MorphismId> Path;

/** Basis of one degree of a bar complex, per fiber in lexicographic order. */
class BarBasis
{
  public:
    BarBasis() = default;
    BarBasis(const FiniteGroupoid& g, BarKind kind, std::size_t degree, std::size_t path_cap);

    BarKind kind() const { return kind_; }
    std::size_t degree() const { return degree_; }
    const std::vector<Path>& fiber(ObjectId e) const { return fibers_.at(e); }
    std::size_t fiber_size(ObjectId e) const { return fibers_.at(e).size(); }
    std::size_t total() const;
    /** Position of p inside the fiber it belongs to; throws InvalidArgument if absent. */
    std::size_t index(const Path& p) const;
    bool contains(const Path& p) const;

  private:
    struct PathHash
    {
        std::size_t operator()(const Path& p) const;
    };

    BarKind kind_ = BarKind::Inhomogeneous;
    std::size_t degree_ = 0;
    std::vector<std::vector<Path>> fibers_;
    std::unordered_map<Path, std::size_t, PathHash> index_;
};

/**
 * Augmented bar complex C_n -> ... -> C_0 -> R_G with its contraction.
 * Fibers carry the l1 norm over paths; the action is on g_0 (inhomogeneous)
 * or diagonal (homogeneous).
 */
struct BarComplex
{
    GroupoidPtr groupoid;
    BarKind kind = BarKind::Inhomogeneous;
    std::vector<BarBasis> bases;
    std::vector<NormedModule> modules;
    /** boundary[k] : C_k -> C_{k-1} for k >= 1; boundary[0] is empty. */
    std::vector<FiberMap> boundary;
    /** C_0 -> R, every basis path to 1. */
    FiberMap augmentation;
    /** contraction[k + 1] : C_k -> C_{k+1} for k = -1 .. n-1 (C_{-1} = R). */
    std::vector<FiberMap> contraction;

    std::size_t max_degree() const { return bases.size() - 1; }
};

/** Inhomogeneous bar complex through degree n (n >= 0). */
BarComplex bar_complex(const GroupoidPtr& g, int n, const Limits& limits = {});

/** Homogeneous bar complex through degree n (n >= 0). */
BarComplex homogeneous_complex(const GroupoidPtr& g, int n, const Limits& limits = {});

/** Failures of the chain complex, contraction, equivariance and norm laws. */
std::vector<std::string> audit_bar_complex(const BarComplex& c);

/** Degreewise chain isomorphisms between C and L (inverse to each other). */
struct BarIsomorphisms
{
    /** (g_0, ..., g_n) -> (g_0, g_0 g_1, ..., g_0 ... g_n). */
    std::vector<FiberMap> to_homogeneous;
    /** (g_0, ..., g_n) -> (g_0, g_0^-1 g_1, ..., g_{n-1}^-1 g_n). */
    std::vector<FiberMap> to_inhomogeneous;
};

BarIsomorphisms hom_inhom_isos(const BarComplex& inhom, const BarComplex& hom);

/**
 * C_k(f) for k <= n, fiber a -> fiber f(a), applying f entrywise. Both
 * complexes must be of the same kind, over f's domain and codomain.
 */
std::vector<FiberMap> induced_chain_map(const GroupoidMap& f, const BarComplex& dom, const BarComplex& cod);

/**
 * Chain homotopy for h from f1 = h.from() to f0 = h.to() (components
 * h_x : f1(x) -> f0(x)). Degree k component C_k(G)_e -> C_{k+1}(H)_{f0(e)} is
 *   -sum_i (-1)^i (f0(g_0), .., f0(g_i), h_{s(g_i)}, f1(g_{i+1}), .., f1(g_k)),
 * which satisfies d s + s d = C(f0) - h.C(f1). Inhomogeneous complexes only;
 * cod needs one degree more than the returned range.
 */
std::vector<FiberMap> homotopy_operator(const Homotopy& h, const BarComplex& dom, const BarComplex& cod);

/** h.C(f1): (g_0, ..) -> (h_{t(g_0)} f1(g_0), f1(g_1), ..), landing in fiber f0(e). */
std::vector<FiberMap> twisted_chain_map(const Homotopy& h, const BarComplex& dom, const BarComplex& cod);

/** Alt_k = (1/(k+1)!) sum sgn(sigma) (g_sigma(0), ..., g_sigma(k)) on the homogeneous complex. */
std::vector<FiberMap> alt_operator(const BarComplex& hom);

/** max over fibers of the l1 -> l1 operator norm of a map between bar fibers. */
Rational chain_map_norm(const FiberMap& f);

}   // namespace bcoh

#endif
