#ifndef BCOH_MODULE_HPP
#define BCOH_MODULE_HPP

#include <memory>
#include <string>
#include <vector>

#include "bcoh/groupoid_map.hpp"
#include "bcoh/norm.hpp"

namespace bcoh {

/** Per-object matrices of a map between bundles of fibers. */
typedef std::vector<Matrix> FiberMap;

/**
 * Normed G-module: a normed fiber V_e per object and an isometry
 * action(g) : V_{s(g)} -> V_{t(g)} per morphism. Cheap to copy.
 */
class NormedModule
{
  public:
    NormedModule() = default;
    /** Audits the action laws and isometry exhaustively; throws AxiomViolation. */
    NormedModule(GroupoidPtr base, std::vector<PolyhedralNorm> fibers, std::vector<Matrix> action);

    const GroupoidPtr& base() const { return d_->base; }
    std::size_t fiber_dim(ObjectId e) const { return d_->fibers.at(e).dim(); }
    const PolyhedralNorm& fiber_norm(ObjectId e) const { return d_->fibers.at(e); }
    const std::vector<PolyhedralNorm>& fiber_norms() const { return d_->fibers; }
    const Matrix& action(MorphismId g) const { return d_->action.at(g); }
    std::size_t total_dim() const { return d_->offsets.back(); }
    /** Start of fiber e inside the direct sum over objects. */
    std::size_t fiber_offset(ObjectId e) const { return d_->offsets.at(e); }

  private:
    struct Data
    {
        GroupoidPtr base;
        std::vector<PolyhedralNorm> fibers;
        std::vector<Matrix> action;
        std::vector<std::size_t> offsets;
    };
    std::shared_ptr<const Data> d_;
};

/** Failures of the module audit, empty when the data is a normed module. */
std::vector<std::string> audit_module(const FiniteGroupoid& base, const std::vector<PolyhedralNorm>& fibers,
                                      const std::vector<Matrix>& action);

/** Equivariance failures of a fiber map dom -> cod over the same groupoid. */
std::vector<std::string> audit_equivariance(const NormedModule& dom, const NormedModule& cod, const FiberMap& f);

/** max over objects of the fiberwise operator norm. */
Rational fiber_map_norm(const NormedModule& dom, const NormedModule& cod, const FiberMap& f);

FiberMap compose(const FiberMap& second, const FiberMap& first);

/** Bounded G-map; construction checks equivariance and records the exact norm. */
class EquivariantMap
{
  public:
    EquivariantMap() = default;
    EquivariantMap(NormedModule dom, NormedModule cod, FiberMap components);

    const NormedModule& dom() const { return dom_; }
    const NormedModule& cod() const { return cod_; }
    const Matrix& component(ObjectId e) const { return components_.at(e); }
    const FiberMap& components() const { return components_; }
    const Rational& norm() const { return norm_; }

  private:
    NormedModule dom_;
    NormedModule cod_;
    FiberMap components_;
    Rational norm_;
};

/** R with trivial action and |.| on every object. */
NormedModule trivial_module(const GroupoidPtr& g);

/** f*U: fiber U_{f(e)} and action U(f(g)). */
NormedModule pullback(const GroupoidMap& f, const NormedModule& u);

/**
 * B(V, W): fiber Hom(V_e, W_e) with the operator norm, vectorized column by
 * column (entry (i, j) at j * dim W_e + i), and action (g.f)(v) = g f(g^-1 v).
 */
NormedModule hom_module(const NormedModule& v, const NormedModule& w);

/** Fiberwise operator-norm block for Hom(V_e, W_e) in the layout above. */
PolyhedralNorm operator_norm_on_hom(const PolyhedralNorm& v, const PolyhedralNorm& w);

/**
 * V^G as a subspace of the direct sum of fibers: families (v_e) with
 * g v_{s(g)} = v_{t(g)}, normed by the sup over objects.
 */
struct Invariants
{
    std::vector<Vector> basis;
    PolyhedralNorm norm;
};

Invariants invariants(const NormedModule& v);

/**
 * Basis of the equivariant maps V -> W, solved directly from
 * f_{t(g)} rho_V(g) = rho_W(g) f_{s(g)} in the hom_module layout.
 */
std::vector<Vector> equivariant_maps_basis(const NormedModule& v, const NormedModule& w);

/**
 * l-infinity(G, V): fiber at e is the functions on t^-1(e) (ordered by morphism
 * id, one V_e block each) with the sup norm; (g phi)(h) = g phi(g^-1 h).
 * `constants` is the inclusion c_V of constant functions.
 */
struct LinfModule
{
    NormedModule module;
    EquivariantMap constants;
};

LinfModule linf_module(const NormedModule& v);

/** V': dual fiber norms and action (rho(g^-1))^T. */
NormedModule dual_module(const NormedModule& v);

/**
 * Sigma R_G = coker(c : R_G -> l-infinity(G, R)) with the quotient norm.
 * `quotient` is the projection l-infinity(G, R) -> Sigma R_G.
 */
struct SigmaModule
{
    NormedModule module;
    LinfModule linf;
    EquivariantMap quotient;
};

SigmaModule sigma_module(const GroupoidPtr& g);

/**
 * For h from f0 to f1 (components h_e : f0(e) -> f1(e)) the isometric G-map
 * f0*V -> f1*V with components rho_V(h_e).
 */
EquivariantMap homotopy_action(const Homotopy& h, const NormedModule& v);

/** Direct product with the max norm. */
PolyhedralNorm normed_product(const std::vector<PolyhedralNorm>& parts);

}   // namespace bcoh

#endif
