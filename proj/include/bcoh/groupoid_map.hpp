#ifndef BCOH_GROUPOID_MAP_HPP
#define BCOH_GROUPOID_MAP_HPP

#include <vector>

#include "bcoh/groupoid.hpp"

namespace bcoh {

/** A functor between finite groupoids, validated on construction. */
class GroupoidMap
{
  public:
    GroupoidMap() = default;
    /** Throws AxiomViolation if the data is not a functor. */
    GroupoidMap(GroupoidPtr domain, GroupoidPtr codomain, std::vector<ObjectId> objects, std::vector<MorphismId> morphisms);

    static GroupoidMap identity(const GroupoidPtr& g);

    const GroupoidPtr& domain() const { return domain_; }
    const GroupoidPtr& codomain() const { return codomain_; }
    ObjectId on_object(ObjectId e) const { return objects_.at(e); }
    MorphismId on_morphism(MorphismId g) const { return morphisms_.at(g); }
    const std::vector<ObjectId>& object_map() const { return objects_; }
    const std::vector<MorphismId>& morphism_map() const { return morphisms_; }
    bool is_injective() const;

    bool operator==(const GroupoidMap& other) const;

  private:
    GroupoidPtr domain_;
    GroupoidPtr codomain_;
    std::vector<ObjectId> objects_;
    std::vector<MorphismId> morphisms_;
};

/** second after first. */
GroupoidMap compose(const GroupoidMap& second, const GroupoidMap& first);

/**
 * Natural transformation between parallel maps: component(e) : from(e) -> to(e)
 * with to(g) h_{s(g)} = h_{t(g)} from(g).
 */
class Homotopy
{
  public:
    Homotopy() = default;
    /** Throws AxiomViolation if naturality fails. */
    Homotopy(GroupoidMap from, GroupoidMap to, std::vector<MorphismId> components);

    static Homotopy identity(const GroupoidMap& f);

    const GroupoidMap& from() const { return from_; }
    const GroupoidMap& to() const { return to_; }
    MorphismId component(ObjectId e) const { return components_.at(e); }
    const std::vector<MorphismId>& components() const { return components_; }
    /** Components inverted: a homotopy from `to` to `from`. */
    Homotopy inverse() const;

  private:
    GroupoidMap from_;
    GroupoidMap to_;
    std::vector<MorphismId> components_;
};

/** (G, A): an injective map of a subgroupoid A into G. */
class GroupoidPair
{
  public:
    GroupoidPair() = default;
    explicit GroupoidPair(GroupoidMap inclusion);

    const GroupoidPtr& ambient() const { return inclusion_.codomain(); }
    const GroupoidPtr& sub() const { return inclusion_.domain(); }
    const GroupoidMap& inclusion() const { return inclusion_; }

  private:
    GroupoidMap inclusion_;
};

/** Subgroupoid on an explicit, composition-closed morphism set containing its identities. */
GroupoidMap subgroupoid(const GroupoidPtr& g, const std::vector<MorphismId>& morphisms);

/** Full subgroupoid on the given objects (kept in increasing order). */
GroupoidMap full_subgroupoid(const GroupoidPtr& g, const std::vector<ObjectId>& objects);

/** Identities only at the given objects. */
GroupoidMap trivial_subgroupoid(const GroupoidPtr& g, const std::vector<ObjectId>& objects);

/** Empty subgroupoid. */
GroupoidMap empty_subgroupoid(const GroupoidPtr& g);

struct Components
{
    /** Object sets, ordered by smallest object id; each sorted. */
    std::vector<std::vector<ObjectId>> parts;
    /** Inclusion of the full subgroupoid on each part. */
    std::vector<GroupoidMap> inclusions;
};

Components connected_components(const GroupoidPtr& g);

/**
 * Skeleton retraction: i includes the full subgroupoid on the smallest object
 * of each component, p retracts onto it with p i = id, and h : i p => id.
 * For each object e the chosen morphism e -> r(e) is the one with lowest id.
 */
struct SkeletonRetraction
{
    GroupoidMap inclusion;
    GroupoidMap retraction;
    Homotopy homotopy;
};

SkeletonRetraction skeleton_retraction(const GroupoidPtr& g);

/**
 * True iff every component of h at an object of the sub-domain lies in the
 * sub-codomain. The maps of h must carry dom.sub() into cod.sub().
 */
bool check_relative_homotopy(const Homotopy& h, const GroupoidPair& dom, const GroupoidPair& cod);

/** True iff f restricted to dom.sub() lands in cod.sub(). */
bool is_map_of_pairs(const GroupoidMap& f, const GroupoidPair& dom, const GroupoidPair& cod);

}   // namespace bcoh

#endif
