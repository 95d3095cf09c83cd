#ifndef BCOH_GROUPOID_HPP
#define BCOH_GROUPOID_HPP

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace bcoh {

typedef std::size_t ObjectId;
typedef std::size_t MorphismId;

/** Marks an undefined composite in a composition table. */
inline constexpr std::size_t kUndefined = std::numeric_limits<std::size_t>::max();

/** Square multiplication table of a finite group: table[a][b] = a * b. */
typedef std::vector<std::vector<std::size_t>> GroupTable;

/**
 * A finite groupoid with dense object and morphism ids. compose(g, h) is the
 * composite g h ("first h, then g"), defined iff source(g) == target(h).
 * Instances are immutable and only produced by validating factories.
 */
class FiniteGroupoid
{
  public:
    /**
     * Validates every groupoid axiom and derives identities and inverses.
     * `compose` is row-major n x n with kUndefined where s(g) != t(h).
     * Throws AxiomViolation naming the first failure found.
     */
    static FiniteGroupoid create(std::size_t objects, std::vector<ObjectId> source, std::vector<ObjectId> target,
                                 std::vector<MorphismId> compose, std::vector<std::string> labels = {});

    std::size_t object_count() const { return objects_; }
    std::size_t morphism_count() const { return source_.size(); }
    ObjectId source(MorphismId g) const { return source_.at(g); }
    ObjectId target(MorphismId g) const { return target_.at(g); }
    /** g h; throws InvalidArgument when source(g) != target(h). */
    MorphismId compose(MorphismId g, MorphismId h) const;
    MorphismId identity(ObjectId e) const { return identity_.at(e); }
    MorphismId inverse(MorphismId g) const { return inverse_.at(g); }
    bool is_identity(MorphismId g) const { return identity_.at(target_.at(g)) == g; }
    /** Morphisms with the given target, in increasing id order. */
    const std::vector<MorphismId>& ending_at(ObjectId e) const { return ending_at_.at(e); }
    /** Morphisms e -> f, in increasing id order. */
    std::vector<MorphismId> hom(ObjectId e, ObjectId f) const;
    const std::string& label(MorphismId g) const { return labels_.at(g); }

    bool operator==(const FiniteGroupoid& other) const;

  private:
    FiniteGroupoid() = default;

    std::size_t objects_ = 0;
    std::vector<ObjectId> source_;
    std::vector<ObjectId> target_;
    std::vector<MorphismId> compose_;
    std::vector<MorphismId> identity_;
    std::vector<MorphismId> inverse_;
    std::vector<std::vector<MorphismId>> ending_at_;
    std::vector<std::string> labels_;
};

typedef std::shared_ptr<const FiniteGroupoid> GroupoidPtr;

GroupoidPtr share(FiniteGroupoid g);

/** Checks closure, associativity, identity and inverses; returns the identity element. */
std::size_t validate_group_table(const GroupTable& table);

/** One-object groupoid; morphism id = group element index. */
FiniteGroupoid from_group_table(const GroupTable& table);

/** Objects and morphisms of the parts are concatenated in order. */
FiniteGroupoid disjoint_union(const std::vector<FiniteGroupoid>& parts);

/**
 * Action groupoid of a left action act[g][x] = g . x. Objects are points;
 * morphism (x, g) : x -> g.x has id x * |G| + g, and (g.x, h)(x, g) = (x, hg).
 */
FiniteGroupoid action_groupoid(const GroupTable& table, const std::vector<std::vector<std::size_t>>& act);

/**
 * G_C for a group G and C = {0..k-1}: morphisms (f, e, g) : e -> f with id
 * (f * k + e) * |G| + g, composing as (f, e, g)(e, d, h) = (f, d, gh).
 */
FiniteGroupoid blow_up(const GroupTable& table, std::size_t k);

/** Morphism id of (f, e, g) in blow_up(table, k). */
MorphismId blow_up_morphism(std::size_t group_order, std::size_t k, ObjectId f, ObjectId e, std::size_t g);

/** Cyclic group Z/n and a few small tables used throughout tests and fixtures. */
GroupTable cyclic_group(std::size_t n);
GroupTable product_group(const GroupTable& a, const GroupTable& b);
/** S3 with elements ordered as permutations of {0,1,2} in lexicographic order. */
GroupTable symmetric_group_3();

}   // namespace bcoh

#endif
