#ifndef BCOH_TESTS_FIXTURES_HPP
#define BCOH_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "bcoh/groupoid.hpp"
#include "bcoh/groupoid_map.hpp"

namespace fixtures {

using namespace bcoh;

struct Named
{
    std::string name;
    GroupoidPtr groupoid;
};

inline GroupoidPtr group(const GroupTable& t)
{
    return share(from_group_table(t));
}

inline GroupoidPtr trivial()
{
    return group(cyclic_group(1));
}

/** Z/2 acting on {0, 1} by swapping. */
inline FiniteGroupoid swap_action()
{
    return action_groupoid(cyclic_group(2), {{0, 1}, {1, 0}});
}

inline GroupoidPtr swap()
{
    return share(swap_action());
}

inline GroupoidPtr blow_up_z2()
{
    return share(blow_up(cyclic_group(2), 2));
}

inline GroupoidPtr z2_plus_z3()
{
    return share(disjoint_union({from_group_table(cyclic_group(2)), from_group_table(cyclic_group(3))}));
}

/** Three components: Z/2, the swap action groupoid, the trivial group. */
inline GroupoidPtr three_components()
{
    return share(disjoint_union({from_group_table(cyclic_group(2)), swap_action(), from_group_table(cyclic_group(1))}));
}

inline std::vector<Named> all()
{
    return {
        {"trivial", trivial()},
        {"Z2", group(cyclic_group(2))},
        {"Z3", group(cyclic_group(3))},
        {"Z4", group(cyclic_group(4))},
        {"Z2xZ2", group(product_group(cyclic_group(2), cyclic_group(2)))},
        {"S3", group(symmetric_group_3())},
        {"Z2+Z3", z2_plus_z3()},
        {"blowup(Z2,2)", blow_up_z2()},
        {"swap", swap()},
        {"three-components", three_components()},
    };
}

/** Groupoids with at most 8 morphisms, for the heavier checks. */
inline std::vector<Named> small()
{
    std::vector<Named> out;
    for (auto& f : all())
    {
        if (f.groupoid->morphism_count() <= 8 && f.name != "Z2+Z3")
            out.push_back(f);
    }
    return out;
}

/** blow_up(Z2, 2) with the trivial subgroups at both vertices. */
inline GroupoidPair blow_up_trivial_pair()
{
    auto g = blow_up_z2();
    return GroupoidPair(trivial_subgroupoid(g, {0, 1}));
}

}   // namespace fixtures

#endif
