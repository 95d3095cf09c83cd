#ifndef BCOH_LIMITS_HPP
#define BCOH_LIMITS_HPP

#include <cstddef>

namespace bcoh {

/** Size caps; exceeding one raises ResourceCapExceeded. */
struct Limits
{
    /** Paths per degree of a bar complex, summed over fibers. */
    std::size_t path_cap = 20000;
    /** Cochain dimension below a class whose seminorm is requested. */
    std::size_t lp_var_cap = 5000;
};

}   // namespace bcoh

#endif
