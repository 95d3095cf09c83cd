#ifndef BCOH_LP_HPP
#define BCOH_LP_HPP

#include <vector>

#include "bcoh/rational.hpp"

namespace bcoh {

enum class Relation
{
    LessEqual,
    GreaterEqual,
    Equal
};

struct LinearConstraint
{
    Vector coefficients;
    Relation relation = Relation::LessEqual;
    Rational bound;
};

/** Minimize objective . x over free (sign-unrestricted) x subject to the constraints. */
struct LPProblem
{
    std::size_t variables = 0;
    Vector objective;
    std::vector<LinearConstraint> constraints;
};

enum class LPStatus
{
    Optimal,
    Infeasible,
    Unbounded
};

/**
 * Optimal: `witness` is an optimal x and `value` its objective.
 * Infeasible: `certificate` holds multipliers y, one per constraint, with
 *   sum_i y_i a_i = 0, y_i <= 0 on <= rows, y_i >= 0 on >= rows, y . b > 0.
 * Unbounded: `witness` is feasible and `certificate` is a direction d with
 *   a_i . d compatible with every relation and objective . d < 0.
 */
struct LPResult
{
    LPStatus status = LPStatus::Infeasible;
    Rational value;
    Vector witness;
    Vector certificate;
};

/** Two-phase dense tableau simplex with Bland's rule. */
LPResult solve_lp(const LPProblem& problem);

bool check_infeasibility_certificate(const LPProblem& problem, const Vector& y);
bool check_unbounded_direction(const LPProblem& problem, const Vector& d);
bool is_feasible(const LPProblem& problem, const Vector& x);

}   // namespace bcoh

#endif
