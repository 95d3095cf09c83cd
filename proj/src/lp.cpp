#include "bcoh/lp.hpp"

#include <optional>

#include "bcoh/errors.hpp"

namespace bcoh {

namespace {

/**
 * Tableau for min c.z, A z = b, z >= 0 with b >= 0. Row `cost` holds reduced
 * costs; its last entry is minus the current objective.
 */
class Tableau
{
  public:
    std::vector<Vector> rows;
    Vector cost;
    std::vector<std::size_t> basis;
    std::size_t width = 0;   // number of z columns; rhs sits at index width

    void pivot(std::size_t r, std::size_t j)
    {
        Rational p = rows[r][j];
        std::vector<std::size_t> nz;
        for (std::size_t k = 0; k <= width; ++k)
        {
            if (!rows[r][k].is_zero())
            {
                rows[r][k] /= p;
                nz.push_back(k);
            }
        }
        auto eliminate = [&](Vector& row) {
            if (row[j].is_zero())
                return;
            Rational f = row[j];
            for (auto k : nz)
                row[k] -= f * rows[r][k];
        };
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            if (i != r)
                eliminate(rows[i]);
        }
        eliminate(cost);
        basis[r] = j;
    }

    /** Bland's rule over columns [0, limit). Returns the entering column whose ray is unbounded, if any. */
    std::optional<std::size_t> run(std::size_t limit)
    {
        for (;;)
        {
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j)
            {
                if (cost[j] < 0)
                {
                    enter = j;
                    break;
                }
            }
            if (enter == limit)
                return std::nullopt;
            std::size_t leave = rows.size();
            Rational best;
            for (std::size_t r = 0; r < rows.size(); ++r)
            {
                if (rows[r][enter] <= 0)
                    continue;
                Rational ratio = rows[r][width] / rows[r][enter];
                if (leave == rows.size() || ratio < best || (ratio == best && basis[r] < basis[leave]))
                {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == rows.size())
                return enter;
            pivot(leave, enter);
        }
    }

    Vector solution() const
    {
        Vector z(width, Rational(0));
        for (std::size_t r = 0; r < rows.size(); ++r)
            z[basis[r]] = rows[r][width];
        return z;
    }
};

void check_shape(const LPProblem& p)
{
    if (p.objective.size() != p.variables)
        throw DimensionMismatch("LP objective has length " + std::to_string(p.objective.size()) + " for " + std::to_string(p.variables) + " variables");
    for (std::size_t i = 0; i < p.constraints.size(); ++i)
    {
        if (p.constraints[i].coefficients.size() != p.variables)
            throw DimensionMismatch("LP constraint " + std::to_string(i) + " has wrong length");
    }
}

}   // namespace

LPResult solve_lp(const LPProblem& problem)
{
    check_shape(problem);
    const std::size_t n = problem.variables;
    const std::size_t m = problem.constraints.size();

    // Columns: p_i = 2i, q_i = 2i+1 (x = p - q), then slacks, then artificials.
    std::vector<std::size_t> slack_of(m, SIZE_MAX);
    std::size_t cols = 2 * n;
    for (std::size_t r = 0; r < m; ++r)
    {
        if (problem.constraints[r].relation != Relation::Equal)
            slack_of[r] = cols++;
    }
    const std::size_t structural = cols;
    const std::size_t width = structural + m;

    Tableau t;
    t.width = width;
    t.rows.assign(m, Vector(width + 1, Rational(0)));
    t.basis.resize(m);
    std::vector<int> sign(m, 1);
    for (std::size_t r = 0; r < m; ++r)
    {
        const auto& c = problem.constraints[r];
        sign[r] = c.bound < 0 ? -1 : 1;
        Vector& row = t.rows[r];
        for (std::size_t i = 0; i < n; ++i)
        {
            row[2 * i] = c.coefficients[i] * sign[r];
            row[2 * i + 1] = -row[2 * i];
        }
        if (slack_of[r] != SIZE_MAX)
            row[slack_of[r]] = (c.relation == Relation::LessEqual ? 1 : -1) * sign[r];
        row[structural + r] = 1;
        row[width] = c.bound * sign[r];
        t.basis[r] = structural + r;
    }

    // Phase 1: minimize the sum of artificials.
    t.cost.assign(width + 1, Rational(0));
    for (std::size_t r = 0; r < m; ++r)
    {
        for (std::size_t k = 0; k <= width; ++k)
        {
            if (k < structural || k == width)
                t.cost[k] -= t.rows[r][k];
        }
    }
    t.run(width);

    LPResult result;
    if (-t.cost[width] > 0)
    {
        result.status = LPStatus::Infeasible;
        result.certificate.resize(m);
        for (std::size_t r = 0; r < m; ++r)
            result.certificate[r] = (Rational(1) - t.cost[structural + r]) * sign[r];
        return result;
    }

    // Drive artificials out of the basis; rows where that fails are redundant.
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < m; ++r)
    {
        if (t.basis[r] >= structural)
        {
            for (std::size_t j = 0; j < structural; ++j)
            {
                if (!t.rows[r][j].is_zero())
                {
                    t.pivot(r, j);
                    break;
                }
            }
        }
    }
    for (std::size_t r = 0; r < m; ++r)
    {
        if (t.basis[r] < structural)
            keep.push_back(r);
    }
    Tableau u;
    u.width = structural;
    for (auto r : keep)
    {
        Vector row(t.rows[r].begin(), t.rows[r].begin() + structural);
        row.push_back(t.rows[r][width]);
        u.rows.push_back(std::move(row));
        u.basis.push_back(t.basis[r]);
    }

    // Phase 2.
    Vector c(structural + 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
    {
        c[2 * i] = problem.objective[i];
        c[2 * i + 1] = -problem.objective[i];
    }
    u.cost = c;
    for (std::size_t r = 0; r < u.rows.size(); ++r)
    {
        const Rational& cb = c[u.basis[r]];
        if (cb.is_zero())
            continue;
        for (std::size_t k = 0; k <= structural; ++k)
            u.cost[k] -= cb * u.rows[r][k];
    }
    auto ray = u.run(structural);

    auto to_x = [n](const Vector& z) {
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = z[2 * i] - z[2 * i + 1];
        return x;
    };
    result.witness = to_x(u.solution());
    if (ray)
    {
        Vector z(structural, Rational(0));
        z[*ray] = 1;
        for (std::size_t r = 0; r < u.rows.size(); ++r)
            z[u.basis[r]] = -u.rows[r][*ray];
        result.status = LPStatus::Unbounded;
        result.certificate = to_x(z);
        return result;
    }
    result.status = LPStatus::Optimal;
    result.value = dot(problem.objective, result.witness);
    return result;
}

bool check_infeasibility_certificate(const LPProblem& problem, const Vector& y)
{
    check_shape(problem);
    if (y.size() != problem.constraints.size())
        return false;
    Vector combo(problem.variables, Rational(0));
    Rational rhs = 0;
    for (std::size_t r = 0; r < y.size(); ++r)
    {
        const auto& c = problem.constraints[r];
        if (c.relation == Relation::LessEqual && y[r] > 0)
            return false;
        if (c.relation == Relation::GreaterEqual && y[r] < 0)
            return false;
        for (std::size_t i = 0; i < problem.variables; ++i)
            combo[i] += y[r] * c.coefficients[i];
        rhs += y[r] * c.bound;
    }
    return is_zero(combo) && rhs > 0;
}

bool check_unbounded_direction(const LPProblem& problem, const Vector& d)
{
    check_shape(problem);
    if (d.size() != problem.variables)
        return false;
    for (const auto& c : problem.constraints)
    {
        Rational v = dot(c.coefficients, d);
        if ((c.relation == Relation::LessEqual && v > 0) || (c.relation == Relation::GreaterEqual && v < 0) ||
            (c.relation == Relation::Equal && v != 0))
            return false;
    }
    return dot(problem.objective, d) < 0;
}

bool is_feasible(const LPProblem& problem, const Vector& x)
{
    check_shape(problem);
    if (x.size() != problem.variables)
        return false;
    for (const auto& c : problem.constraints)
    {
        Rational v = dot(c.coefficients, x);
        if ((c.relation == Relation::LessEqual && v > c.bound) || (c.relation == Relation::GreaterEqual && v < c.bound) ||
            (c.relation == Relation::Equal && v != c.bound))
            return false;
    }
    return true;
}

}   // namespace bcoh
