#ifndef BCOH_TESTS_ORACLE_HPP
#define BCOH_TESTS_ORACLE_HPP

// Independent reference computations used to freeze expected values.
// Deliberately naive: dense storage, textbook elimination, no sharing with src/.

#include <random>
#include <vector>

#include "bcoh/rational.hpp"

namespace oracle {

using bcoh::Rational;
typedef std::vector<std::vector<Rational>> Dense;

inline std::size_t dense_rank(Dense a)
{
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c)
    {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < rows; ++i)
        {
            if (i == r || a[i][c] == 0)
                continue;
            Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

inline Dense dense_mul(const Dense& a, const Dense& b)
{
    std::size_t n = a.size(), m = b.size(), k = m ? b[0].size() : 0;
    Dense c(n, std::vector<Rational>(k, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < m; ++l)
            if (a[i][l] != 0)
                for (std::size_t j = 0; j < k; ++j)
                    c[i][j] += a[i][l] * b[l][j];
    return c;
}

/** Small random rationals with a fixed seed; zero with probability about 1/3. */
class RationalGen
{
  public:
    explicit RationalGen(unsigned seed) : rng_(seed) {}

    Rational next()
    {
        std::uniform_int_distribution<int> num(-4, 4), den(1, 3), zero(0, 2);
        if (zero(rng_) == 0)
            return 0;
        return Rational(num(rng_), den(rng_));
    }

    Dense matrix(std::size_t r, std::size_t c)
    {
        Dense m(r, std::vector<Rational>(c));
        for (auto& row : m)
            for (auto& x : row)
                x = next();
        return m;
    }

    std::vector<Rational> vec(std::size_t n)
    {
        std::vector<Rational> v(n);
        for (auto& x : v)
            x = next();
        return v;
    }

    std::mt19937& engine() { return rng_; }

  private:
    std::mt19937 rng_;
};

}   // namespace oracle

#endif
