#ifndef BCOH_RATIONAL_HPP
#define BCOH_RATIONAL_HPP

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace bcoh {

typedef boost::multiprecision::mpq_rational Rational;
typedef std::vector<Rational> Vector;

/** Canonical "p/q" rendering with q > 0 and gcd(p, q) = 1; integers keep "/1". */
std::string to_string(const Rational& x);

/** Accepts "p/q" or "p" with optional sign. Throws InputError otherwise. */
Rational parse_rational(std::string_view text);

Rational factorial(std::size_t n);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
Rational dot(const Vector& a, const Vector& b);
bool is_zero(const Vector& v);

}   // namespace bcoh

#endif
