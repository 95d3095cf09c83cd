#include "bcoh/rational.hpp"

#include <cctype>

#include "bcoh/errors.hpp"

namespace bcoh {

std::string to_string(const Rational& x)
{
    return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
}

namespace {

bool valid_integer(std::string_view s, bool allow_sign)
{
    if (s.empty())
        return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+'))
        i = 1;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
    {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    }
    return true;
}

}   // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num, true) || !valid_integer(den, false))
        throw InputError("not an exact rational: \"" + std::string(text) + "\"");
    std::string n(num);
    if (n[0] == '+')
        n.erase(0, 1);
    boost::multiprecision::mpz_int p(n), q{std::string(den)};
    if (q == 0)
        throw InputError("zero denominator in \"" + std::string(text) + "\"");
    return Rational(p, q);
}

Rational factorial(std::size_t n)
{
    Rational r = 1;
    for (std::size_t i = 2; i <= n; ++i)
        r *= static_cast<unsigned long>(i);
    return r;
}

Vector zero_vector(std::size_t n)
{
    return Vector(n, Rational(0));
}

Vector unit_vector(std::size_t n, std::size_t i)
{
    Vector v(n, Rational(0));
    v.at(i) = 1;
    return v;
}

Rational dot(const Vector& a, const Vector& b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("dot product of lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        if (!a[i].is_zero() && !b[i].is_zero())
            s += a[i] * b[i];
    }
    return s;
}

bool is_zero(const Vector& v)
{
    for (const auto& x : v)
    {
        if (!x.is_zero())
            return false;
    }
    return true;
}

}   // namespace bcoh
