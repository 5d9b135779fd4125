#ifndef PERTDEF_RATIONAL_HPP
#define PERTDEF_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace pertdef {

// Exact rational coefficients. cpp_rational keeps values in lowest terms
// with a positive denominator, which is exactly the canonical form we need.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Serializes as "p/q", or just "p" when the denominator is 1.
std::string rational_to_string(const Rational& r);

// Accepts "p", "p/q" and an optional leading sign. Throws std::invalid_argument
// on malformed input or a zero denominator.
Rational parse_rational(const std::string& text);

} // namespace pertdef

#endif
