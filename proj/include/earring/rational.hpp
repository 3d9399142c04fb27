#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace earring {

// Exact, always-normalized rational with arbitrary-precision parts.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p/q", integers and finite decimals ("0.125", "-3"). Decimals are
// converted exactly.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

// Smallest integer >= r.
BigInt ceil(const Rational& r);

// A dyadic rational >= x, within roughly 2^-40 relative slack of it.
Rational rational_upper_bound(double x);

}  // namespace earring
