#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace treecode {

/// Exact ratio used for every distance value and verdict.
using Rational = boost::rational<std::int64_t>;

/// Accepts "p/q", an integer, or a finite decimal such as "0.25"; the
/// decimal is converted exactly.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Exact decimal when the denominator has only the factors 2 and 5,
/// otherwise "p/q".
std::string to_decimal_string(const Rational& r);

std::int64_t ceil_mul(const Rational& r, std::int64_t n);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace treecode
