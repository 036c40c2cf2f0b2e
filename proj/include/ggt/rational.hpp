#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace ggt {

// All norms, matrices and LP arithmetic are exact; never use floating point.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

/// Renders "p/q", or just "p" when q == 1.
std::string rat_to_string(const Rational& r);

/// Parses "p", "-p" or "p/q". Throws ParseError on malformed input.
Rational rat_parse(std::string_view s);

}  // namespace ggt
