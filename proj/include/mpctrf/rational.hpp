#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace mpctrf {

// Arbitrary-precision integer and rational. All arithmetic in the library is
// exact; no floating point is used anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p", "-p" or "p/q" (q > 0 after normalization). Throws Error(Parse).
Rat parse_rational(const std::string& text);

// "p" if integral, otherwise "p/q" in lowest terms with q > 0.
std::string rat_to_string(const Rat& r);

std::string int_to_string(const Int& v);

inline bool is_integral(const Rat& r) { return denominator(r) == 1; }

// Requires is_integral(r).
Int to_int(const Rat& r);

}  // namespace mpctrf
