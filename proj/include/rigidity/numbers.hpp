#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace rigidity {

// All counting and certificate arithmetic is exact: arbitrary-precision
// integers and reduced rationals, no floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Int& n) { return n.str(); }

// Canonical rendering: reduced, "p/q", denominator 1 omitted ("1/8", "4").
inline std::string to_string(const Rat& r) { return r.str(); }

// C(n, k) for n >= 0; zero outside 0 <= k <= n.
Int binomial(const Int& n, const Int& k);

}  // namespace rigidity
