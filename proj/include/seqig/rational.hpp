#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace seqig {

// All probabilities and expectations are exact rationals. Identifiability
// verdicts hinge on events of probability exactly zero, so nothing in the
// core ever touches floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Accepts "a/b", integers, and plain decimals ("0.25" -> 1/4).
// Throws InputError on anything else.
Rat parse_rational(std::string_view text);

// "num/den" in lowest terms; integers render without the "/1".
std::string fraction_string(const Rat& r);

// Decimal rendering for presentation only (default 12 significant digits).
std::string decimal_string(const Rat& r, int significant_digits = 12);

}  // namespace seqig
