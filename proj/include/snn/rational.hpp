#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace snn {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Largest integer <= q.
Int floor_rat(const Rat& q);

// Parses a plain signed decimal literal ("11", "-0.5", "0.05") into an exact
// rational. Exponents, fractions and non-numeric input yield nullopt.
std::optional<Rat> parse_decimal(const std::string& text);

// Exact decimal expansion of q. nullopt when the reduced denominator has a
// prime factor other than 2 or 5 (no finite expansion exists).
std::optional<std::string> to_exact_decimal(const Rat& q);

double to_double(const Rat& q);

}  // namespace snn
