#pragma once

#include <span>
#include <string>

namespace mixfrac {

// Shortest locale-independent rendering with at most 9 significant digits;
// "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

// "(a, b, ...)" using format_number.
std::string format_vector(std::span<const double> v);

}  // namespace mixfrac
