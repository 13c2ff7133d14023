#pragma once

#include <string>
#include <string_view>

#include "hk/rational.hpp"

namespace hk {

// Run-level comparison tolerances. Exact instantiations ignore both fields
// and compare exactly; float runs treat opinions within eps_equal as
// coincident and allow distances up to bound + eps_edge to count as inside
// the confidence bound.
struct Tolerances {
  double eps_equal = 1e-9;
  double eps_edge = 1e-9;
};

template <class S>
struct numeric_traits;

template <>
struct numeric_traits<Rat> {
  static constexpr bool exact = true;
  static const char* name() { return "exact"; }
  static Rat from_long(long v) { return Rat(v); }
  static Rat from_ratio(long p, long q) { return rat(p, q); }
  static double to_double(const Rat& v) { return v.get_d(); }
  static std::string to_string(const Rat& v) { return v.get_str(); }
  static Rat parse(std::string_view token) { return parse_rational(token); }
};

template <>
struct numeric_traits<double> {
  static constexpr bool exact = false;
  static const char* name() { return "float"; }
  static double from_long(long v) { return static_cast<double>(v); }
  static double from_ratio(long p, long q) {
    return static_cast<double>(p) / static_cast<double>(q);
  }
  static double to_double(double v) { return v; }
  static std::string to_string(double v) { return format_double(v); }
  static double parse(std::string_view token) { return parse_rational(token).get_d(); }
};

}  // namespace hk
