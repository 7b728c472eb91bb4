#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace rotmap {

/// Shortest decimal form that round-trips to the same double.
inline std::string fmt_shortest(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string fmt_fixed(double v, int precision) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

inline std::string fmt_scientific(double v, int precision) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::scientific, precision);
  return std::string(buf, res.ptr);
}

/// Four-decimal table style: fixed for moderate magnitudes, scientific
/// mantissa otherwise ("5.2507", "3.3435e-03").
inline std::string fmt_table(double v) {
  if (v == 0.0) return "0.0000";
  const double a = std::fabs(v);
  if (a >= 0.1 && a < 1e5) return fmt_fixed(v, 4);
  return fmt_scientific(v, 4);
}

}  // namespace rotmap
