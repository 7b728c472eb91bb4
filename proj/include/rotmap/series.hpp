#pragma once

#include <cmath>
#include <stdexcept>

#include "rotmap/angle.hpp"
#include "rotmap/invariant.hpp"
#include "rotmap/map.hpp"

namespace rotmap {

// Truncated expansions of the update in powers of r = P sin(theta)/omega^2.
// Coefficients are fixed; they anchor the golden tests. Order counts retained
// correction terms and caps at 4 (remainder O(r^5 * omega)).

inline constexpr int series_max_order = 4;

namespace detail {
inline void check_series_order(int order) {
  if (order < 1 || order > series_max_order)
    throw std::invalid_argument("series order must be between 1 and 4");
}
inline double kick_ratio(double theta, double omega, double p_value) {
  return p_value * circle_sin(theta) / (omega * omega);
}
}  // namespace detail

/// True when |6r + r^2| < 1, the convergence domain of the square-root
/// expansion of the exact update.
inline bool exact_series_converges(double theta, double omega, double p_value) {
  const double r = detail::kick_ratio(theta, omega, p_value);
  return std::fabs(6.0 * r + r * r) < 1.0;
}

/// True when |4r| < 1, the convergence domain of the invariant-update
/// expansion.
inline bool invariant_series_converges(double theta, double omega,
                                       double p_value) {
  const double r = detail::kick_ratio(theta, omega, p_value);
  return std::fabs(4.0 * r) < 1.0;
}

/// Positive-root series: w (1 + 2r - 2r^2 + 6r^3 - 22r^4), truncated.
inline double series_positive(double theta, double omega, double p_value,
                              int order) {
  detail::check_series_order(order);
  if (!exact_series_converges(theta, omega, p_value))
    throw std::domain_error("series_positive: outside convergence domain");
  static constexpr double coeff[series_max_order] = {2.0, -2.0, 6.0, -22.0};
  const double r = detail::kick_ratio(theta, omega, p_value);
  double sum = 1.0, rn = 1.0;
  for (int i = 0; i < order; ++i) {
    rn *= r;
    sum += coeff[i] * rn;
  }
  return omega * sum;
}

/// Negative-root series: w (-r + 2r^2 - 6r^3 + 22r^4), truncated.
inline double series_negative(double theta, double omega, double p_value,
                              int order) {
  detail::check_series_order(order);
  if (!exact_series_converges(theta, omega, p_value))
    throw std::domain_error("series_negative: outside convergence domain");
  static constexpr double coeff[series_max_order] = {-1.0, 2.0, -6.0, 22.0};
  const double r = detail::kick_ratio(theta, omega, p_value);
  double sum = 0.0, rn = 1.0;
  for (int i = 0; i < order; ++i) {
    rn *= r;
    sum += coeff[i] * rn;
  }
  return omega * sum;
}

/// Invariant-update series: w (1 + 2r - 2r^2 + 4r^3 - 10r^4), truncated.
/// Identical to series_positive through order 2.
inline double series_invariant(double theta, double omega, double p_value,
                               int order) {
  detail::check_series_order(order);
  if (!invariant_series_converges(theta, omega, p_value))
    throw std::domain_error("series_invariant: outside convergence domain");
  static constexpr double coeff[series_max_order] = {2.0, -2.0, 4.0, -10.0};
  const double r = detail::kick_ratio(theta, omega, p_value);
  double sum = 1.0, rn = 1.0;
  for (int i = 0; i < order; ++i) {
    rn *= r;
    sum += coeff[i] * rn;
  }
  return omega * sum;
}

/// Exact update minus invariant update, both in closed form; leading
/// behavior 2 P^3 sin^3(theta) / omega^5. Requires both expansions to
/// converge so the difference is meaningful as a truncation-error proxy.
inline double one_step_deviation(double theta, double omega, double p_value) {
  if (!exact_series_converges(theta, omega, p_value))
    throw std::domain_error(
        "one_step_deviation: outside exact-update convergence domain");
  if (!invariant_series_converges(theta, omega, p_value))
    throw std::domain_error(
        "one_step_deviation: outside invariant-update convergence domain");
  const auto roots = solve_roots(theta, omega, p_value);
  // Convergence puts the discriminant in (0, 2), so roots exist here.
  return roots->positive - invariant_step(theta, omega, p_value);
}

}  // namespace rotmap
