#pragma once

#include <cmath>
#include <numbers>

namespace rotmap {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Reduce an angle to the canonical interval [0, 2*pi).
inline double reduce_angle(double theta) {
  double r = std::fmod(theta, two_pi);
  if (r < 0.0) r += two_pi;
  // fmod(-eps, 2pi) + 2pi may round up to exactly 2pi; fold it back.
  if (r >= two_pi) r = 0.0;
  return r;
}

/// Advance an angle by one rotation step and reduce to [0, 2*pi).
/// For in-range inputs the wrap is a single subtraction of 2*pi, which is
/// exact (the sum stays below 4*pi), so repeated application stays within
/// one rounding of the k-fold product form.
inline double rotate(double theta, double delta_theta) {
  const double s = theta + delta_theta;
  if (s >= 0.0 && s < two_pi) return s;
  if (s >= two_pi && s < 2.0 * two_pi) return s - two_pi;
  return reduce_angle(s);
}

/// sin(theta) for angles on the reduced circle, with exact zeros at the
/// canonical doubles for 0 and pi. The kick term of the map vanishes
/// identically at these two lattice points and several identities
/// (fixed points, pairing of the velocity sequence) rely on that.
inline double circle_sin(double theta) {
  if (theta == 0.0 || theta == pi) return 0.0;
  return std::sin(theta);
}

}  // namespace rotmap
