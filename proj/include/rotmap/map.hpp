#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "rotmap/angle.hpp"

namespace rotmap {

/// Rotation step expressed as an exact fraction of a full turn:
/// delta_theta = (num/den) * 2*pi, with gcd(num, den) = 1.
struct TurnFraction {
  long long num = 1;
  long long den = 3;
};

/// Full parameterization of the coupled rotation / angular-velocity map.
struct MapParams {
  double delta_theta = 0.0;  ///< rotation per step, radians in (0, pi)
  double g = 9.81;           ///< acceleration, m/s^2
  double ell = 1.0;          ///< length, m
  int p_sign = -1;           ///< sign of the kick parameter, +1 or -1
  double p_value = 0.0;      ///< derived kick parameter, s^-2
  std::optional<TurnFraction> turn;  ///< set when delta_theta is rational in turns
};

/// One point of a trajectory. k is 1-based.
struct State {
  long long k = 1;
  double theta = 0.0;  ///< [0, 2*pi)
  double omega = 0.0;  ///< rad/s, strictly positive
};

enum class Branch { positive, negative };

/// Kick parameter P = sign * g * dt^2 / (2 * ell * sin(dt)).
inline double compute_p(double delta_theta, double g, double ell, int p_sign) {
  if (!(delta_theta > 0.0 && delta_theta < pi))
    throw std::domain_error("delta_theta must lie in (0, pi)");
  if (!(g > 0.0)) throw std::domain_error("g must be positive");
  if (!(ell > 0.0)) throw std::domain_error("ell must be positive");
  if (p_sign != 1 && p_sign != -1)
    throw std::domain_error("p_sign must be +1 or -1");
  return p_sign * g * delta_theta * delta_theta /
         (2.0 * ell * std::sin(delta_theta));
}

inline MapParams make_params(double delta_theta, double g = 9.81,
                             double ell = 1.0, int p_sign = -1) {
  MapParams p;
  p.delta_theta = delta_theta;
  p.g = g;
  p.ell = ell;
  p.p_sign = p_sign;
  p.p_value = compute_p(delta_theta, g, ell, p_sign);
  return p;
}

inline MapParams make_params(TurnFraction turn, double g = 9.81,
                             double ell = 1.0, int p_sign = -1) {
  if (turn.num <= 0 || turn.den <= 0)
    throw std::domain_error("turn fraction must have positive terms");
  if (std::gcd(turn.num, turn.den) != 1)
    throw std::domain_error("turn fraction must be in lowest terms");
  MapParams p = make_params(
      two_pi * (static_cast<double>(turn.num) / static_cast<double>(turn.den)),
      g, ell, p_sign);
  p.turn = turn;
  return p;
}

/// theta_k from the step index (1-based), computed from the accumulated
/// product rather than repeated addition so long windows do not drift.
/// For rational rotations the index is reduced modulo the return stride
/// first, which makes angular returns exact by construction.
inline double angle_at(double theta1, const MapParams& params, long long k) {
  const long long m = k - 1;
  if (params.turn) {
    const long long q = params.turn->den;
    const long long r = (m % q) * params.turn->num % q;
    return reduce_angle(theta1 + two_pi * (static_cast<double>(r) /
                                           static_cast<double>(q)));
  }
  return reduce_angle(theta1 + static_cast<double>(m) * params.delta_theta);
}

/// Radicand of the closed-form update: 1 + 6 P sin(th)/w^2 + (P sin(th)/w^2)^2.
/// Negative means the map has no real next state at (theta, omega).
inline double discriminant(double theta, double omega, double p_value) {
  const double r = p_value * circle_sin(theta) / (omega * omega);
  return 1.0 + 6.0 * r + r * r;
}

struct RootPair {
  double positive;  ///< root selected by the positive square root
  double negative;  ///< root selected by the negative square root
};

/// Value of the defining quadratic
///   w * w'^2 - (w^2 + P sin(th)) w' - P sin(th) w
/// at a candidate root w'; zero for an exact root.
inline double quadratic_residual(double omega, double omega_next, double theta,
                                 double p_value) {
  const double x = p_value * circle_sin(theta);
  return omega * omega_next * omega_next - (omega * omega + x) * omega_next -
         x * omega;
}

/// Both roots of the update quadratic, or nothing when the discriminant is
/// negative. The second root is recovered from the root product, which keeps
/// it accurate when the two roots differ by orders of magnitude.
inline std::optional<RootPair> solve_roots(double theta, double omega,
                                           double p_value) {
  const double d = discriminant(theta, omega, p_value);
  if (d < 0.0) return std::nullopt;
  const double x = p_value * circle_sin(theta);
  const double sqrt_term = omega * std::sqrt(d);
  const double plus = 0.5 * (omega + x / omega + sqrt_term);
  const double minus =
      plus != 0.0 ? -x / plus : 0.5 * (omega + x / omega - sqrt_term);
  return RootPair{plus, minus};
}

struct StepOutcome {
  std::optional<State> next;  ///< empty on infeasibility
  double discriminant = 0.0;
  double residual = std::numeric_limits<double>::quiet_NaN();
  bool feasible() const { return next.has_value(); }
};

/// One exact step of the coupled map: the angular velocity is updated from
/// the selected quadratic root at the current angle, then the angle rotates.
/// Infeasible when the discriminant is negative or the selected root leaves
/// the positive half-line.
inline StepOutcome step(const State& s, const MapParams& params,
                        Branch branch = Branch::positive) {
  StepOutcome out;
  out.discriminant = discriminant(s.theta, s.omega, params.p_value);
  const auto roots = solve_roots(s.theta, s.omega, params.p_value);
  if (!roots) return out;
  const double w =
      branch == Branch::positive ? roots->positive : roots->negative;
  if (!(w > 0.0) || !std::isfinite(w)) return out;
  out.residual = quadratic_residual(s.omega, w, s.theta, params.p_value);
  out.next = State{s.k + 1, rotate(s.theta, params.delta_theta), w};
  return out;
}

}  // namespace rotmap
