#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "rotmap/angle.hpp"
#include "rotmap/map.hpp"

namespace rotmap {

/// Dimensionless coefficient of the approximate invariant,
///   sigma = sign * dt^2 / (2 sin(dt/2) sin(dt)).
/// Carries the sign of P; |sigma| -> 1 as the rotation step -> 0.
inline double sigma(const MapParams& params) {
  const double dt = params.delta_theta;
  if (!(dt > 0.0 && dt < pi))
    throw std::domain_error("delta_theta must lie in (0, pi)");
  return params.p_sign * dt * dt /
         (2.0 * std::sin(0.5 * dt) * std::sin(dt));
}

/// Energy-like quantity
///   e_bar = w^2/2 + sigma (g/ell) cos(theta - dt/2)
/// evaluated at a trajectory point; approximately conserved by the exact
/// map, exactly conserved by the surrogate step below.
inline double e_bar(double theta, double omega, const MapParams& params) {
  return 0.5 * omega * omega +
         sigma(params) * (params.g / params.ell) *
             std::cos(theta - 0.5 * params.delta_theta);
}

/// Frozen invariant, built from an initial condition; predicts omega as an
/// explicit function of theta.
struct InvariantModel {
  double sigma_value = 0.0;
  double e_bar_value = 0.0;
  MapParams params;
};

inline InvariantModel make_invariant_model(double theta1, double omega1,
                                           const MapParams& params) {
  if (!(omega1 > 0.0)) throw std::domain_error("omega1 must be positive");
  return InvariantModel{sigma(params), e_bar(theta1, omega1, params), params};
}

/// Predicted angular velocity at an angle, or nothing when the radicand is
/// negative (prediction unavailable at that angle).
inline std::optional<double> omega_pred_opt(double theta,
                                            const InvariantModel& m) {
  const double radicand =
      2.0 * (m.e_bar_value - m.sigma_value * (m.params.g / m.params.ell) *
                                 std::cos(theta - 0.5 * m.params.delta_theta));
  if (radicand < 0.0) return std::nullopt;
  return std::sqrt(radicand);
}

inline double omega_pred(double theta, const InvariantModel& m) {
  const auto w = omega_pred_opt(theta, m);
  if (!w)
    throw std::domain_error("omega_pred: negative radicand, prediction unavailable");
  return *w;
}

/// Surrogate update w' = w sqrt(1 + 4 P sin(theta)/w^2); conserves e_bar
/// exactly and matches the exact update through second order in the kick.
inline double invariant_step(double theta, double omega, double p_value) {
  const double radicand =
      1.0 + 4.0 * p_value * circle_sin(theta) / (omega * omega);
  if (radicand < 0.0)
    throw std::domain_error("invariant_step: negative radicand");
  return omega * std::sqrt(radicand);
}

/// Integral of motion of the limiting continuous system. sign_choice pairs
/// with the sign of P.
struct PendulumModel {
  double e = 0.0;
  int sign_choice = -1;
};

inline double pendulum_energy(double theta, double omega, double g, double ell,
                              int sign_choice) {
  if (!(omega > 0.0)) throw std::domain_error("omega must be positive");
  if (sign_choice != 1 && sign_choice != -1)
    throw std::domain_error("sign_choice must be +1 or -1");
  return 0.5 * omega * omega + sign_choice * (g / ell) * std::cos(theta);
}

inline std::optional<double> pendulum_omega_opt(double theta,
                                                const PendulumModel& m,
                                                double g, double ell) {
  const double radicand =
      2.0 * (m.e - m.sign_choice * (g / ell) * std::cos(theta));
  if (radicand < 0.0) return std::nullopt;
  return std::sqrt(radicand);
}

inline double pendulum_omega(double theta, const PendulumModel& m, double g,
                             double ell) {
  const auto w = pendulum_omega_opt(theta, m, g, ell);
  if (!w) throw std::domain_error("pendulum_omega: negative radicand");
  return *w;
}

}  // namespace rotmap
