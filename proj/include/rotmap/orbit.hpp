#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rotmap/angle.hpp"
#include "rotmap/invariant.hpp"
#include "rotmap/map.hpp"

namespace rotmap {

/// Default branch for every step plus optional per-index overrides.
/// The override key is the step index k of the k -> k+1 transition.
struct BranchPolicy {
  Branch fallback = Branch::positive;
  std::map<long long, Branch> overrides;

  Branch at(long long k) const {
    const auto it = overrides.find(k);
    return it == overrides.end() ? fallback : it->second;
  }
};

enum class Termination { window_exhausted, infeasible };

struct Trajectory {
  std::vector<State> states;  ///< states[0].k == 1, k increasing by 1
  Termination termination = Termination::window_exhausted;
  /// Discriminant of the failing step; NaN unless termination is infeasible.
  double failing_discriminant = std::numeric_limits<double>::quiet_NaN();
  BranchPolicy policy;

  long long completed_steps() const {
    return static_cast<long long>(states.size()) - 1;
  }
  /// 1-based state access matching the k index.
  const State& at(long long k) const {
    return states.at(static_cast<std::size_t>(k - 1));
  }
};

/// Iterate the map from (theta1, omega1) for up to max_steps transitions.
/// Infeasibility ends the run early and is recorded, not thrown. Angles come
/// from the step index so long windows carry no cumulative rotation error.
inline Trajectory simulate(const MapParams& params, double theta1,
                           double omega1, long long max_steps,
                           BranchPolicy policy = {}) {
  if (!(omega1 > 0.0)) throw std::domain_error("omega1 must be positive");
  if (max_steps < 1) throw std::domain_error("max_steps must be at least 1");
  Trajectory traj;
  traj.policy = policy;
  traj.states.reserve(static_cast<std::size_t>(max_steps) + 1);
  traj.states.push_back(State{1, angle_at(theta1, params, 1), omega1});
  for (long long k = 1; k <= max_steps; ++k) {
    const State& cur = traj.states.back();
    const double d = discriminant(cur.theta, cur.omega, params.p_value);
    const auto roots = solve_roots(cur.theta, cur.omega, params.p_value);
    double w = 0.0;
    if (roots)
      w = policy.at(k) == Branch::positive ? roots->positive : roots->negative;
    if (!roots || !(w > 0.0) || !std::isfinite(w)) {
      traj.termination = Termination::infeasible;
      traj.failing_discriminant = d;
      return traj;
    }
    traj.states.push_back(State{k + 1, angle_at(theta1, params, k + 1), w});
  }
  return traj;
}

struct AssumptionCheck {
  bool satisfied = false;
  double min_omega = 0.0;
};

/// min_k omega_k^2 > |P| over the whole window (strict).
inline AssumptionCheck check_assumption(const Trajectory& traj,
                                        const MapParams& params) {
  if (traj.states.empty())
    throw std::invalid_argument("check_assumption: empty trajectory");
  double mn = traj.states.front().omega;
  for (const State& s : traj.states) mn = std::min(mn, s.omega);
  return AssumptionCheck{mn * mn > std::fabs(params.p_value), mn};
}

inline constexpr double period_match_rtol = 1e-8;

/// Period of the orbit, if any. Only rational rotations can be periodic;
/// for them the angle returns every q steps, so the orbit is periodic with
/// period q exactly when omega matches its initial value at every return
/// index inside the window.
inline std::optional<long long> detect_period(const Trajectory& traj,
                                              const MapParams& params) {
  if (!params.turn) return std::nullopt;
  const long long q = params.turn->den;
  const long long n = static_cast<long long>(traj.states.size());
  if (n < q + 1) return std::nullopt;  // no full return to verify
  const double w1 = traj.states.front().omega;
  for (long long k = 1 + q; k <= n; k += q) {
    if (std::fabs(traj.at(k).omega - w1) / w1 > period_match_rtol)
      return std::nullopt;
  }
  return q;
}

/// Signed percentage change of omega from its initial value, measured at the
/// last angular return inside the window (return stride q).
inline double drift_pct(const Trajectory& traj, long long q) {
  if (q < 1) throw std::domain_error("drift_pct: return stride must be >= 1");
  const long long m = (static_cast<long long>(traj.states.size()) - 1) / q;
  if (m < 1)
    throw std::domain_error("drift_pct: no full angular return in window");
  const double w1 = traj.states.front().omega;
  return 100.0 * (traj.at(1 + m * q).omega - w1) / w1;
}

struct PredictionError {
  double max_err_pct = 0.0;  ///< signed, at the largest |error|
  long long index = 1;       ///< k where the maximum occurs
  long long unavailable = 0; ///< points skipped for a negative radicand
};

/// Pointwise error 100 (predicted - exact)/exact over the window; returns
/// the signed value of largest magnitude. Unavailable predictions are
/// skipped and counted.
inline PredictionError max_prediction_error(const Trajectory& traj,
                                            const InvariantModel& model) {
  PredictionError out;
  double best = -1.0;
  for (const State& s : traj.states) {
    const auto pred = omega_pred_opt(s.theta, model);
    if (!pred) {
      ++out.unavailable;
      continue;
    }
    const double e = 100.0 * (*pred - s.omega) / s.omega;
    if (std::fabs(e) > best) {
      best = std::fabs(e);
      out.max_err_pct = e;
      out.index = s.k;
    }
  }
  return out;
}

/// Same comparison against the limiting-system prediction.
inline PredictionError max_pendulum_error(const Trajectory& traj,
                                          const PendulumModel& model, double g,
                                          double ell) {
  PredictionError out;
  double best = -1.0;
  for (const State& s : traj.states) {
    const auto pred = pendulum_omega_opt(s.theta, model, g, ell);
    if (!pred) {
      ++out.unavailable;
      continue;
    }
    const double e = 100.0 * (*pred - s.omega) / s.omega;
    if (std::fabs(e) > best) {
      best = std::fabs(e);
      out.max_err_pct = e;
      out.index = s.k;
    }
  }
  return out;
}

struct Mat2 {
  double m00 = 1.0, m01 = 0.0;
  double m10 = 0.0, m11 = 1.0;
};

inline Mat2 mul(const Mat2& a, const Mat2& b) {
  return Mat2{a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
              a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

/// Closed-form eigenvalue magnitudes of a 2x2 matrix via trace/determinant;
/// a complex pair has common magnitude sqrt(det).
inline std::array<double, 2> eigenvalue_magnitudes(const Mat2& m) {
  const double tr = m.m00 + m.m11;
  const double det = m.m00 * m.m11 - m.m01 * m.m10;
  const double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    return {std::fabs(0.5 * (tr + s)), std::fabs(0.5 * (tr - s))};
  }
  return {std::sqrt(det), std::sqrt(det)};
}

/// Jacobian of one positive-branch step,
///   [[dtheta'/dtheta, dtheta'/domega], [domega'/dtheta, domega'/domega]].
/// The angle row is (1, 0): the rotation does not see omega.
inline Mat2 step_jacobian(const State& s, const MapParams& params) {
  const double w = s.omega;
  const double x = params.p_value * circle_sin(s.theta);
  const double c = params.p_value * std::cos(s.theta);
  const double r = x / (w * w);
  const double d = 1.0 + 6.0 * r + r * r;
  if (!(d > 0.0))
    throw std::domain_error("step_jacobian: step infeasible at this state");
  const double sd = std::sqrt(d);
  const double dw_dth = (c / (2.0 * w)) * (1.0 + (3.0 + r) / sd);
  const double dw_dw = 0.5 - 0.5 * r + 0.5 * sd - (3.0 * r + r * r) / sd;
  return Mat2{1.0, 0.0, dw_dth, dw_dw};
}

struct MonodromyResult {
  Mat2 matrix;
  std::array<double, 2> eigenvalue_magnitudes{1.0, 1.0};
  std::vector<Mat2> jacobians;  ///< J_1 ... J_N in step order
};

/// Ordered product M = J_N ... J_2 J_1 around a verified periodic orbit.
inline MonodromyResult monodromy(const Trajectory& traj,
                                 const MapParams& params) {
  const auto period = detect_period(traj, params);
  if (!period)
    throw std::domain_error("monodromy: orbit is not verified periodic");
  MonodromyResult out;
  out.jacobians.reserve(static_cast<std::size_t>(*period));
  Mat2 m;
  for (long long k = 1; k <= *period; ++k) {
    const Mat2 j = step_jacobian(traj.at(k), params);
    out.jacobians.push_back(j);
    m = mul(j, m);
  }
  out.matrix = m;
  out.eigenvalue_magnitudes = rotmap::eigenvalue_magnitudes(m);
  return out;
}

}  // namespace rotmap
