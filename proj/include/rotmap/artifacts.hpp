#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotmap/config.hpp"
#include "rotmap/invariant.hpp"
#include "rotmap/numfmt.hpp"
#include "rotmap/orbit.hpp"

namespace rotmap {

/// Everything derived from one experiment run.
struct RunResult {
  ExperimentConfig config;
  Trajectory trajectory;
  InvariantModel model;
  std::optional<long long> period;
  std::optional<double> drift;
  PredictionError prediction;
  AssumptionCheck assumption;
  std::optional<MonodromyResult> mono;
};

inline RunResult analyze(const ExperimentConfig& cfg) {
  RunResult r;
  r.config = cfg;
  r.trajectory =
      simulate(cfg.params, cfg.theta1, cfg.omega1, cfg.steps, cfg.policy);
  r.model = make_invariant_model(cfg.theta1, cfg.omega1, cfg.params);
  r.period = detect_period(r.trajectory, cfg.params);
  if (cfg.params.turn &&
      r.trajectory.completed_steps() / cfg.params.turn->den >= 1)
    r.drift = drift_pct(r.trajectory, cfg.params.turn->den);
  r.prediction = max_prediction_error(r.trajectory, r.model);
  r.assumption = check_assumption(r.trajectory, cfg.params);
  if (r.period) r.mono = monodromy(r.trajectory, cfg.params);
  return r;
}

/// Trajectory CSV. One row per state; numbers in shortest round-trip form.
/// The discriminant/feasible columns describe the outgoing step attempt at
/// each state under the run's branch policy.
inline void write_trajectory_csv(std::ostream& os, const RunResult& r) {
  os << "k,theta,omega,omega_pred,err_pct,discriminant,feasible\n";
  for (const State& s : r.trajectory.states) {
    const double d =
        discriminant(s.theta, s.omega, r.config.params.p_value);
    const auto roots = solve_roots(s.theta, s.omega, r.config.params.p_value);
    bool feasible = false;
    if (roots) {
      const double w = r.trajectory.policy.at(s.k) == Branch::positive
                           ? roots->positive
                           : roots->negative;
      feasible = w > 0.0 && std::isfinite(w);
    }
    os << s.k << ',' << fmt_shortest(s.theta) << ',' << fmt_shortest(s.omega);
    const auto pred = omega_pred_opt(s.theta, r.model);
    if (pred) {
      const double err = 100.0 * (*pred - s.omega) / s.omega;
      os << ',' << fmt_shortest(*pred) << ',' << fmt_shortest(err);
    } else {
      os << ",,";
    }
    os << ',' << fmt_shortest(d) << ',' << (feasible ? 1 : 0) << '\n';
  }
}

inline nlohmann::json report_json(const RunResult& r) {
  nlohmann::json j;
  j["steps"] = r.trajectory.completed_steps();
  j["termination"] = r.trajectory.termination == Termination::infeasible
                         ? "infeasible"
                         : "window_exhausted";
  j["failing_discriminant"] =
      r.trajectory.termination == Termination::infeasible
          ? nlohmann::json(r.trajectory.failing_discriminant)
          : nlohmann::json(nullptr);
  j["periodic"] = r.period.has_value();
  j["period"] = r.period ? nlohmann::json(*r.period) : nlohmann::json(nullptr);
  j["drift_pct"] = r.drift ? nlohmann::json(*r.drift) : nlohmann::json(nullptr);
  j["max_err_pct"] = r.prediction.max_err_pct;
  j["max_err_index"] = r.prediction.index;
  j["prediction_unavailable"] = r.prediction.unavailable;
  j["assumption_satisfied"] = r.assumption.satisfied;
  j["min_omega"] = r.assumption.min_omega;
  j["sigma"] = r.model.sigma_value;
  j["e_bar"] = r.model.e_bar_value;
  j["p_value"] = r.config.params.p_value;
  j["delta_theta"] = r.config.params.delta_theta;
  if (r.mono) {
    j["monodromy"] = {{r.mono->matrix.m00, r.mono->matrix.m01},
                      {r.mono->matrix.m10, r.mono->matrix.m11}};
    j["eigenvalue_magnitudes"] = {r.mono->eigenvalue_magnitudes[0],
                                  r.mono->eigenvalue_magnitudes[1]};
  } else {
    j["monodromy"] = nullptr;
    j["eigenvalue_magnitudes"] = nullptr;
  }
  // 4-decimal renditions matching the reference tables.
  j["table"] = {
      {"max_err_pct", fmt_table(r.prediction.max_err_pct)},
      {"drift_pct", r.drift ? fmt_table(*r.drift) : std::string("n/a")}};
  return j;
}

struct RunArtifact {
  std::filesystem::path trajectory_csv;
  std::filesystem::path report;
};

inline RunArtifact write_run_artifacts(const RunResult& r,
                                       const std::filesystem::path& dir,
                                       const std::string& stem) {
  std::filesystem::create_directories(dir);
  RunArtifact art;
  art.trajectory_csv = dir / (stem + "_trajectory.csv");
  art.report = dir / (stem + "_report.json");
  {
    std::ofstream os(art.trajectory_csv);
    if (!os)
      throw std::runtime_error("cannot write " + art.trajectory_csv.string());
    write_trajectory_csv(os, r);
  }
  {
    std::ofstream os(art.report);
    if (!os) throw std::runtime_error("cannot write " + art.report.string());
    os << report_json(r).dump(2) << '\n';
  }
  return art;
}

}  // namespace rotmap
