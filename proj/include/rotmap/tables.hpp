#pragma once

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rotmap/artifacts.hpp"
#include "rotmap/config.hpp"
#include "rotmap/numfmt.hpp"
#include "rotmap/orbit.hpp"

// Reproduction harness for the bundled reference results: every table row
// plus the monodromy, irrational-rotation, small-step-limit and
// branch-override spot checks, each compared cell by cell at a fixed
// tolerance.

namespace rotmap::tables {

enum class CheckMode { absolute, relative, noise_floor };

struct Check {
  double expected = 0.0;
  CheckMode mode = CheckMode::absolute;
  double tol = 0.0;
};

inline Check abs_c(double expected, double tol) {
  return {expected, CheckMode::absolute, tol};
}
inline Check rel_c(double expected, double tol = 0.10) {
  return {expected, CheckMode::relative, tol};
}
/// For reference values that are pure floating-point noise (|v| < 1e-7):
/// accept any computed value below the floor.
inline Check noise_c(double expected = 0.0, double floor_value = 1e-6) {
  return {expected, CheckMode::noise_floor, floor_value};
}
/// Default scheme for cells without an individually pinned tolerance.
inline Check auto_c(double expected) {
  const double a = std::fabs(expected);
  if (a < 1e-7) return noise_c(expected);
  if (a < 0.1) return rel_c(expected);
  return abs_c(expected, std::max(0.01, 0.002 * a));
}

struct CellResult {
  std::string table;
  std::string row;
  std::string quantity;
  Check check;
  double actual = 0.0;
  bool pass = false;
};

struct TableReport {
  std::vector<CellResult> cells;
  int failures = 0;
  bool all_pass() const { return failures == 0; }
};

inline bool check_passes(const Check& c, double actual) {
  switch (c.mode) {
    case CheckMode::absolute:
      return std::fabs(actual - c.expected) <= c.tol;
    case CheckMode::relative:
      return std::fabs(actual - c.expected) <= c.tol * std::fabs(c.expected);
    case CheckMode::noise_floor:
      return std::fabs(actual) < c.tol;
  }
  return false;
}

inline void add_cell(TableReport& rep, std::string table, std::string row,
                     std::string quantity, const Check& c, double actual) {
  const bool ok = check_passes(c, actual);
  if (!ok) ++rep.failures;
  rep.cells.push_back(
      {std::move(table), std::move(row), std::move(quantity), c, actual, ok});
}

namespace detail {

struct Extrema {
  double max_omega = 0.0, theta_at_max = 0.0;
  double min_omega = 0.0, theta_at_min = 0.0;
};

inline Extrema find_extrema(const Trajectory& traj) {
  Extrema e;
  e.max_omega = e.min_omega = traj.states.front().omega;
  e.theta_at_max = e.theta_at_min = traj.states.front().theta;
  for (const State& s : traj.states) {
    if (s.omega > e.max_omega) {
      e.max_omega = s.omega;
      e.theta_at_max = s.theta;
    }
    if (s.omega < e.min_omega) {
      e.min_omega = s.omega;
      e.theta_at_min = s.theta;
    }
  }
  return e;
}

inline ExperimentConfig turn_cfg(long long p, long long q, double theta1,
                                 double omega1, int p_sign = -1,
                                 long long steps = 1200) {
  ExperimentConfig cfg;
  cfg.params = make_params(TurnFraction{p, q}, 9.81, 1.0, p_sign);
  cfg.theta1 = theta1;
  cfg.omega1 = omega1;
  cfg.steps = steps;
  return cfg;
}

struct RowExpect {
  long long p, q;
  const char* theta_label;  // "0", "dt/2", "0.1"
  double omega1;
  Check max_err;
  std::optional<Check> drift;           // empty: periodic row, expect ~0
  std::optional<Check> steps;           // empty: full window expected
  long long window = 1200;
  int p_sign = -1;
};

inline double theta_from_label(const MapParams& params, const char* label) {
  const std::string s = label;
  if (s == "0") return 0.0;
  if (s == "dt/2") return params.delta_theta / 2.0;
  return 0.1;
}

inline void run_row(TableReport& rep, const char* table, const RowExpect& r) {
  ExperimentConfig cfg = turn_cfg(r.p, r.q, 0.0, r.omega1, r.p_sign, r.window);
  cfg.theta1 = theta_from_label(cfg.params, r.theta_label);
  const RunResult res = analyze(cfg);
  std::string row = r.p == 1 ? "N=" + std::to_string(r.q)
                             : std::to_string(r.p) + "/" + std::to_string(r.q);
  row += std::string(" th=") + r.theta_label + " w=" + fmt_shortest(r.omega1);
  add_cell(rep, table, row, "max_err_pct", r.max_err,
           res.prediction.max_err_pct);
  if (r.drift) {
    add_cell(rep, table, row, "drift_pct", *r.drift, res.drift.value_or(0.0));
  } else {
    // periodic row: the drift column is n/a in the reference, zero up to
    // detection tolerance here
    add_cell(rep, table, row, "drift_pct", noise_c(0.0, 1e-6),
             res.drift.value_or(0.0));
  }
  if (r.steps)
    add_cell(rep, table, row, "steps", *r.steps,
             static_cast<double>(res.trajectory.completed_steps()));
  else
    add_cell(rep, table, row, "steps", abs_c(static_cast<double>(r.window), 0),
             static_cast<double>(res.trajectory.completed_steps()));
}

}  // namespace detail

inline TableReport reproduce_tables() {
  using detail::RowExpect;
  TableReport rep;

  // ---- Table 1: delta_theta = 2*pi/N, negative P ----
  const RowExpect table1[] = {
      {1, 3, "0", 12, abs_c(5.2507, 0.01), {}, {}},
      {1, 3, "0", 30, rel_c(3.3435e-3), {}, {}},
      {1, 3, "dt/2", 12, abs_c(5.2507, 0.01), {}, {}},
      {1, 3, "dt/2", 30, rel_c(3.3435e-3), {}, {}},
      {1, 3, "0.1", 12, auto_c(-49.7107), abs_c(44.9383, 0.05), {}},
      {1, 3, "0.1", 30, auto_c(-0.4389), abs_c(0.4000, 0.005), {}},
      {1, 4, "0", 10, abs_c(1.4427, 0.01), {}, {}},
      {1, 4, "0", 30, rel_c(5.4332e-4), {}, {}},
      {1, 4, "dt/2", 10, abs_c(2.8509, 0.01), {}, {}},
      {1, 4, "dt/2", 30, rel_c(4.0290e-4), {}, {}},
      {1, 4, "0.1", 10, auto_c(65.6032), auto_c(-13.5048), abs_c(212, 2)},
      {1, 4, "0.1", 30, rel_c(2.3182e-3), rel_c(-1.6747e-3), {}},
      {1, 6, "0", 8, abs_c(2.4646, 0.01), {}, {}},
      {1, 6, "0", 30, rel_c(9.4188e-5), {}, {}},
      {1, 6, "dt/2", 8, abs_c(4.2155, 0.01), {}, {}},
      {1, 6, "dt/2", 30, rel_c(9.2024e-5), {}, {}},
      {1, 6, "0.1", 8, auto_c(68.2575), auto_c(-7.4799), abs_c(516, 2)},
      {1, 6, "0.1", 30, rel_c(9.4333e-5), noise_c(-5.0463e-8), {}},
  };
  for (const auto& r : table1) detail::run_row(rep, "Table 1", r);

  // ---- Table 2: delta_theta = (p/q)*2*pi, negative P ----
  const RowExpect table2[] = {
      {3, 7, "0", 19, abs_c(10.9992, 0.02), noise_c(-7.1019e-9), {}},
      {3, 7, "0", 30, auto_c(0.1312), noise_c(-7.7179e-10), {}},
      {3, 7, "dt/2", 22, auto_c(13.5781), noise_c(8.2037e-9), {}},
      {3, 7, "dt/2", 30, auto_c(0.3451), noise_c(5.9093e-12), {}},
      {3, 7, "0.1", 19, auto_c(18.1939), abs_c(8.4108, 0.02), {}},
      {3, 7, "0.1", 30, auto_c(0.1383), rel_c(4.5355e-3), {}},
      {2, 9, "0", 8, abs_c(16.1407, 0.05), noise_c(7.1658e-9), {}},
      {2, 9, "0", 30, rel_c(2.7761e-4), noise_c(-2.1790e-11), {}},
      {2, 9, "dt/2", 9, auto_c(6.1096), noise_c(2.9724e-11), {}},
      {2, 9, "dt/2", 30, rel_c(2.6540e-4), noise_c(7.1054e-14), {}},
      {2, 9, "0.1", 9, auto_c(2.8702), abs_c(-0.1268, 0.005), {}},
      {2, 9, "0.1", 30, rel_c(2.8351e-4), noise_c(-1.9457e-11), {}},
      {4, 21, "0", 8, auto_c(7.4877), noise_c(3.3809e-10), {}},
      {4, 21, "0", 30, rel_c(1.5035e-4), noise_c(2.3791e-11), {}},
      {4, 21, "dt/2", 8, abs_c(11.7000, 0.02), noise_c(-1.2212e-12), {}},
      {4, 21, "dt/2", 30, rel_c(1.4776e-4), noise_c(-3.7896e-13), {}},
      {4, 21, "0.1", 8, auto_c(9.4883), rel_c(-6.8383e-4), {}},
      {4, 21, "0.1", 30, rel_c(1.5133e-4), noise_c(2.0416e-11), {}},
  };
  for (const auto& r : table2) detail::run_row(rep, "Table 2", r);

  // ---- Table 3: delta_theta = 2*pi/3, positive P ----
  // The drifting small-omega row uses the reference 300-step window; under a
  // longer window the run stays feasible until step 323.
  const RowExpect table3[] = {
      {1, 3, "0", 12, abs_c(-0.2626, 0.005), {}, {}, 1200, +1},
      {1, 3, "0", 30, rel_c(-2.2774e-3), {}, {}, 1200, +1},
      {1, 3, "dt/2", 12, abs_c(-0.2626, 0.005), {}, {}, 1200, +1},
      {1, 3, "dt/2", 30, rel_c(-2.2774e-3), {}, {}, 1200, +1},
      {1, 3, "0.1", 12, auto_c(57.5809), abs_c(-36.5406, 0.05), abs_c(300, 2),
       300, +1},
      {1, 3, "0.1", 30, auto_c(0.3522), abs_c(-0.3509, 0.005), {}, 1200, +1},
  };
  for (const auto& r : table3) detail::run_row(rep, "Table 3", r);

  // ---- Periodic-orbit monodromy: N=6, theta1=0, omega1=8 ----
  {
    const ExperimentConfig cfg = detail::turn_cfg(1, 6, 0.0, 8.0, -1, 12);
    const RunResult res = analyze(cfg);
    const char* row = "N=6 th=0 w=8";
    if (res.mono) {
      const double j10[6] = {-1.5528, -0.9923, 1.6049, 2.7796, 1.0402, -0.7988};
      const double j11[6] = {1.0000, 1.2422, 1.5428, 1.0000, 0.6482, 0.8050};
      for (int i = 0; i < 6; ++i) {
        const std::string jn = "J" + std::to_string(i + 1);
        add_cell(rep, "Monodromy", row, jn + "[1][0]", abs_c(j10[i], 5e-4),
                 res.mono->jacobians[static_cast<std::size_t>(i)].m10);
        add_cell(rep, "Monodromy", row, jn + "[1][1]", abs_c(j11[i], 5e-4),
                 res.mono->jacobians[static_cast<std::size_t>(i)].m11);
      }
      add_cell(rep, "Monodromy", row, "M[1][0]", abs_c(-0.0252, 5e-4),
               res.mono->matrix.m10);
      add_cell(rep, "Monodromy", row, "M[1][1]", abs_c(1.0000, 5e-4),
               res.mono->matrix.m11);
      add_cell(rep, "Monodromy", row, "|lambda1|", abs_c(1.0, 1e-6),
               res.mono->eigenvalue_magnitudes[0]);
      add_cell(rep, "Monodromy", row, "|lambda2|", abs_c(1.0, 1e-6),
               res.mono->eigenvalue_magnitudes[1]);
    } else {
      add_cell(rep, "Monodromy", row, "periodic", abs_c(1.0, 0.0), 0.0);
    }
  }

  // ---- Irrational rotation: delta_theta = (sqrt(2)/5)*2*pi, theta1=0 ----
  {
    const double scale = std::sqrt(2.0) / 5.0;
    const Check errs[3] = {abs_c(8.1788, 0.02), rel_c(1.7975e-2),
                           rel_c(1.3405e-3)};
    const double omegas[3] = {10.0, 20.0, 30.0};
    for (int i = 0; i < 3; ++i) {
      ExperimentConfig cfg;
      cfg.params = make_params(two_pi * scale);
      cfg.theta1 = 0.0;
      cfg.omega1 = omegas[i];
      const RunResult res = analyze(cfg);
      const std::string row = "irrational w=" + fmt_shortest(omegas[i]);
      add_cell(rep, "Irrational", row, "max_err_pct", errs[i],
               res.prediction.max_err_pct);
      if (i == 0) {
        const auto ex = detail::find_extrema(res.trajectory);
        const double dt = cfg.params.delta_theta;
        add_cell(rep, "Irrational", row, "max_omega", abs_c(10.5850, 0.005),
                 ex.max_omega);
        add_cell(rep, "Irrational", row, "theta_at_max", abs_c(0.8883, dt),
                 ex.theta_at_max);
        add_cell(rep, "Irrational", row, "min_omega", abs_c(5.3506, 0.005),
                 ex.min_omega);
        add_cell(rep, "Irrational", row, "theta_at_min", abs_c(4.0319, dt),
                 ex.theta_at_min);
      }
    }
    // positive-P variant
    ExperimentConfig cfg;
    cfg.params = make_params(two_pi * scale, 9.81, 1.0, +1);
    cfg.theta1 = 0.0;
    cfg.omega1 = 10.0;
    const RunResult res = analyze(cfg);
    const char* row = "irrational P+ w=10";
    add_cell(rep, "Irrational", row, "max_err_pct", abs_c(-0.3894, 0.005),
             res.prediction.max_err_pct);
    const auto ex = detail::find_extrema(res.trajectory);
    const double dt = cfg.params.delta_theta;
    add_cell(rep, "Irrational", row, "min_omega", abs_c(9.2234, 0.005),
             ex.min_omega);
    add_cell(rep, "Irrational", row, "theta_at_min", abs_c(0.8883, dt),
             ex.theta_at_min);
    add_cell(rep, "Irrational", row, "max_omega", abs_c(12.9270, 0.005),
             ex.max_omega);
    add_cell(rep, "Irrational", row, "theta_at_max", abs_c(4.0319, dt),
             ex.theta_at_max);
  }

  // ---- Small-step limit: theta1=0, omega1=6.4, negative P ----
  {
    const Check inv_err[2] = {abs_c(0.2882, 0.005), rel_c(2.8311e-3)};
    const Check pend_err[2] = {abs_c(3.5168, 0.02), rel_c(0.3100)};
    const long long ns[2] = {120, 1200};
    for (int i = 0; i < 2; ++i) {
      const ExperimentConfig cfg = detail::turn_cfg(1, ns[i], 0.0, 6.4);
      const RunResult res = analyze(cfg);
      const std::string row = "N=" + std::to_string(ns[i]) + " th=0 w=6.4";
      add_cell(rep, "Limit", row, "max_err_vs_invariant", inv_err[i],
               res.prediction.max_err_pct);
      const PendulumModel pm{pendulum_energy(0.0, 6.4, 9.81, 1.0, -1), -1};
      const PredictionError pe =
          max_pendulum_error(res.trajectory, pm, 9.81, 1.0);
      add_cell(rep, "Limit", row, "max_err_vs_pendulum", pend_err[i],
               pe.max_err_pct);
    }
  }

  // ---- Branch override: positive P, theta1=0, omega1=4 ----
  {
    ExperimentConfig cfg = detail::turn_cfg(1, 3, 0.0, 4.0, +1, 3);
    const Trajectory all_pos =
        simulate(cfg.params, cfg.theta1, cfg.omega1, cfg.steps);
    add_cell(rep, "Branch override", "N=3 th=0 w=4", "omega4_all_positive",
             abs_c(5.3789, 5e-4), all_pos.at(4).omega);
    cfg.policy.overrides[3] = Branch::negative;
    const Trajectory mixed =
        simulate(cfg.params, cfg.theta1, cfg.omega1, cfg.steps, cfg.policy);
    add_cell(rep, "Branch override", "N=3 th=0 w=4",
             "mixed_closure_rel_error", noise_c(0.0, 1e-9),
             std::fabs(mixed.at(4).omega - 4.0) / 4.0);
  }

  return rep;
}

inline const char* mode_name(CheckMode m) {
  switch (m) {
    case CheckMode::absolute:
      return "abs";
    case CheckMode::relative:
      return "rel";
    case CheckMode::noise_floor:
      return "noise<";
  }
  return "?";
}

inline void write_table_report(std::ostream& os, const TableReport& rep) {
  os << "# Reference table reproduction\n\n";
  os << "| status | table | row | quantity | expected | actual | check |\n";
  os << "|--------|-------|-----|----------|----------|--------|-------|\n";
  for (const CellResult& c : rep.cells) {
    os << "| " << (c.pass ? "PASS" : "FAIL") << " | " << c.table << " | "
       << c.row << " | " << c.quantity << " | " << fmt_table(c.check.expected)
       << " | " << fmt_table(c.actual) << " | " << mode_name(c.check.mode)
       << ' ' << fmt_table(c.check.tol) << " |\n";
  }
  os << "\n" << (rep.cells.size() - static_cast<std::size_t>(rep.failures))
     << "/" << rep.cells.size() << " cells pass";
  if (rep.failures > 0) os << " (" << rep.failures << " FAILED)";
  os << "\n";
}

}  // namespace rotmap::tables
