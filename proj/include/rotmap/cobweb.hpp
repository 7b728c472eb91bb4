#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "rotmap/map.hpp"
#include "rotmap/orbit.hpp"

namespace rotmap {

/// Gridded dataset for a cobweb-style rendering: the one-step update surface
/// omega'(theta, omega) over the grid (null where the discriminant is
/// negative), the identity surface omega' = omega, and the orbit's path as
/// alternating kick (vertical) and advance (horizontal) segments.
inline nlohmann::json cobweb_data(const MapParams& params,
                                  const Trajectory& traj,
                                  const std::vector<double>& theta_grid,
                                  const std::vector<double>& omega_grid) {
  if (theta_grid.empty() || omega_grid.empty())
    throw std::invalid_argument("cobweb_data: grids must be nonempty");

  nlohmann::json doc;
  doc["theta_grid"] = theta_grid;
  doc["omega_grid"] = omega_grid;

  nlohmann::json surface = nlohmann::json::array();
  nlohmann::json identity = nlohmann::json::array();
  for (const double w : omega_grid) {
    nlohmann::json row = nlohmann::json::array();
    nlohmann::json idrow = nlohmann::json::array();
    for (const double th : theta_grid) {
      const auto roots = solve_roots(th, w, params.p_value);
      row.push_back(roots ? nlohmann::json(roots->positive)
                          : nlohmann::json(nullptr));
      idrow.push_back(w);
    }
    surface.push_back(std::move(row));
    identity.push_back(std::move(idrow));
  }
  doc["surface"] = std::move(surface);
  doc["identity"] = std::move(identity);

  nlohmann::json path = nlohmann::json::array();
  for (std::size_t i = 0; i + 1 < traj.states.size(); ++i) {
    const State& a = traj.states[i];
    const State& b = traj.states[i + 1];
    path.push_back({{"type", "kick"},
                    {"k", a.k},
                    {"theta", a.theta},
                    {"omega", {a.omega, b.omega}}});
    path.push_back({{"type", "advance"},
                    {"k", a.k},
                    {"theta", {a.theta, b.theta}},
                    {"omega", b.omega}});
  }
  doc["path"] = std::move(path);
  return doc;
}

inline void emit_cobweb_json(std::ostream& os, const MapParams& params,
                             const Trajectory& traj,
                             const std::vector<double>& theta_grid,
                             const std::vector<double>& omega_grid) {
  os << cobweb_data(params, traj, theta_grid, omega_grid).dump(2) << '\n';
}

/// Evenly spaced grid helper (inclusive endpoints).
inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least two points");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v.push_back(lo + (hi - lo) * i / (n - 1));
  return v;
}

}  // namespace rotmap
