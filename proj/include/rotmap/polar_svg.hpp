#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>
#include <vector>

#include "rotmap/invariant.hpp"
#include "rotmap/numfmt.hpp"
#include "rotmap/orbit.hpp"

namespace rotmap {

// Polar rendering of a trajectory: exact states as black dots, the
// invariant-model prediction as a closed red curve, radius = omega.
// Output is deterministic for a fixed input.

namespace detail {
inline constexpr int svg_size = 640;
inline constexpr double svg_radius = 280.0;

inline std::pair<double, double> polar_px(double theta, double omega,
                                          double scale) {
  const double cx = svg_size / 2.0;
  const double cy = svg_size / 2.0;
  return {cx + scale * omega * std::cos(theta),
          cy - scale * omega * std::sin(theta)};
}
}  // namespace detail

inline void emit_polar_svg(std::ostream& os, const Trajectory& traj,
                           const InvariantModel& model) {
  if (traj.states.empty())
    throw std::invalid_argument("emit_polar_svg: empty trajectory");

  constexpr int curve_samples = 720;
  std::vector<std::pair<double, double>> curve;  // (theta, omega)
  bool curve_available = true;
  for (int i = 0; i < curve_samples; ++i) {
    const double th = two_pi * i / curve_samples;
    const auto w = omega_pred_opt(th, model);
    if (!w) {
      curve_available = false;
      curve.clear();
      break;
    }
    curve.emplace_back(th, *w);
  }

  double wmax = 0.0;
  for (const State& s : traj.states) wmax = std::max(wmax, s.omega);
  for (const auto& [th, w] : curve) wmax = std::max(wmax, w);
  const double scale = detail::svg_radius / (wmax * 1.05);

  const int sz = detail::svg_size;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << sz
     << "\" height=\"" << sz << "\" viewBox=\"0 0 " << sz << ' ' << sz
     << "\">\n";
  os << "<rect width=\"" << sz << "\" height=\"" << sz
     << "\" fill=\"white\"/>\n";

  // radial grid and spokes
  for (int i = 1; i <= 4; ++i) {
    const double rr = scale * wmax * 1.05 * i / 4.0;
    os << "<circle cx=\"" << sz / 2 << "\" cy=\"" << sz / 2 << "\" r=\""
       << fmt_fixed(rr, 2)
       << "\" fill=\"none\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  }
  const char* labels[4] = {"0", "pi/2", "pi", "3pi/2"};
  for (int i = 0; i < 4; ++i) {
    const double th = i * pi / 2.0;
    const auto [x, y] = detail::polar_px(th, wmax * 1.05, scale);
    os << "<line x1=\"" << sz / 2 << "\" y1=\"" << sz / 2 << "\" x2=\""
       << fmt_fixed(x, 2) << "\" y2=\"" << fmt_fixed(y, 2)
       << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    const auto [lx, ly] = detail::polar_px(th, wmax * 1.12, scale);
    os << "<text x=\"" << fmt_fixed(lx, 2) << "\" y=\"" << fmt_fixed(ly, 2)
       << "\" font-size=\"12\" text-anchor=\"middle\">" << labels[i]
       << "</text>\n";
  }

  if (curve_available) {
    os << "<path d=\"";
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const auto [x, y] = detail::polar_px(curve[i].first, curve[i].second, scale);
      os << (i == 0 ? 'M' : 'L') << fmt_fixed(x, 2) << ' ' << fmt_fixed(y, 2);
    }
    os << "Z\" fill=\"none\" stroke=\"#cc0000\" stroke-width=\"1.5\"/>\n";
  } else {
    os << "<!-- prediction curve omitted: negative radicand on part of the "
          "circle -->\n";
    os << "<text x=\"10\" y=\"20\" font-size=\"12\" fill=\"#cc0000\">"
          "prediction curve omitted (radicand negative)</text>\n";
  }

  for (const State& s : traj.states) {
    const auto [x, y] = detail::polar_px(s.theta, s.omega, scale);
    os << "<circle cx=\"" << fmt_fixed(x, 2) << "\" cy=\"" << fmt_fixed(y, 2)
       << "\" r=\"1.6\" fill=\"black\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace rotmap
