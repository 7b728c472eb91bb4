// rotmap command-line front end: run experiments from JSON configs, emit
// trajectory/report artifacts, polar and cobweb plot data, and reproduce the
// bundled reference tables.
//
// Exit codes: 0 success, 1 reference-table mismatch, 2 invalid input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotmap/artifacts.hpp"
#include "rotmap/cobweb.hpp"
#include "rotmap/config.hpp"
#include "rotmap/polar_svg.hpp"
#include "rotmap/tables.hpp"

namespace fs = std::filesystem;

namespace {

// Output directory precedence: --out flag, then ROTMAP_OUT_DIR, then cwd.
fs::path resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("ROTMAP_OUT_DIR"); env && *env)
    return env;
  return ".";
}

fs::path resolve_out_path(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* env = std::getenv("ROTMAP_OUT_DIR"); env && *env)
      return fs::path(env) / p;
  }
  return p;
}

int cmd_run(const std::string& config_path, const std::string& out_flag,
            std::string stem) {
  const rotmap::ExperimentConfig cfg = rotmap::load_config(config_path);
  const rotmap::RunResult res = rotmap::analyze(cfg);
  if (stem.empty()) stem = fs::path(config_path).stem().string();
  const auto art =
      rotmap::write_run_artifacts(res, resolve_out_dir(out_flag), stem);
  std::cout << "steps: " << res.trajectory.completed_steps()
            << "  termination: "
            << (res.trajectory.termination == rotmap::Termination::infeasible
                    ? "infeasible"
                    : "window_exhausted")
            << "\nperiodic: " << (res.period ? "true" : "false")
            << "  max_err_pct: " << rotmap::fmt_table(res.prediction.max_err_pct)
            << "  drift_pct: "
            << (res.drift ? rotmap::fmt_table(*res.drift) : std::string("n/a"))
            << "\nwrote " << art.trajectory_csv.string() << "\nwrote "
            << art.report.string() << "\n";
  return 0;
}

int cmd_reproduce_tables(const std::string& out_flag) {
  const rotmap::tables::TableReport rep = rotmap::tables::reproduce_tables();
  const fs::path dir = resolve_out_dir(out_flag);
  fs::create_directories(dir);
  const fs::path report_path = dir / "tables_report.md";
  {
    std::ofstream os(report_path);
    if (!os) {
      std::cerr << "error: cannot write " << report_path.string() << "\n";
      return 2;
    }
    rotmap::tables::write_table_report(os, rep);
  }
  for (const auto& c : rep.cells) {
    if (!c.pass)
      std::cout << "FAIL  " << c.table << " | " << c.row << " | " << c.quantity
                << "  expected " << rotmap::fmt_table(c.check.expected)
                << " got " << rotmap::fmt_table(c.actual) << "\n";
  }
  std::cout << (rep.cells.size() - static_cast<std::size_t>(rep.failures))
            << "/" << rep.cells.size() << " cells pass\nwrote "
            << report_path.string() << "\n";
  return rep.all_pass() ? 0 : 1;
}

int cmd_polar(const std::string& config_path, const std::string& svg_path) {
  const rotmap::ExperimentConfig cfg = rotmap::load_config(config_path);
  const rotmap::RunResult res = rotmap::analyze(cfg);
  const fs::path out = resolve_out_path(svg_path);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  std::ofstream os(out);
  if (!os) {
    std::cerr << "error: cannot write " << out.string() << "\n";
    return 2;
  }
  rotmap::emit_polar_svg(os, res.trajectory, res.model);
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

int cmd_cobweb(const std::string& config_path, const std::string& out_path,
               int theta_samples, int omega_samples) {
  const rotmap::ExperimentConfig cfg = rotmap::load_config(config_path);
  const rotmap::Trajectory traj = rotmap::simulate(
      cfg.params, cfg.theta1, cfg.omega1, cfg.steps, cfg.policy);
  double wlo = traj.states.front().omega, whi = wlo;
  for (const auto& s : traj.states) {
    wlo = std::min(wlo, s.omega);
    whi = std::max(whi, s.omega);
  }
  const auto theta_grid = rotmap::linspace(0.0, rotmap::two_pi, theta_samples);
  const auto omega_grid =
      rotmap::linspace(std::max(0.25 * wlo, 0.5), 1.5 * whi, omega_samples);
  const fs::path out = resolve_out_path(out_path);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  std::ofstream os(out);
  if (!os) {
    std::cerr << "error: cannot write " << out.string() << "\n";
    return 2;
  }
  rotmap::emit_cobweb_json(os, cfg.params, traj, theta_grid, omega_grid);
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rotmap: coupled circle-rotation / angular-velocity map toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir, stem, svg_path, out_path;
  int theta_samples = 121, omega_samples = 61;

  auto* run = app.add_subcommand(
      "run", "Simulate one experiment; write trajectory CSV and report JSON");
  run->add_option("config", config_path, "experiment config (JSON)")
      ->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--stem", stem, "artifact name stem (default: config stem)");

  auto* tables = app.add_subcommand(
      "reproduce-tables",
      "Re-run every reference table row and spot check; write tables_report.md");
  tables->add_option("--out", out_dir, "output directory");

  auto* polar = app.add_subcommand(
      "polar", "Render a trajectory and its prediction curve as a polar SVG");
  polar->add_option("config", config_path, "experiment config (JSON)")
      ->required();
  polar->add_option("--svg", svg_path, "output SVG path")->required();

  auto* cobweb = app.add_subcommand(
      "cobweb", "Tabulate the update surface, identity surface and orbit path");
  cobweb->add_option("config", config_path, "experiment config (JSON)")
      ->required();
  cobweb->add_option("--out", out_path, "output JSON path")->required();
  cobweb->add_option("--theta-samples", theta_samples, "theta grid size");
  cobweb->add_option("--omega-samples", omega_samples, "omega grid size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, stem);
    if (tables->parsed()) return cmd_reproduce_tables(out_dir);
    if (polar->parsed()) return cmd_polar(config_path, svg_path);
    if (cobweb->parsed())
      return cmd_cobweb(config_path, out_path, theta_samples, omega_samples);
  } catch (const rotmap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
