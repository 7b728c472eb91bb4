#pragma once

#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rotmap/map.hpp"
#include "rotmap/orbit.hpp"

namespace rotmap {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A fully resolved experiment: map parameters, initial condition, window
/// length and branch policy.
struct ExperimentConfig {
  MapParams params;
  double theta1 = 0.0;
  double omega1 = 1.0;
  long long steps = 1200;
  BranchPolicy policy;
};

namespace detail {

inline Branch parse_branch_name(const nlohmann::json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "positive") return Branch::positive;
    if (s == "negative") return Branch::negative;
  }
  throw ConfigError("branch must be \"positive\" or \"negative\"");
}

}  // namespace detail

/// Parse and validate an experiment config. Every invariant violation maps
/// to its own error message.
inline ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  double g = 9.81;
  double ell = 1.0;
  int p_sign = -1;
  if (j.contains("g")) {
    if (!j.at("g").is_number() || !(j.at("g").get<double>() > 0.0))
      throw ConfigError("g must be a positive number");
    g = j.at("g").get<double>();
  }
  if (j.contains("ell")) {
    if (!j.at("ell").is_number() || !(j.at("ell").get<double>() > 0.0))
      throw ConfigError("ell must be a positive number");
    ell = j.at("ell").get<double>();
  }
  if (j.contains("p_sign")) {
    const auto& v = j.at("p_sign");
    if (v.is_string() && v.get<std::string>() == "+")
      p_sign = 1;
    else if (v.is_string() && v.get<std::string>() == "-")
      p_sign = -1;
    else
      throw ConfigError("p_sign must be \"+\" or \"-\"");
  }

  static constexpr const char* kDeltaForms =
      "delta_theta must be an object holding exactly one of two_pi_fraction, "
      "radians, two_pi_scale";
  if (!j.contains("delta_theta") || !j.at("delta_theta").is_object())
    throw ConfigError(kDeltaForms);
  const auto& dt = j.at("delta_theta");
  const int forms = (dt.contains("two_pi_fraction") ? 1 : 0) +
                    (dt.contains("radians") ? 1 : 0) +
                    (dt.contains("two_pi_scale") ? 1 : 0);
  if (forms != 1) throw ConfigError(kDeltaForms);

  ExperimentConfig cfg;
  if (dt.contains("two_pi_fraction")) {
    const auto& f = dt.at("two_pi_fraction");
    if (!f.is_object() || !f.contains("p") || !f.contains("q") ||
        !f.at("p").is_number_integer() || !f.at("q").is_number_integer())
      throw ConfigError("two_pi_fraction requires integer fields p and q");
    const long long p = f.at("p").get<long long>();
    const long long q = f.at("q").get<long long>();
    if (p <= 0 || q <= 0)
      throw ConfigError("two_pi_fraction: p and q must be positive");
    if (std::gcd(p, q) != 1)
      throw ConfigError("two_pi_fraction: p/q must be in lowest terms");
    if (2 * p >= q) throw ConfigError("delta_theta must lie in (0, pi)");
    cfg.params = make_params(TurnFraction{p, q}, g, ell, p_sign);
  } else if (dt.contains("radians")) {
    if (!dt.at("radians").is_number())
      throw ConfigError("delta_theta radians must be a number");
    const double v = dt.at("radians").get<double>();
    if (!(v > 0.0 && v < pi))
      throw ConfigError("delta_theta must lie in (0, pi)");
    cfg.params = make_params(v, g, ell, p_sign);
  } else {
    if (!dt.at("two_pi_scale").is_number())
      throw ConfigError("delta_theta two_pi_scale must be a number");
    const double s = dt.at("two_pi_scale").get<double>();
    if (!(s > 0.0 && s < 0.5))
      throw ConfigError("delta_theta must lie in (0, pi)");
    cfg.params = make_params(two_pi * s, g, ell, p_sign);
  }

  if (!j.contains("theta1") || !j.at("theta1").is_number())
    throw ConfigError("theta1 is required and must be a number");
  cfg.theta1 = j.at("theta1").get<double>();

  if (!j.contains("omega1") || !j.at("omega1").is_number() ||
      !(j.at("omega1").get<double>() > 0.0))
    throw ConfigError("omega1 is required and must be positive");
  cfg.omega1 = j.at("omega1").get<double>();

  if (j.contains("steps")) {
    if (!j.at("steps").is_number_integer() ||
        j.at("steps").get<long long>() < 1)
      throw ConfigError("steps must be a positive integer");
    cfg.steps = j.at("steps").get<long long>();
  }

  if (j.contains("branch")) {
    const auto& b = j.at("branch");
    if (!b.is_object())
      throw ConfigError("branch must be an object with default and overrides");
    if (b.contains("default"))
      cfg.policy.fallback = detail::parse_branch_name(b.at("default"));
    if (b.contains("overrides")) {
      if (!b.at("overrides").is_array())
        throw ConfigError("branch overrides must be an array");
      for (const auto& o : b.at("overrides")) {
        if (!o.is_object() || !o.contains("k") ||
            !o.at("k").is_number_integer() || o.at("k").get<long long>() < 1)
          throw ConfigError("branch override k must be a positive integer");
        if (!o.contains("branch"))
          throw ConfigError("branch must be \"positive\" or \"negative\"");
        cfg.policy.overrides[o.at("k").get<long long>()] =
            detail::parse_branch_name(o.at("branch"));
      }
    }
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace rotmap
