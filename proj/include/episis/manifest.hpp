#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "episis/dynamics.hpp"
#include "episis/network.hpp"

namespace episis {

/// One reproducible run: network source, control setup, initial condition,
/// grid, seed, output location and enabled checks.  Serializes to JSON and
/// round-trips losslessly; every random quantity is drawn from a documented
/// substream of the single seed.
struct RunManifest {
  // Exactly one network source: a file path, or a builtin scenario name
  // ("toy6", "italy_like", "random_sc") with its parameters.
  std::string network_path;
  std::string scenario;
  int scenario_n = 10;
  double scenario_density = 0.3;

  ControlMode mode = ControlMode::uncontrolled;
  int p = 1;
  std::optional<double> period;

  // alpha: an explicit vector wins; otherwise the scalar value or a uniform
  // draw from [alpha_lo, alpha_hi] is applied to the controlled set (all
  // nodes when controlled is empty and control_all is true).
  std::optional<std::vector<double>> alpha_vector;
  bool alpha_uniform = false;
  double alpha_lo = 1.0, alpha_hi = 1.0;
  double alpha_value = 1.0;
  std::vector<int> controlled;
  bool control_all = true;

  std::optional<std::vector<double>> g0_vector;
  std::optional<double> g0_value;

  // x0: an explicit vector, a scalar for every node, or a seeded draw that
  // infects num_seeds random nodes uniformly in [x0_lo, x0_hi].
  std::optional<std::vector<double>> x0_vector;
  std::optional<double> x0_value;
  int x0_num_seeds = 0;
  double x0_lo = 0.2, x0_hi = 0.7;

  double horizon = 100.0;
  double step = 0.01;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::vector<std::string> checks;  // empty means mode-dependent defaults

  static RunManifest from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
  static RunManifest load(const std::string& path);
  void save(const std::string& path) const;

  void validate() const;
};

EpidemicNetwork resolve_network(const RunManifest& m);
ControlConfig resolve_control(const RunManifest& m, const EpidemicNetwork& net);
Eigen::VectorXd resolve_x0(const RunManifest& m, const EpidemicNetwork& net);
/// The checks to run: the explicit list, or mode-dependent defaults.
std::vector<std::string> resolve_checks(const RunManifest& m);

}  // namespace episis
