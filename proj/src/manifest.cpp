#include "episis/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "episis/rng.hpp"
#include "episis/scenario.hpp"
#include "episis/trajectory_io.hpp"

namespace episis {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::vector<double> to_doubles(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) fail(where + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail("manifest must be a JSON object");
  RunManifest m;

  if (!j.contains("network")) fail("manifest is missing \"network\"");
  const auto& net = j.at("network");
  if (net.contains("path")) {
    m.network_path = net.at("path").get<std::string>();
  } else if (net.contains("scenario")) {
    m.scenario = net.at("scenario").get<std::string>();
    if (!is_builtin_scenario(m.scenario)) fail("unknown scenario: " + m.scenario);
    if (net.contains("n")) m.scenario_n = net.at("n").get<int>();
    if (net.contains("density")) m.scenario_density = net.at("density").get<double>();
  } else {
    fail("manifest \"network\" needs either \"path\" or \"scenario\"");
  }

  if (j.contains("control")) {
    const auto& c = j.at("control");
    m.mode = control_mode_from_string(c.value("mode", std::string("uncontrolled")));
    m.p = c.value("p", 1);
    if (c.contains("period")) m.period = c.at("period").get<double>();
    if (c.contains("alpha")) {
      const auto& a = c.at("alpha");
      if (a.is_number()) {
        m.alpha_value = a.get<double>();
      } else if (a.contains("vector")) {
        m.alpha_vector = to_doubles(a.at("vector"), "control.alpha.vector");
      } else if (a.contains("uniform")) {
        const auto range = to_doubles(a.at("uniform"), "control.alpha.uniform");
        if (range.size() != 2) fail("control.alpha.uniform must be [lo, hi]");
        m.alpha_uniform = true;
        m.alpha_lo = range[0];
        m.alpha_hi = range[1];
      } else if (a.contains("value")) {
        m.alpha_value = a.at("value").get<double>();
      } else {
        fail("control.alpha must be a number or carry \"vector\", \"value\" or \"uniform\"");
      }
    }
    if (c.contains("controlled")) {
      const auto& sel = c.at("controlled");
      if (sel.is_string() && sel.get<std::string>() == "all") {
        m.control_all = true;
      } else if (sel.is_array()) {
        m.control_all = false;
        for (const auto& v : sel) m.controlled.push_back(v.get<int>());
      } else {
        fail("control.controlled must be \"all\" or an array of node indices");
      }
    }
    if (c.contains("g0")) {
      const auto& g = c.at("g0");
      if (g.is_number()) {
        m.g0_value = g.get<double>();
      } else if (g.contains("vector")) {
        m.g0_vector = to_doubles(g.at("vector"), "control.g0.vector");
      } else if (g.contains("value")) {
        m.g0_value = g.at("value").get<double>();
      } else {
        fail("control.g0 must be a number or carry \"vector\" or \"value\"");
      }
    }
  }

  if (j.contains("x0")) {
    const auto& x = j.at("x0");
    if (x.is_number()) {
      m.x0_value = x.get<double>();
    } else if (x.contains("vector")) {
      m.x0_vector = to_doubles(x.at("vector"), "x0.vector");
    } else if (x.contains("value")) {
      m.x0_value = x.at("value").get<double>();
    } else if (x.contains("random")) {
      const auto& r = x.at("random");
      m.x0_num_seeds = r.value("num_seeds", 1);
      if (r.contains("range")) {
        const auto range = to_doubles(r.at("range"), "x0.random.range");
        if (range.size() != 2) fail("x0.random.range must be [lo, hi]");
        m.x0_lo = range[0];
        m.x0_hi = range[1];
      }
    } else {
      fail("x0 must be a number or carry \"vector\", \"value\" or \"random\"");
    }
  }

  m.horizon = j.value("horizon", 100.0);
  m.step = j.value("step", 0.01);
  m.seed = j.value("seed", static_cast<std::uint64_t>(0));
  m.out_dir = j.value("out_dir", std::string());
  if (j.contains("checks")) {
    const auto& ch = j.at("checks");
    if (ch.is_string()) {
      if (ch.get<std::string>() != "auto") fail("checks must be \"auto\" or an array of names");
    } else if (ch.is_array()) {
      for (const auto& c : ch) m.checks.push_back(c.get<std::string>());
    } else {
      fail("checks must be \"auto\" or an array of names");
    }
  }
  m.validate();
  return m;
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json net;
  if (!network_path.empty()) {
    net["path"] = network_path;
  } else {
    net["scenario"] = scenario;
    if (scenario == "random_sc") {
      net["n"] = scenario_n;
      net["density"] = scenario_density;
    }
  }
  j["network"] = net;

  nlohmann::ordered_json c;
  c["mode"] = to_string(mode);
  c["p"] = p;
  if (period) c["period"] = *period;
  if (alpha_vector) {
    c["alpha"] = {{"vector", *alpha_vector}};
  } else if (alpha_uniform) {
    c["alpha"] = {{"uniform", {alpha_lo, alpha_hi}}};
  } else {
    c["alpha"] = {{"value", alpha_value}};
  }
  c["controlled"] = control_all ? nlohmann::ordered_json("all")
                                : nlohmann::ordered_json(controlled);
  if (g0_vector) c["g0"] = {{"vector", *g0_vector}};
  if (g0_value) c["g0"] = {{"value", *g0_value}};
  j["control"] = c;

  nlohmann::ordered_json x;
  if (x0_vector) {
    x["vector"] = *x0_vector;
  } else if (x0_value) {
    x["value"] = *x0_value;
  } else {
    x["random"] = {{"num_seeds", x0_num_seeds}, {"range", {x0_lo, x0_hi}}};
  }
  j["x0"] = x;

  j["horizon"] = horizon;
  j["step"] = step;
  j["seed"] = seed;
  if (!out_dir.empty()) j["out_dir"] = out_dir;
  if (checks.empty()) {
    j["checks"] = "auto";
  } else {
    j["checks"] = checks;
  }
  return j;
}

RunManifest RunManifest::load(const std::string& path) {
  return from_json(read_json_file(path));
}

void RunManifest::save(const std::string& path) const { write_json_file(to_json(), path); }

void RunManifest::validate() const {
  if (network_path.empty() == scenario.empty())
    fail("manifest needs exactly one of a network path or a scenario");
  if (!scenario.empty() && !is_builtin_scenario(scenario)) fail("unknown scenario: " + scenario);
  if (p < 1) fail("p must be a positive integer");
  if (period && !(*period > 0.0)) fail("period must be positive");
  if (!(horizon > 0.0)) fail("horizon must be positive");
  if (!(step > 0.0)) fail("step must be positive");
  if (alpha_uniform && !(alpha_lo <= alpha_hi)) fail("alpha uniform range is inverted");
  if (x0_num_seeds < 0) fail("x0.random.num_seeds must be nonnegative");
  if (!x0_vector && !x0_value && x0_num_seeds == 0)
    fail("x0 needs a vector, a value, or a random draw with num_seeds >= 1");
  if (!(x0_lo <= x0_hi)) fail("x0 random range is inverted");
  for (double v : {x0_lo, x0_hi})
    if (!(v >= 0.0 && v <= 1.0)) fail("x0 random range must lie inside [0, 1]");
}

EpidemicNetwork resolve_network(const RunManifest& m) {
  if (!m.network_path.empty()) return load_network(m.network_path);
  ScenarioSpec spec;
  spec.name = m.scenario;
  spec.seed = m.seed;
  spec.n = m.scenario_n;
  spec.density = m.scenario_density;
  return builtin_scenario(spec);
}

ControlConfig resolve_control(const RunManifest& m, const EpidemicNetwork& net) {
  const int n = net.size();
  ControlConfig cfg;
  cfg.mode = m.mode;
  cfg.p = m.p;
  cfg.period = m.period;

  if (m.mode != ControlMode::uncontrolled) {
    std::vector<int> targets;
    if (m.control_all) {
      for (int i = 0; i < n; ++i) targets.push_back(i);
    } else {
      std::set<int> seen;
      for (int idx : m.controlled) {
        if (idx < 0 || idx >= n) fail("controlled node out of range: " + std::to_string(idx));
        if (!seen.insert(idx).second) fail("controlled node listed twice: " + std::to_string(idx));
        targets.push_back(idx);
      }
      std::sort(targets.begin(), targets.end());
    }

    if (m.alpha_vector) {
      if (static_cast<int>(m.alpha_vector->size()) != n)
        fail("alpha vector size does not match the network");
      cfg.alpha = Eigen::Map<const Eigen::VectorXd>(m.alpha_vector->data(), n);
    } else {
      cfg.alpha = Eigen::VectorXd::Zero(n);
      Rng rng(mix_seed(m.seed, kStreamAlpha));
      for (int idx : targets)
        cfg.alpha(idx) = m.alpha_uniform ? rng.uniform(m.alpha_lo, m.alpha_hi) : m.alpha_value;
    }
  }

  if (m.g0_vector) {
    if (static_cast<int>(m.g0_vector->size()) != n)
      fail("g0 vector size does not match the network");
    cfg.g0 = Eigen::Map<const Eigen::VectorXd>(m.g0_vector->data(), n);
  } else if (m.g0_value) {
    cfg.g0 = Eigen::VectorXd::Constant(n, *m.g0_value);
  }
  cfg.validate(n);
  return cfg;
}

Eigen::VectorXd resolve_x0(const RunManifest& m, const EpidemicNetwork& net) {
  const int n = net.size();
  if (m.x0_vector) {
    if (static_cast<int>(m.x0_vector->size()) != n)
      fail("x0 vector size does not match the network");
    return Eigen::Map<const Eigen::VectorXd>(m.x0_vector->data(), n);
  }
  if (m.x0_value) {
    if (!(*m.x0_value >= 0.0 && *m.x0_value <= 1.0)) fail("x0 value must lie in [0, 1]");
    return Eigen::VectorXd::Constant(n, *m.x0_value);
  }
  if (m.x0_num_seeds > n) fail("x0.random.num_seeds exceeds the node count");
  Rng rng(mix_seed(m.seed, kStreamX0));
  // Partial Fisher-Yates: the first num_seeds entries are a uniform sample.
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = 0; i < m.x0_num_seeds; ++i)
    std::swap(perm[i], perm[rng.uniform_int(i, n - 1)]);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m.x0_num_seeds; ++i) x0(perm[i]) = rng.uniform(m.x0_lo, m.x0_hi);
  return x0;
}

std::vector<std::string> resolve_checks(const RunManifest& m) {
  if (!m.checks.empty()) return m.checks;
  switch (m.mode) {
    case ControlMode::uncontrolled:
      return {"finite_time_positivity"};
    case ControlMode::infection:
      return {"finite_time_positivity", "gain_upper_bound", "r_infinity"};
    case ControlMode::recovery:
      return {"finite_time_positivity", "escape_bound", "gain_lower_bound", "r_infinity"};
  }
  return {};
}

}  // namespace episis
