#include "episis/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include "episis/graph.hpp"
#include "episis/plot.hpp"
#include "episis/scenario.hpp"
#include "episis/selection.hpp"
#include "episis/spectral.hpp"
#include "episis/trajectory_io.hpp"

namespace episis {

namespace fs = std::filesystem;

std::string resolve_out_dir(const RunManifest& m) {
  if (!m.out_dir.empty()) return m.out_dir;
  if (const char* env = std::getenv("EPISIS_OUT_DIR"); env && *env) return env;
  return ".";
}

EpidemicNetwork network_from_arg(const std::string& arg, std::uint64_t seed, int n,
                                 double density) {
  if (is_builtin_scenario(arg)) {
    ScenarioSpec spec;
    spec.name = arg;
    spec.seed = seed;
    spec.n = n;
    spec.density = density;
    return builtin_scenario(spec);
  }
  return load_network(arg);
}

nlohmann::ordered_json bound_report_json(const BoundReport& report) {
  nlohmann::ordered_json j;
  j["check"] = report.check;
  j["passed"] = report.passed;
  j["applicable"] = report.applicable;
  if (!report.note.empty()) j["note"] = report.note;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    nlohmann::ordered_json ej;
    ej["node"] = e.node;
    ej["bound"] = e.bound;
    ej["observed"] = e.observed;
    ej["satisfied"] = e.satisfied;
    ej["margin"] = e.margin;
    entries.push_back(ej);
  }
  j["entries"] = entries;
  return j;
}

namespace {

BoundReport run_check(const std::string& name, const Trajectory& traj, const ControlConfig& cfg,
                      const EpidemicNetwork& net) {
  if (name == "finite_time_positivity") return finite_time_positivity_report(traj, net);
  if (name == "gain_upper_bound") return check_gain_upper_bound(traj, cfg, net);
  if (name == "gain_lower_bound") return check_gain_lower_bound(traj, cfg, net);
  if (name == "r_infinity") return check_r_infinity(traj, cfg, net);
  if (name == "escape_bound") return check_escape_bound(traj, cfg);
  throw std::invalid_argument("unknown check: " + name);
}

double compute_r_infinity(const Trajectory& traj, const ControlConfig& cfg,
                          const EpidemicNetwork& net) {
  if (cfg.mode == ControlMode::uncontrolled) return traj.r0;
  const LimitReport lim = detect_limits(traj);
  return reproduction_number(net, lim.g_limit.cwiseMax(1e-300), cfg.mode);
}

void write_plots(const fs::path& dir, const Trajectory& traj, const EpidemicNetwork& net) {
  fs::create_directories(dir);
  const int n = net.size();
  const int shown = std::min(n, 15);

  {
    PlotSeries avg;
    avg.label = "average infection";
    for (int k = 0; k < traj.samples(); ++k) {
      avg.t.push_back(traj.times[k]);
      avg.y.push_back(traj.x.row(k).mean());
    }
    PlotOptions opts;
    opts.title = "Average infection level";
    opts.y_label = "avg x(t)";
    opts.log_x = true;
    write_svg_chart((dir / "avg_infection.svg").string(), {avg}, opts);
  }
  {
    std::vector<PlotSeries> series(shown);
    for (int i = 0; i < shown; ++i) {
      series[i].label = "x " + net.label_of(i);
      for (int k = 0; k < traj.samples(); ++k) {
        series[i].t.push_back(traj.times[k]);
        series[i].y.push_back(traj.x(k, i));
      }
    }
    PlotOptions opts;
    opts.title = "Node infection levels";
    opts.y_label = "x_i(t)";
    opts.log_x = true;
    write_svg_chart((dir / "node_infection.svg").string(), series, opts);
  }
  {
    std::vector<PlotSeries> series(shown);
    for (int i = 0; i < shown; ++i) {
      series[i].label = "g " + net.label_of(i);
      for (int k = 0; k < traj.samples(); ++k) {
        series[i].t.push_back(traj.times[k]);
        series[i].y.push_back(traj.g(k, i));
      }
    }
    PlotOptions opts;
    opts.title = "Control gains";
    opts.y_label = "g_i(t)";
    opts.log_x = true;
    write_svg_chart((dir / "gains.svg").string(), series, opts);
  }
  if (!traj.r_times.empty()) {
    PlotSeries rt;
    rt.label = "R_t";
    rt.t = traj.r_times;
    rt.y = traj.r_values;
    PlotSeries one;
    one.label = "R = 1";
    one.t = {std::max(traj.r_times.front(), 1e-12), traj.r_times.back()};
    one.y = {1.0, 1.0};
    PlotOptions opts;
    opts.title = "Reproduction number";
    opts.y_label = "R_t";
    opts.log_x = true;
    write_svg_chart((dir / "reproduction.svg").string(), {rt, one}, opts);
  }
}

nlohmann::ordered_json build_summary(const Trajectory& traj, const RunManifest& manifest,
                                     double r_infinity,
                                     const std::vector<BoundReport>& reports) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["terminal"] = to_string(traj.terminal);
  j["peak_avg_infection"] = traj.peak_avg_infection;
  j["r0"] = traj.r0;
  j["r_infinity"] = r_infinity;
  j["final_gains"] =
      std::vector<double>(traj.final_gains.data(), traj.final_gains.data() + traj.final_gains.size());
  if (std::isfinite(traj.extinction_time)) {
    j["extinction_time"] = traj.extinction_time;
  } else {
    j["extinction_time"] = nullptr;
  }
  j["max_clamp"] = traj.max_clamp;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& r : reports) checks.push_back(bound_report_json(r));
  j["bound_checks"] = checks;
  nlohmann::ordered_json rt;
  rt["times"] = traj.r_times;
  rt["values"] = traj.r_values;
  j["r_t"] = rt;
  j["manifest"] = manifest.to_json();
  return j;
}

}  // namespace

int cmd_simulate(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  manifest.validate();
  const EpidemicNetwork net = resolve_network(manifest);
  const ControlConfig cfg = resolve_control(manifest, net);
  const Eigen::VectorXd x0 = resolve_x0(manifest, net);

  IntegrateOptions opts;
  opts.horizon = manifest.horizon;
  opts.step = manifest.step;
  const Trajectory traj = integrate(net, cfg, x0, opts);
  const double r_inf = compute_r_infinity(traj, cfg, net);

  std::vector<BoundReport> reports;
  bool all_passed = true;
  for (const auto& name : resolve_checks(manifest)) {
    reports.push_back(run_check(name, traj, cfg, net));
    all_passed = all_passed && reports.back().passed;
  }

  const fs::path dir = resolve_out_dir(manifest);
  fs::create_directories(dir);
  write_trajectory_csv(traj, (dir / "trajectory.csv").string());
  write_json_file(build_summary(traj, manifest, r_inf, reports), (dir / "summary.json").string());
  manifest.save((dir / "manifest.json").string());
  write_plots(dir / "plots", traj, net);

  out << "terminal=" << to_string(traj.terminal) << " t_end=" << format_double(traj.times.back())
      << " peak_avg=" << format_double(traj.peak_avg_infection)
      << " r0=" << format_double(traj.r0) << " r_infinity=" << format_double(r_inf) << " -> "
      << dir.string() << "\n";

  for (const auto& r : reports) {
    if (!r.passed) err << "check failed: " << r.check << "\n";
  }
  return all_passed ? kExitOk : kExitCheckFailed;
}

int cmd_select(const SelectArgs& args, std::ostream& out, std::ostream& err) {
  const EpidemicNetwork net =
      network_from_arg(args.net, args.seed, args.scenario_n, args.scenario_density);
  TieBreak tb;
  tb.seeded = args.seeded_tie_break;
  tb.seed = args.seed;
  const SelectionResult result = select_control_nodes(net, tb);

  nlohmann::ordered_json j;
  j["feasible"] = result.feasible;
  auto labelize = [&](const std::vector<int>& idx) {
    std::vector<std::string> names;
    for (int i : idx) names.push_back(net.label_of(i));
    return names;
  };
  j["controlled"] = labelize(result.controlled);
  j["uncontrolled"] = labelize(result.uncontrolled);
  j["controlled_indices"] = result.controlled;
  j["uncontrolled_indices"] = result.uncontrolled;
  if (std::isfinite(result.certificate)) {
    j["certificate"] = result.certificate;
  } else {
    j["certificate"] = nullptr;
  }
  j["stable"] = result.feasible && result.certificate < -kHurwitzEps;

  if (args.explain) {
    auto trace = nlohmann::ordered_json::array();
    for (const auto& step : result.trace) {
      nlohmann::ordered_json sj;
      sj["component"] = step.component;
      sj["component_nodes"] = labelize(step.component_nodes);
      sj["broken_cycle"] = labelize(step.broken_cycle);
      sj["removed"] = net.label_of(step.removed);
      sj["total_gain_before"] = step.total_before;
      sj["total_gain_after"] = step.total_after;
      trace.push_back(sj);
    }
    j["trace"] = trace;
    const auto stage1 = selection_stage1(net);
    j["stage1_controlled"] = labelize(stage1);
  }

  if (!args.out_path.empty()) write_json_file(j, args.out_path);
  out << j.dump(2) << "\n";
  if (!result.feasible) {
    err << "no node satisfies d_i > b_ii; partial control is infeasible for this network\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream&) {
  const EpidemicNetwork net =
      network_from_arg(args.net, args.seed, args.scenario_n, args.scenario_density);
  const ValidationReport report = validate(net);

  Eigen::MatrixXd jac = net.b;
  jac.diagonal() -= net.d;
  const double abscissa = spectral_abscissa(jac).value;

  nlohmann::ordered_json j;
  j["n"] = net.size();
  j["strongly_connected"] = report.strongly_connected;
  j["r0"] = report.r0;
  j["r0_above_one"] = report.r0_above_one;
  j["jacobian_abscissa_at_zero"] = abscissa;
  j["m_matrix_class"] = to_string(classify_m_matrix(-jac));
  std::vector<std::string> stable_names;
  for (int i : report.self_stable_nodes) stable_names.push_back(net.label_of(i));
  j["self_stable_nodes"] = stable_names;
  j["partial_control_feasible"] = exists_partial_solution(net);
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify_run(const std::string& run_dir, std::ostream& out, std::ostream& err) {
  const fs::path dir(run_dir);
  const RunManifest manifest = RunManifest::load((dir / "manifest.json").string());
  const nlohmann::json summary = read_json_file((dir / "summary.json").string());
  Trajectory traj = read_trajectory_csv((dir / "trajectory.csv").string());

  // Network paths inside a manifest may be relative to where the run was
  // started; fall back to resolving against the run directory.
  EpidemicNetwork net = [&]() {
    if (!manifest.network_path.empty() && !fs::exists(manifest.network_path)) {
      RunManifest patched = manifest;
      patched.network_path = (dir / manifest.network_path).string();
      return resolve_network(patched);
    }
    return resolve_network(manifest);
  }();
  const ControlConfig cfg = resolve_control(manifest, net);

  traj.r0 = reproduction_number(net, Eigen::VectorXd::Ones(net.size()),
                                ControlMode::uncontrolled);
  traj.terminal = summary.value("terminal", std::string("horizon")) == "extinct"
                      ? Terminal::extinct
                      : (summary.value("terminal", std::string()) == "endemic_steady"
                             ? Terminal::endemic_steady
                             : Terminal::horizon);
  if (summary.contains("extinction_time") && summary["extinction_time"].is_number())
    traj.extinction_time = summary["extinction_time"].get<double>();

  int failures = 0;
  auto check_value = [&](const std::string& name, double stored, double recomputed, double tol) {
    const bool ok = std::abs(stored - recomputed) <= tol * std::max(1.0, std::abs(recomputed));
    if (ok) {
      out << "ok   " << name << " = " << format_double(recomputed) << "\n";
    } else {
      ++failures;
      err << "FAIL " << name << ": summary has " << format_double(stored) << ", recomputed "
          << format_double(recomputed) << "\n";
    }
  };

  check_value("r0", summary.value("r0", 0.0), traj.r0, 1e-9);
  check_value("peak_avg_infection", summary.value("peak_avg_infection", 0.0),
              traj.peak_avg_infection, 1e-12);

  const Eigen::VectorXd last_row = traj.g.row(traj.samples() - 1);
  bool gains_match = true;
  if (!summary.contains("final_gains") ||
      static_cast<int>(summary["final_gains"].size()) != net.size()) {
    gains_match = false;
  } else {
    for (int i = 0; i < net.size(); ++i)
      gains_match =
          gains_match && std::abs(summary["final_gains"][i].get<double>() - last_row(i)) <= 1e-12;
  }
  if (gains_match) {
    out << "ok   final_gains match the trajectory tail\n";
  } else {
    ++failures;
    err << "FAIL final_gains disagree with the stored trajectory\n";
  }

  const double r_inf_recomputed = compute_r_infinity(traj, cfg, net);
  if (summary.contains("r_infinity") && summary["r_infinity"].is_number())
    check_value("r_infinity", summary["r_infinity"].get<double>(), r_inf_recomputed, 1e-9);

  for (const auto& name : resolve_checks(manifest)) {
    BoundReport report = run_check(name, traj, cfg, net);
    if (report.passed) {
      out << "ok   check " << report.check << (report.applicable ? "" : " (not applicable)")
          << "\n";
    } else {
      ++failures;
      err << "FAIL check " << report.check << "\n";
    }
  }

  if (failures > 0) {
    err << failures << " verification failure(s) in " << run_dir << "\n";
    return kExitCheckFailed;
  }
  out << "run verified: " << run_dir << "\n";
  return kExitOk;
}

int cmd_scenario_export(const ScenarioExportArgs& args, std::ostream& out, std::ostream&) {
  ScenarioSpec spec;
  spec.name = args.name;
  spec.seed = args.seed;
  spec.n = args.n;
  spec.density = args.density;
  const EpidemicNetwork net = builtin_scenario(spec);
  const NetworkFormat format = [&]() {
    if (args.format == "json") return NetworkFormat::json;
    if (args.format == "csv") return NetworkFormat::edge_csv;
    throw std::invalid_argument("unknown export format: " + args.format);
  }();
  save_network(net, args.out_path, format);
  out << "wrote " << args.out_path;
  if (format == NetworkFormat::edge_csv) out << " and " << nodes_csv_path(args.out_path);
  out << "\n";
  return kExitOk;
}

}  // namespace episis
