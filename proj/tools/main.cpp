#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "episis/commands.hpp"
#include "episis/integrator.hpp"
#include "episis/scenario.hpp"
#include "episis/spectral.hpp"

namespace {

using namespace episis;

// Inline simulate flags assembled into a manifest, so a flag-driven run and a
// manifest-driven run go down the same path.
struct SimulateFlags {
  std::string manifest_path;
  std::string net;
  std::string mode = "uncontrolled";
  int p = 1;
  double alpha = 1.0;
  std::vector<std::string> controlled;
  std::optional<double> period;
  double horizon = 100.0;
  double step = 0.01;
  std::uint64_t seed = 0;
  std::string out_dir;
  double x0_value = 0.5;
  int x0_seeds = 0;
  std::vector<double> x0_range{0.2, 0.7};
  int scenario_n = 10;
  double scenario_density = 0.3;
};

RunManifest manifest_from_flags(const SimulateFlags& f) {
  RunManifest m;
  if (is_builtin_scenario(f.net)) {
    m.scenario = f.net;
    m.scenario_n = f.scenario_n;
    m.scenario_density = f.scenario_density;
  } else {
    m.network_path = f.net;
  }
  m.mode = control_mode_from_string(f.mode);
  m.p = f.p;
  m.period = f.period;
  m.alpha_value = f.alpha;
  if (!f.controlled.empty()) {
    m.control_all = false;
    const EpidemicNetwork net = resolve_network(m);
    for (const auto& token : f.controlled) {
      const int idx = net.index_of(token);
      if (idx < 0) throw std::invalid_argument("unknown node in --controlled: " + token);
      m.controlled.push_back(idx);
    }
  }
  if (f.x0_seeds > 0) {
    m.x0_num_seeds = f.x0_seeds;
    m.x0_lo = f.x0_range.at(0);
    m.x0_hi = f.x0_range.at(1);
  } else {
    m.x0_value = f.x0_value;
  }
  m.horizon = f.horizon;
  m.step = f.step;
  m.seed = f.seed;
  m.out_dir = f.out_dir;
  m.validate();
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and analysis toolkit for adaptive-gain SIS epidemic control"};
  app.require_subcommand(1);

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Integrate a run and write its artifacts");
  simulate->add_option("--manifest", sim.manifest_path, "Run manifest JSON (overrides flags)");
  simulate->add_option("--net", sim.net, "Network file or builtin scenario name");
  simulate->add_option("--mode", sim.mode, "uncontrolled | infection | recovery");
  simulate->add_option("--p", sim.p, "Gain responsiveness exponent");
  simulate->add_option("--alpha", sim.alpha, "Responsiveness for controlled nodes");
  simulate->add_option("--controlled", sim.controlled,
                       "Controlled nodes (labels or indices); default all")
      ->delimiter(',');
  double period_value = 0.0;
  auto* period_opt =
      simulate->add_option("--period", period_value, "Piecewise-constant gain update period");
  simulate->add_option("--horizon", sim.horizon, "Integration horizon");
  simulate->add_option("--step", sim.step, "Integration step");
  simulate->add_option("--seed", sim.seed, "Run seed");
  simulate->add_option("--out", sim.out_dir, "Run output directory");
  simulate->add_option("--x0", sim.x0_value, "Initial infection level for every node");
  simulate->add_option("--x0-seeds", sim.x0_seeds, "Seed this many random nodes instead");
  simulate->add_option("--x0-range", sim.x0_range, "Range for seeded initial levels")
      ->expected(2);
  simulate->add_option("--n", sim.scenario_n, "Node count for random_sc");
  simulate->add_option("--density", sim.scenario_density, "Edge density for random_sc");

  SelectArgs sel;
  auto* select = app.add_subcommand("select", "Pick a controlled set for partial control");
  select->add_option("--net", sel.net, "Network file or builtin scenario name")->required();
  auto* sel_seed = select->add_option("--seed", sel.seed, "Seed for randomized tie-breaks");
  select->add_flag("--explain", sel.explain, "Include the per-step removal trace");
  select->add_option("--out", sel.out_path, "Also write the result JSON here");
  select->add_option("--n", sel.scenario_n, "Node count for random_sc");
  select->add_option("--density", sel.scenario_density, "Edge density for random_sc");

  AnalyzeArgs ana;
  auto* analyze = app.add_subcommand("analyze", "Static network diagnostics");
  analyze->add_option("--net", ana.net, "Network file or builtin scenario name")->required();
  analyze->add_option("--seed", ana.seed, "Scenario seed");
  analyze->add_option("--n", ana.scenario_n, "Node count for random_sc");
  analyze->add_option("--density", ana.scenario_density, "Edge density for random_sc");

  std::string verify_dir;
  auto* verify = app.add_subcommand("verify", "Re-derive and check a finished run directory");
  verify->add_option("run_dir", verify_dir, "Run directory with manifest/summary/trajectory")
      ->required();

  ScenarioExportArgs exp;
  auto* scenario = app.add_subcommand("scenario", "Builtin scenario utilities");
  scenario->require_subcommand(1);
  auto* do_export = scenario->add_subcommand("export", "Write a builtin scenario to disk");
  do_export->add_option("--name", exp.name, "toy6 | italy_like | random_sc")->required();
  do_export->add_option("--seed", exp.seed, "Scenario seed");
  do_export->add_option("--n", exp.n, "Node count for random_sc");
  do_export->add_option("--density", exp.density, "Edge density for random_sc");
  do_export->add_option("--out", exp.out_path, "Output path")->required();
  do_export->add_option("--format", exp.format, "json | csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      RunManifest manifest;
      if (!sim.manifest_path.empty()) {
        manifest = RunManifest::load(sim.manifest_path);
      } else {
        if (sim.net.empty())
          throw std::invalid_argument("simulate needs --manifest or --net");
        if (period_opt->count() > 0) sim.period = period_value;
        manifest = manifest_from_flags(sim);
      }
      return cmd_simulate(manifest, std::cout, std::cerr);
    }
    if (select->parsed()) {
      sel.seeded_tie_break = sel_seed->count() > 0;
      return cmd_select(sel, std::cout, std::cerr);
    }
    if (analyze->parsed()) return cmd_analyze(ana, std::cout, std::cerr);
    if (verify->parsed()) return cmd_verify_run(verify_dir, std::cout, std::cerr);
    if (scenario->parsed()) return cmd_scenario_export(exp, std::cout, std::cerr);
  } catch (const IntegrationError& e) {
    std::cerr << "integration error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const NonConvergenceError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
