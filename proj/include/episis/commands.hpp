#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "episis/manifest.hpp"
#include "episis/verify.hpp"

namespace episis {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitCheckFailed = 4;
inline constexpr int kExitInfeasible = 5;

/// Output directory precedence: manifest out_dir, then $EPISIS_OUT_DIR, then
/// the working directory.
std::string resolve_out_dir(const RunManifest& m);

/// Loads a network from a file path, or builds a builtin scenario when the
/// argument names one.
EpidemicNetwork network_from_arg(const std::string& arg, std::uint64_t seed, int n,
                                 double density);

nlohmann::ordered_json bound_report_json(const BoundReport& report);

/// Runs the manifest end to end: integrate, run the enabled checks, write
/// trajectory.csv / summary.json / manifest.json / plots under the run
/// directory.  Returns kExitOk or kExitCheckFailed.
int cmd_simulate(const RunManifest& manifest, std::ostream& out, std::ostream& err);

struct SelectArgs {
  std::string net;
  std::uint64_t seed = 0;
  int scenario_n = 10;
  double scenario_density = 0.3;
  bool seeded_tie_break = false;
  bool explain = false;
  std::string out_path;
};
int cmd_select(const SelectArgs& args, std::ostream& out, std::ostream& err);

struct AnalyzeArgs {
  std::string net;
  std::uint64_t seed = 0;
  int scenario_n = 10;
  double scenario_density = 0.3;
};
int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);

/// Re-opens a finished run directory, recomputes the derived quantities from
/// the stored trajectory and manifest, and re-evaluates the enabled checks.
int cmd_verify_run(const std::string& run_dir, std::ostream& out, std::ostream& err);

struct ScenarioExportArgs {
  std::string name;
  std::uint64_t seed = 0;
  int n = 10;
  double density = 0.3;
  std::string out_path;
  std::string format = "json";
};
int cmd_scenario_export(const ScenarioExportArgs& args, std::ostream& out, std::ostream& err);

}  // namespace episis
