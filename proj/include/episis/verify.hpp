#pragma once

#include <string>
#include <vector>

#include "episis/integrator.hpp"

namespace episis {

struct BoundEntry {
  int node = 0;
  double bound = 0.0;
  double observed = 0.0;
  bool satisfied = false;
  double margin = 0.0;  // slack in the direction of the inequality
};

struct BoundReport {
  std::string check;
  bool passed = false;
  bool applicable = true;  // false when the run's preconditions fail
  std::string note;
  std::vector<BoundEntry> entries;
};

inline constexpr double kBoundTol = 1e-6;

/// Limiting gains of an extinct full infection-control run obey
/// g_i(inf) <= g_i(0) * exp(-alpha_i x_i(0)^p / (p d_i)).
BoundReport check_gain_upper_bound(const Trajectory& traj, const ControlConfig& cfg,
                                   const EpidemicNetwork& net);

/// Limiting gains of a recovery-control run obey
/// g_i(inf) >= sqrt(alpha_i x_i(0)^p / (d_i p)).
BoundReport check_gain_lower_bound(const Trajectory& traj, const ControlConfig& cfg,
                                   const EpidemicNetwork& net);

/// The reproduction number at the limiting gains of an extinct run sits at or
/// below one (strictly below when p = 1).
BoundReport check_r_infinity(const Trajectory& traj, const ControlConfig& cfg,
                             const EpidemicNetwork& net);

/// Recovery-mode gains never outrun their linear envelope g_i(0) + alpha_i t.
BoundReport check_escape_bound(const Trajectory& traj, const ControlConfig& cfg);

/// On a strongly connected network seeded anywhere, every node is strictly
/// positive at every recorded time before extinction detection.
bool check_finite_time_positivity(const Trajectory& traj);
BoundReport finite_time_positivity_report(const Trajectory& traj, const EpidemicNetwork& net);

/// Least-squares slope of ln ||x(t)||_inf over the last decade of the run
/// (t in [t_end / 10, t_end]); measures the asymptotic decay rate.
double log_decay_slope(const Trajectory& traj);

}  // namespace episis
