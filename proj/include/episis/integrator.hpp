#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

#include "episis/dynamics.hpp"

namespace episis {

enum class Terminal { extinct, horizon, endemic_steady };

std::string to_string(Terminal t);

struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd x;  // one row per recorded sample
  Eigen::MatrixXd g;
  std::vector<double> r_times;   // log-spaced reproduction number samples
  std::vector<double> r_values;
  double r0 = 0.0;
  double peak_avg_infection = 0.0;
  Terminal terminal = Terminal::horizon;
  Eigen::VectorXd final_gains;
  double extinction_time = std::numeric_limits<double>::quiet_NaN();
  double max_clamp = 0.0;  // largest per-step clamping correction seen
  double step = 0.0;
  double horizon = 0.0;

  int samples() const { return static_cast<int>(times.size()); }
  int nodes() const { return static_cast<int>(x.cols()); }
  double avg_infection(int k) const { return x.row(k).mean(); }
};

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegrateOptions {
  double horizon = 100.0;
  double step = 1e-2;
  int max_samples = 4000;        // stored trajectory rows (plus the final state)
  int r_samples = 200;           // log-spaced reproduction number samples
  double clamp_tol = 1e-9;       // clamping beyond this aborts the run
  double extinction_eps = 1e-8;  // ||x||_inf below this ...
  int extinction_window = 10;    // ... for this many consecutive steps ends the run
  double steady_eps = 1e-9;      // ||dx||_inf below this at the horizon reads as steady
  bool record_reproduction = true;
};

/// Classic fixed-step fourth-order Runge-Kutta on the coupled (x, g) system.
/// State is clamped back to the model domain after every step (x to [0,1],
/// gains to their mode's interval); corrections beyond clamp_tol raise
/// IntegrationError, as does any non-finite state.  Periodic gain updates
/// freeze the applied gain at the start of each period while g itself keeps
/// evolving continuously.
Trajectory integrate(const EpidemicNetwork& net, const ControlConfig& cfg,
                     const Eigen::VectorXd& x0, const IntegrateOptions& opts);
Trajectory integrate(const EpidemicNetwork& net, const ControlConfig& cfg,
                     const Eigen::VectorXd& x0, double horizon, double step = 1e-2);

struct LimitReport {
  Eigen::VectorXd x_limit;
  Eigen::VectorXd g_limit;
  bool converged = false;
  double max_drift = 0.0;
};

/// Tail-window limit estimate: averages the last 5% of samples and flags
/// convergence when no coordinate drifts more than eps_conv inside the
/// window.
LimitReport detect_limits(const Trajectory& traj, double eps_conv = 1e-6);

}  // namespace episis
