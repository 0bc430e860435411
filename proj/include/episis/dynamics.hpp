#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "episis/mode.hpp"
#include "episis/network.hpp"

namespace episis {

/// Per-node control configuration.  alpha_i = 0 switches node i off (its gain
/// stays at its initial value), which is how partial control is expressed.
struct ControlConfig {
  ControlMode mode = ControlMode::uncontrolled;
  Eigen::VectorXd alpha;          // size n for controlled modes
  int p = 1;                      // positive integer exponent in phi
  std::optional<double> period;   // gains applied piecewise constant when set
  Eigen::VectorXd g0;             // empty means all ones

  void validate(int n) const;
  bool full_control(int n) const;
  Eigen::VectorXd initial_gains(int n) const;
};

/// Control responsiveness phi(x) = alpha * x^p.
double phi(double x, double alpha, int p);

struct SystemState {
  double t = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd g;
  /// Gains actually applied to the infection dynamics; equals g under
  /// continuous updates and the last period snapshot under periodic ones.
  Eigen::VectorXd frozen_g;
};

struct Derivative {
  Eigen::VectorXd dx;
  Eigen::VectorXd dg;
};

/// Vector field of the coupled infection/gain system.
///
///   uncontrolled:  dx_i = -d_i x_i + (1 - x_i) sum_j b_ij x_j,        dg = 0
///   infection:     dx_i = -d_i x_i + (1 - x_i) ge_i sum_j b_ij x_j,   dg_i = -phi_i(x_i) g_i
///   recovery:      dx_i = -ge_i d_i x_i + (1 - x_i) sum_j b_ij x_j,   dg_i = +phi_i(x_i)
///
/// where ge = state.frozen_g is the applied gain.
Derivative rhs(const SystemState& state, const EpidemicNetwork& net, const ControlConfig& cfg);

/// Closed-form gain along a known trajectory of one node, reconstructed by
/// trapezoidal quadrature of x_i(t)^p on the given grid:
///   infection:  g(t) = g(0) exp(-alpha * integral x^p)
///   recovery:   g(t) = g(0) + alpha * integral x^p
std::vector<double> gain_closed_form(const std::vector<double>& times,
                                     const std::vector<double>& x_node, double alpha, int p,
                                     double g0, ControlMode mode);

}  // namespace episis
