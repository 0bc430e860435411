#include "episis/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace episis {

void ControlConfig::validate(int n) const {
  if (p < 1) throw std::invalid_argument("exponent p must be a positive integer");
  if (period && !(*period > 0.0)) throw std::invalid_argument("update period must be positive");
  if (mode != ControlMode::uncontrolled) {
    if (alpha.size() != n)
      throw std::invalid_argument("alpha has size " + std::to_string(alpha.size()) +
                                  " but the network has " + std::to_string(n) + " nodes");
    for (int i = 0; i < n; ++i)
      if (!std::isfinite(alpha(i)) || alpha(i) < 0.0)
        throw std::invalid_argument("alpha[" + std::to_string(i) +
                                    "] must be nonnegative and finite");
  }
  if (g0.size() != 0) {
    if (g0.size() != n)
      throw std::invalid_argument("g0 has size " + std::to_string(g0.size()) +
                                  " but the network has " + std::to_string(n) + " nodes");
    for (int i = 0; i < n; ++i) {
      if (!std::isfinite(g0(i))) throw std::invalid_argument("g0 must be finite");
      if (mode == ControlMode::infection && !(g0(i) > 0.0 && g0(i) <= 1.0))
        throw std::invalid_argument("infection-mode gains start in (0, 1]; g0[" +
                                    std::to_string(i) + "] does not");
      if (mode == ControlMode::recovery && !(g0(i) >= 1.0))
        throw std::invalid_argument("recovery-mode gains start in [1, inf); g0[" +
                                    std::to_string(i) + "] does not");
    }
  }
}

bool ControlConfig::full_control(int n) const {
  if (mode == ControlMode::uncontrolled || alpha.size() != n) return false;
  return (alpha.array() > 0.0).all();
}

Eigen::VectorXd ControlConfig::initial_gains(int n) const {
  return g0.size() == 0 ? Eigen::VectorXd::Ones(n) : g0;
}

double phi(double x, double alpha, int p) {
  if (p < 1) throw std::invalid_argument("exponent p must be a positive integer");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
  double xp = 1.0;
  for (int k = 0; k < p; ++k) xp *= x;
  return alpha * xp;
}

Derivative rhs(const SystemState& state, const EpidemicNetwork& net, const ControlConfig& cfg) {
  const int n = net.size();
  if (state.x.size() != n) throw std::invalid_argument("state x has wrong size");
  Derivative out;
  const Eigen::VectorXd pressure = net.b * state.x;

  switch (cfg.mode) {
    case ControlMode::uncontrolled:
      out.dx = -net.d.cwiseProduct(state.x) +
               (Eigen::VectorXd::Ones(n) - state.x).cwiseProduct(pressure);
      out.dg = Eigen::VectorXd::Zero(n);
      return out;
    case ControlMode::infection: {
      out.dx = -net.d.cwiseProduct(state.x) +
               (Eigen::VectorXd::Ones(n) - state.x)
                   .cwiseProduct(state.frozen_g.cwiseProduct(pressure));
      out.dg.resize(n);
      for (int i = 0; i < n; ++i) out.dg(i) = -phi(state.x(i), cfg.alpha(i), cfg.p) * state.g(i);
      return out;
    }
    case ControlMode::recovery: {
      out.dx = -net.d.cwiseProduct(state.frozen_g).cwiseProduct(state.x) +
               (Eigen::VectorXd::Ones(n) - state.x).cwiseProduct(pressure);
      out.dg.resize(n);
      for (int i = 0; i < n; ++i) out.dg(i) = phi(state.x(i), cfg.alpha(i), cfg.p);
      return out;
    }
  }
  throw std::logic_error("unreachable control mode");
}

std::vector<double> gain_closed_form(const std::vector<double>& times,
                                     const std::vector<double>& x_node, double alpha, int p,
                                     double g0, ControlMode mode) {
  if (mode == ControlMode::uncontrolled)
    throw std::invalid_argument("gain_closed_form needs a controlled mode");
  if (times.empty() || times.size() != x_node.size())
    throw std::invalid_argument("times and samples must be nonempty and equally long");
  if (p < 1) throw std::invalid_argument("exponent p must be a positive integer");

  auto powp = [p](double x) {
    double v = 1.0;
    for (int k = 0; k < p; ++k) v *= x;
    return v;
  };

  std::vector<double> g(times.size());
  double integral = 0.0;
  g[0] = g0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double dt = times[k] - times[k - 1];
    if (!(dt >= 0.0)) throw std::invalid_argument("times must be nondecreasing");
    integral += 0.5 * dt * (powp(x_node[k - 1]) + powp(x_node[k]));
    g[k] = mode == ControlMode::infection ? g0 * std::exp(-alpha * integral)
                                          : g0 + alpha * integral;
  }
  return g;
}

}  // namespace episis
