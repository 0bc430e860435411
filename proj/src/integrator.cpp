#include "episis/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "episis/spectral.hpp"

namespace episis {

std::string to_string(Terminal t) {
  switch (t) {
    case Terminal::extinct: return "extinct";
    case Terminal::horizon: return "horizon";
    case Terminal::endemic_steady: return "endemic_steady";
  }
  return "horizon";
}

namespace {

void clamp_state(Eigen::VectorXd& x, Eigen::VectorXd& g, ControlMode mode, double& max_clamp) {
  double worst = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    if (x(i) < 0.0) {
      worst = std::max(worst, -x(i));
      x(i) = 0.0;
    } else if (x(i) > 1.0) {
      worst = std::max(worst, x(i) - 1.0);
      x(i) = 1.0;
    }
  }
  if (mode == ControlMode::infection) {
    for (int i = 0; i < g.size(); ++i) {
      if (g(i) > 1.0) {
        worst = std::max(worst, g(i) - 1.0);
        g(i) = 1.0;
      } else if (g(i) < 0.0) {
        worst = std::max(worst, -g(i));
        g(i) = 0.0;
      }
    }
  } else if (mode == ControlMode::recovery) {
    for (int i = 0; i < g.size(); ++i) {
      if (g(i) < 1.0) {
        worst = std::max(worst, 1.0 - g(i));
        g(i) = 1.0;
      }
    }
  }
  max_clamp = std::max(max_clamp, worst);
}

}  // namespace

Trajectory integrate(const EpidemicNetwork& net, const ControlConfig& cfg,
                     const Eigen::VectorXd& x0, const IntegrateOptions& opts) {
  const int n = net.size();
  cfg.validate(n);
  if (x0.size() != n) throw std::invalid_argument("x0 size does not match the network");
  for (int i = 0; i < n; ++i)
    if (!(x0(i) >= 0.0 && x0(i) <= 1.0))
      throw std::invalid_argument("x0[" + std::to_string(i) + "] must lie in [0, 1]");
  if (!(opts.step > 0.0) || !(opts.horizon > 0.0))
    throw std::invalid_argument("horizon and step must be positive");

  const long long total_steps =
      std::max(1ll, static_cast<long long>(std::ceil(opts.horizon / opts.step - 1e-12)));
  const long long row_cap = std::max(1ll, static_cast<long long>(opts.max_samples) - 1);
  const long long stride = (total_steps + row_cap - 1) / row_cap;

  // Log-spaced step indices for reproduction number sampling, always
  // including t = 0 and the final step.
  std::set<long long> r_steps;
  if (opts.record_reproduction && opts.r_samples > 0) {
    r_steps.insert(0);
    r_steps.insert(total_steps);
    const int extra = std::max(0, opts.r_samples - 2);
    for (int k = 0; k < extra; ++k) {
      const double frac = static_cast<double>(k + 1) / (extra + 1);
      const double t = opts.step * std::pow(opts.horizon / opts.step, frac);
      long long idx = std::llround(t / opts.step);
      idx = std::clamp(idx, 1ll, total_steps);
      r_steps.insert(idx);
    }
  }

  SystemState s;
  s.t = 0.0;
  s.x = x0;
  s.g = cfg.initial_gains(n);
  s.frozen_g = s.g;

  Trajectory traj;
  traj.step = opts.step;
  traj.horizon = opts.horizon;
  traj.r0 = reproduction_number(net, Eigen::VectorXd::Ones(n), ControlMode::uncontrolled);

  std::vector<Eigen::VectorXd> xs, gs;
  auto record = [&](const SystemState& st) {
    traj.times.push_back(st.t);
    xs.push_back(st.x);
    gs.push_back(st.g);
  };
  auto record_r = [&](const SystemState& st) {
    if (!opts.record_reproduction) return;
    traj.r_times.push_back(st.t);
    traj.r_values.push_back(cfg.mode == ControlMode::uncontrolled
                                ? traj.r0
                                : reproduction_number(net, st.g.cwiseMax(1e-300), cfg.mode));
  };

  record(s);
  if (r_steps.count(0)) record_r(s);

  long long last_period = 0;
  int extinct_run = 0;
  bool extinct = false;

  auto eval = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& g,
                  const Eigen::VectorXd& frozen) {
    SystemState tmp;
    tmp.x = x;
    tmp.g = g;
    tmp.frozen_g = frozen;
    return rhs(tmp, net, cfg);
  };

  long long step_idx = 0;
  for (; step_idx < total_steps; ++step_idx) {
    // Keep t as a function of the step index so period boundaries stay sharp.
    const double t1 = std::min(opts.horizon, static_cast<double>(step_idx + 1) * opts.step);
    const double h = t1 - s.t;
    if (cfg.period) {
      const long long k = static_cast<long long>(std::floor(s.t / *cfg.period + 1e-9));
      if (k > last_period || step_idx == 0) {
        s.frozen_g = s.g;
        last_period = k;
      }
    } else {
      s.frozen_g = s.g;
    }

    // Under periodic updates the applied gain is genuinely constant within
    // the step; continuously updated runs must couple each stage to its own
    // gain or the scheme drops to first order.
    auto stage = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& g) {
      return eval(x, g, cfg.period ? s.frozen_g : g);
    };
    Derivative k1 = stage(s.x, s.g);
    Derivative k2 = stage(s.x + 0.5 * h * k1.dx, s.g + 0.5 * h * k1.dg);
    Derivative k3 = stage(s.x + 0.5 * h * k2.dx, s.g + 0.5 * h * k2.dg);
    Derivative k4 = stage(s.x + h * k3.dx, s.g + h * k3.dg);

    s.x += (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    s.g += (h / 6.0) * (k1.dg + 2.0 * k2.dg + 2.0 * k3.dg + k4.dg);
    s.t = t1;

    if (!s.x.allFinite() || !s.g.allFinite())
      throw IntegrationError("state became non-finite at t = " + std::to_string(s.t));
    clamp_state(s.x, s.g, cfg.mode, traj.max_clamp);
    if (traj.max_clamp > opts.clamp_tol)
      throw IntegrationError("state left the model domain by " +
                             std::to_string(traj.max_clamp) + " at t = " + std::to_string(s.t) +
                             "; reduce the step size");

    const long long done = step_idx + 1;
    const bool sample_due = done % stride == 0 || done == total_steps;
    if (r_steps.count(done)) record_r(s);

    if (s.x.cwiseAbs().maxCoeff() < opts.extinction_eps) {
      if (++extinct_run >= opts.extinction_window) extinct = true;
    } else {
      extinct_run = 0;
    }

    if (sample_due || extinct) record(s);
    if (extinct) {
      traj.extinction_time = s.t;
      break;
    }
  }

  traj.terminal = Terminal::horizon;
  if (extinct) {
    traj.terminal = Terminal::extinct;
  } else {
    s.frozen_g = cfg.period ? s.frozen_g : s.g;
    const Derivative end = eval(s.x, s.g, s.frozen_g);
    if (end.dx.cwiseAbs().maxCoeff() < opts.steady_eps && s.x.cwiseAbs().maxCoeff() > 1e-6)
      traj.terminal = Terminal::endemic_steady;
  }

  const int rows = static_cast<int>(traj.times.size());
  traj.x.resize(rows, n);
  traj.g.resize(rows, n);
  for (int r = 0; r < rows; ++r) {
    traj.x.row(r) = xs[r];
    traj.g.row(r) = gs[r];
  }
  traj.final_gains = gs.back();
  traj.peak_avg_infection = 0.0;
  for (int r = 0; r < rows; ++r)
    traj.peak_avg_infection = std::max(traj.peak_avg_infection, traj.x.row(r).mean());
  return traj;
}

Trajectory integrate(const EpidemicNetwork& net, const ControlConfig& cfg,
                     const Eigen::VectorXd& x0, double horizon, double step) {
  IntegrateOptions opts;
  opts.horizon = horizon;
  opts.step = step;
  return integrate(net, cfg, x0, opts);
}

LimitReport detect_limits(const Trajectory& traj, double eps_conv) {
  if (traj.samples() == 0) throw std::invalid_argument("empty trajectory");
  const int rows = traj.samples();
  const int window = std::max(2, static_cast<int>(std::ceil(0.05 * rows)));
  const int start = std::max(0, rows - window);

  LimitReport report;
  const int n = traj.nodes();
  report.x_limit = Eigen::VectorXd::Zero(n);
  report.g_limit = Eigen::VectorXd::Zero(n);
  for (int r = start; r < rows; ++r) {
    report.x_limit += traj.x.row(r).transpose();
    report.g_limit += traj.g.row(r).transpose();
  }
  const double count = rows - start;
  report.x_limit /= count;
  report.g_limit /= count;

  double drift = 0.0;
  for (int c = 0; c < n; ++c) {
    const auto xw = traj.x.col(c).segment(start, rows - start);
    const auto gw = traj.g.col(c).segment(start, rows - start);
    drift = std::max(drift, xw.maxCoeff() - xw.minCoeff());
    drift = std::max(drift, gw.maxCoeff() - gw.minCoeff());
  }
  report.max_drift = drift;
  report.converged = drift < eps_conv;
  return report;
}

}  // namespace episis
