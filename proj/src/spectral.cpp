#include "episis/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "episis/graph.hpp"
#include "episis/network.hpp"

namespace episis {

namespace {

void require_square(const Eigen::MatrixXd& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument(std::string(who) + " needs a nonempty square matrix");
}

struct PowerOutcome {
  double value;
  Eigen::VectorXd vec;
  int iterations;
  double residual;
};

// Power iteration on a nonnegative primitive matrix (irreducible with a
// positive diagonal after shifting).  The iterate is kept at unit infinity
// norm; convergence is declared when ||P v - lambda v||_inf <= tol.
PowerOutcome power_iteration(const Eigen::MatrixXd& p, double tol, int max_iter) {
  const int n = static_cast<int>(p.rows());
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  v /= v.cwiseAbs().maxCoeff();
  double lambda = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= max_iter; ++iter) {
    Eigen::VectorXd w = p * v;
    lambda = w.cwiseAbs().maxCoeff();
    if (lambda == 0.0) {
      // Possible only for the all-zero block.
      return {0.0, Eigen::VectorXd::Constant(n, 1.0), iter, 0.0};
    }
    residual = (w - lambda * v).cwiseAbs().maxCoeff();
    v = w / lambda;
    if (residual <= tol) return {lambda, v, iter, residual};
  }
  throw NonConvergenceError("power iteration did not reach tolerance " + std::to_string(tol) +
                                " within " + std::to_string(max_iter) + " iterations",
                            residual);
}

}  // namespace

SpectralResult spectral_radius(const Eigen::MatrixXd& m, double tol, int max_iter) {
  require_square(m, "spectral_radius");
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(m(i, j) >= 0.0) || !std::isfinite(m(i, j)))
        throw std::invalid_argument("spectral_radius needs a nonnegative matrix; entry (" +
                                    std::to_string(i) + "," + std::to_string(j) + ") is " +
                                    std::to_string(m(i, j)));

  const auto comps = strongly_connected_components(Digraph::from_matrix(m));
  SpectralResult result;
  if (comps.size() == 1) {
    if (n == 1) {
      result.value = m(0, 0);
      result.right_vector = Eigen::VectorXd::Constant(1, 1.0);
      return result;
    }
    const double shift = 1.0 + m.diagonal().maxCoeff();
    Eigen::MatrixXd p = m;
    p.diagonal().array() += shift;
    auto out = power_iteration(p, tol, max_iter);
    result.value = out.value - shift;
    result.right_vector = std::move(out.vec);
    result.iterations = out.iterations;
    result.residual = out.residual;
    return result;
  }

  // Reducible: the spectrum is the union over diagonal blocks, so take the
  // maximum of per-block radii and skip the Perron vector.
  result.value = 0.0;
  for (const auto& comp : comps) {
    if (comp.size() == 1) {
      const int v = comp[0];
      result.value = std::max(result.value, m(v, v));
      continue;
    }
    const int k = static_cast<int>(comp.size());
    Eigen::MatrixXd block(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) block(a, b) = m(comp[a], comp[b]);
    const double shift = 1.0 + block.diagonal().maxCoeff();
    block.diagonal().array() += shift;
    auto out = power_iteration(block, tol, max_iter);
    result.value = std::max(result.value, out.value - shift);
    result.iterations += out.iterations;
    result.residual = std::max(result.residual, out.residual);
  }
  return result;
}

SpectralResult spectral_abscissa(const Eigen::MatrixXd& m, double tol, int max_iter) {
  require_square(m, "spectral_abscissa");
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !(m(i, j) >= 0.0))
        throw std::invalid_argument("spectral_abscissa needs a Metzler matrix; entry (" +
                                    std::to_string(i) + "," + std::to_string(j) +
                                    ") is negative");

  const double shift = 1.0 + m.diagonal().cwiseAbs().maxCoeff();
  Eigen::MatrixXd p = m;
  p.diagonal().array() += shift;
  SpectralResult r = spectral_radius(p, tol, max_iter);
  r.value -= shift;
  return r;
}

bool is_hurwitz(const Eigen::MatrixXd& m) {
  return spectral_abscissa(m).value < -kHurwitzEps;
}

MMatrixClass classify_m_matrix(const Eigen::MatrixXd& a) {
  require_square(a, "classify_m_matrix");
  const int n = static_cast<int>(a.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && a(i, j) > 0.0)
        throw std::invalid_argument(
            "classify_m_matrix needs nonpositive off-diagonal entries; entry (" +
            std::to_string(i) + "," + std::to_string(j) + ") is positive");

  const double sigma = spectral_abscissa(-a).value;
  if (sigma < -kHurwitzEps) return MMatrixClass::nonsingular_m;
  if (sigma <= kHurwitzEps) return MMatrixClass::singular_m;
  return MMatrixClass::not_m;
}

std::string to_string(MMatrixClass c) {
  switch (c) {
    case MMatrixClass::nonsingular_m: return "nonsingular_M";
    case MMatrixClass::singular_m: return "singular_M";
    case MMatrixClass::not_m: return "not_M";
  }
  return "not_M";
}

double reproduction_number(const EpidemicNetwork& net, const Eigen::VectorXd& gains,
                           ControlMode mode) {
  const int n = net.size();
  if (mode != ControlMode::uncontrolled) {
    if (gains.size() != n)
      throw std::invalid_argument("gain vector size does not match the network");
    for (int i = 0; i < n; ++i)
      if (!(gains(i) > 0.0))
        throw std::invalid_argument("reproduction_number needs positive gains; gain " +
                                    std::to_string(i) + " is not positive");
  }

  Eigen::MatrixXd m(n, n);
  switch (mode) {
    case ControlMode::uncontrolled:
      for (int i = 0; i < n; ++i) m.row(i) = net.b.row(i) / net.d(i);
      break;
    case ControlMode::infection:
      for (int i = 0; i < n; ++i) m.row(i) = gains(i) * net.b.row(i) / net.d(i);
      break;
    case ControlMode::recovery:
      for (int i = 0; i < n; ++i) m.row(i) = net.b.row(i) / (net.d(i) * gains(i));
      break;
  }
  return spectral_radius(m).value;
}

}  // namespace episis
