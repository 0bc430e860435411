#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>

#include "episis/mode.hpp"

namespace episis {

struct EpidemicNetwork;

inline constexpr double kHurwitzEps = 1e-9;
inline constexpr double kPowerTol = 1e-10;
inline constexpr int kPowerMaxIter = 100000;

struct SpectralResult {
  double value = 0.0;
  // Perron vector, scaled to unit infinity norm; present only when the input
  // matrix is irreducible.
  std::optional<Eigen::VectorXd> right_vector;
  int iterations = 0;
  double residual = 0.0;
};

/// Thrown when power iteration fails to reach the residual tolerance.
struct NonConvergenceError : std::runtime_error {
  double last_residual;
  NonConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), last_residual(residual) {}
};

/// Spectral radius of a nonnegative matrix via shifted power iteration.
/// Reducible matrices are decomposed into strongly connected blocks first and
/// the radius is the maximum over blocks; iterations are summed over blocks
/// and the residual reported is the worst block residual.
SpectralResult spectral_radius(const Eigen::MatrixXd& m, double tol = kPowerTol,
                               int max_iter = kPowerMaxIter);

/// Spectral abscissa (largest real part of an eigenvalue) of a Metzler
/// matrix, computed as rho(m + c I) - c with c = 1 + max_i |m_ii|.
SpectralResult spectral_abscissa(const Eigen::MatrixXd& m, double tol = kPowerTol,
                                 int max_iter = kPowerMaxIter);

/// True when the Metzler matrix has spectral abscissa below -kHurwitzEps.
bool is_hurwitz(const Eigen::MatrixXd& m);

enum class MMatrixClass { nonsingular_m, singular_m, not_m };

/// Classifies a matrix with nonpositive off-diagonal entries (a Z-matrix) by
/// the sign of the spectral abscissa of -a: negative means nonsingular
/// M-matrix, zero (within kHurwitzEps) singular, positive not an M-matrix.
MMatrixClass classify_m_matrix(const Eigen::MatrixXd& a);

std::string to_string(MMatrixClass c);

/// Reproduction number under the given gains: rho(D^-1 G B) for infection
/// control (gains scale transmission) and rho((D G)^-1 B) for recovery
/// control (gains scale recovery).  Uncontrolled mode ignores the gains and
/// returns the basic reproduction number rho(D^-1 B).
double reproduction_number(const EpidemicNetwork& net, const Eigen::VectorXd& gains,
                           ControlMode mode);

}  // namespace episis
