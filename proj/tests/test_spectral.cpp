#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "episis/graph.hpp"
#include "episis/rng.hpp"
#include "episis/scenario.hpp"
#include "episis/spectral.hpp"
#include "oracles.hpp"

using namespace episis;

namespace {

Eigen::MatrixXd random_nonnegative(int n, double density, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rng.next_double() < density) m(i, j) = rng.uniform(0.1, 3.0);
  return m;
}

}  // namespace

TEST_CASE("spectral radius of a known 2x2") {
  Eigen::MatrixXd m(2, 2);
  m << 0.0, 2.0, 0.5, 0.0;  // eigenvalues +-1
  const SpectralResult r = spectral_radius(m);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(r.right_vector.has_value());
  CHECK((*r.right_vector).minCoeff() > 0.0);
  CHECK((m * *r.right_vector - r.value * *r.right_vector).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("residual invariant on irreducible matrices") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    Eigen::MatrixXd m = random_nonnegative(n, 0.6, 3000 + seed);
    // Force irreducibility with a cycle.
    for (int i = 0; i < n; ++i) m((i + 1) % n, i) = std::max(m((i + 1) % n, i), 0.2);
    const SpectralResult r = spectral_radius(m);
    REQUIRE(r.right_vector.has_value());
    const Eigen::VectorXd& v = *r.right_vector;
    CHECK((m * v - r.value * v).cwiseAbs().maxCoeff() <= kPowerTol * v.cwiseAbs().maxCoeff());
    CHECK(v.minCoeff() > 0.0);
    CHECK(r.value == doctest::Approx(oracle::dense_radius(m)).epsilon(1e-8));
  }
}

TEST_CASE("reducible matrices agree with the dense solver") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 3 + static_cast<int>(seed % 8);
    const Eigen::MatrixXd m = random_nonnegative(n, 0.25, 4000 + seed);
    const SpectralResult r = spectral_radius(m);
    CHECK(r.value == doctest::Approx(oracle::dense_radius(m)).epsilon(1e-8));
    if (strongly_connected_components(m).size() > 1) CHECK_FALSE(r.right_vector.has_value());
  }
}

TEST_CASE("nilpotent and diagonal corner cases") {
  Eigen::MatrixXd nil = Eigen::MatrixXd::Zero(3, 3);
  nil(1, 0) = 1.0;
  nil(2, 1) = 1.0;  // strictly lower triangular, all eigenvalues zero
  CHECK(spectral_radius(nil).value == doctest::Approx(0.0));

  Eigen::MatrixXd diag = Eigen::Vector3d(0.3, 2.5, 1.1).asDiagonal();
  CHECK(spectral_radius(diag).value == doctest::Approx(2.5));

  Eigen::MatrixXd one(1, 1);
  one << 7.0;
  const SpectralResult r = spectral_radius(one);
  CHECK(r.value == doctest::Approx(7.0));
  CHECK(r.right_vector.has_value());
}

TEST_CASE("negative entries are rejected") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, -0.1, 0.0, 1.0;
  CHECK_THROWS_AS(spectral_radius(m), std::invalid_argument);
}

TEST_CASE("spectral abscissa of Metzler matrices") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    Eigen::MatrixXd m = random_nonnegative(n, 0.5, 5000 + seed);
    Rng rng(6000 + seed);
    for (int i = 0; i < n; ++i) m(i, i) = rng.uniform(-3.0, 1.0);
    CHECK(spectral_abscissa(m).value == doctest::Approx(oracle::dense_abscissa(m)).epsilon(1e-8));
  }

  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, -0.5, 0.1, 1.0;
  CHECK_THROWS_AS(spectral_abscissa(bad), std::invalid_argument);
}

TEST_CASE("hurwitz test matches the dense solver") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 6);
    Eigen::MatrixXd m = random_nonnegative(n, 0.4, 7000 + seed);
    Rng rng(7500 + seed);
    for (int i = 0; i < n; ++i) m(i, i) = rng.uniform(-4.0, -0.5);
    const double s = oracle::dense_abscissa(m);
    if (std::abs(s) < 1e-6) continue;  // skip knife-edge cases
    CHECK(is_hurwitz(m) == (s < 0.0));
  }
}

TEST_CASE("M-matrix classification") {
  Eigen::MatrixXd singular(2, 2);
  singular << 1.0, -1.0, -1.0, 1.0;
  CHECK(classify_m_matrix(singular) == MMatrixClass::singular_m);

  Eigen::MatrixXd nonsingular(2, 2);
  nonsingular << 2.0, -1.0, -1.0, 2.0;
  CHECK(classify_m_matrix(nonsingular) == MMatrixClass::nonsingular_m);

  Eigen::MatrixXd not_m(2, 2);
  not_m << 0.5, -1.0, -1.0, 0.5;
  CHECK(classify_m_matrix(not_m) == MMatrixClass::not_m);

  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 0.5, -1.0, 1.0;
  CHECK_THROWS_AS(classify_m_matrix(bad), std::invalid_argument);

  // The toy benchmark without its hub: D - B over nodes b..f is not an
  // M-matrix (the block still carries a supercritical cycle structure).
  const EpidemicNetwork net = toy6_network();
  Eigen::MatrixXd a(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) a(i, j) = (i == j ? net.d(i + 1) : 0.0) - net.b(i + 1, j + 1);
  CHECK(classify_m_matrix(a) == MMatrixClass::not_m);
}

TEST_CASE("basic reproduction number of the toy benchmark") {
  const EpidemicNetwork net = toy6_network();
  const double r0 = reproduction_number(net, Eigen::VectorXd::Ones(6), ControlMode::uncontrolled);
  Eigen::MatrixXd m = net.b;
  for (int i = 0; i < 6; ++i) m.row(i) /= net.d(i);
  CHECK(r0 == doctest::Approx(oracle::dense_radius(m)).epsilon(1e-10));
  CHECK(r0 > 1.0);
}

TEST_CASE("reproduction number scales with uniform infection gains") {
  const EpidemicNetwork net = toy6_network();
  const double r0 = reproduction_number(net, Eigen::VectorXd::Ones(6), ControlMode::uncontrolled);
  const Eigen::VectorXd half = Eigen::VectorXd::Constant(6, 0.5);
  CHECK(reproduction_number(net, half, ControlMode::infection) ==
        doctest::Approx(0.5 * r0).epsilon(1e-9));
  // Doubling recovery has the same effect as halving transmission.
  const Eigen::VectorXd two = Eigen::VectorXd::Constant(6, 2.0);
  CHECK(reproduction_number(net, two, ControlMode::recovery) ==
        doctest::Approx(0.5 * r0).epsilon(1e-9));
  CHECK_THROWS_AS(
      reproduction_number(net, Eigen::VectorXd::Zero(6), ControlMode::infection),
      std::invalid_argument);
}

TEST_CASE("power iteration copes with near-periodic structure") {
  // A long cycle plus one chord; unshifted power iteration would stall on the
  // complex eigenvalue ring.
  const int n = 8;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m((i + 1) % n, i) = 1.0;
  m(0, 4) = 0.3;
  const SpectralResult r = spectral_radius(m);
  CHECK(r.value == doctest::Approx(oracle::dense_radius(m)).epsilon(1e-8));
  CHECK(r.iterations < kPowerMaxIter);
}
