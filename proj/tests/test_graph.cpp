#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "episis/graph.hpp"
#include "episis/rng.hpp"
#include "episis/scenario.hpp"
#include "oracles.hpp"

using namespace episis;

namespace {

Eigen::MatrixXd random_adjacency(int n, double density, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rng.next_double() < density) m(j, i) = 1.0;
  return m;
}

std::set<std::vector<int>> canonical_set(std::vector<std::vector<int>> cycles) {
  std::set<std::vector<int>> out;
  for (auto c : cycles) {
    const auto smallest = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), smallest, c.end());
    out.insert(c);
  }
  return out;
}

}  // namespace

TEST_CASE("components of a two-block digraph") {
  // 0 <-> 1 and 2 <-> 3 with a one-way bridge 1 -> 2.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  m(1, 0) = m(0, 1) = 1.0;
  m(3, 2) = m(2, 3) = 1.0;
  m(2, 1) = 1.0;
  const auto comps = strongly_connected_components(m);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<int>{0, 1});
  CHECK(comps[1] == std::vector<int>{2, 3});
  CHECK_FALSE(is_strongly_connected(m));
}

TEST_CASE("component oracle agreement on random digraphs") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 2 + static_cast<int>(seed % 9);
    const Eigen::MatrixXd m = random_adjacency(n, 0.25, 1000 + seed);
    const auto ours = strongly_connected_components(m);
    const auto ref = oracle::closure_components(m);
    REQUIRE(ours == ref);
  }
}

TEST_CASE("complete digraph on three vertices has five simple cycles") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(3, 3);
  m.diagonal().setZero();
  const auto cycles = simple_cycles(Digraph::from_matrix(m, true));
  REQUIRE(cycles.size() == 5);
  // Canonical rotation: every cycle starts at its smallest vertex.
  for (const auto& c : cycles) CHECK(c.front() == *std::min_element(c.begin(), c.end()));
  const std::set<std::vector<int>> expected = {
      {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}, {0, 2, 1}};
  CHECK(canonical_set(cycles) == expected);
}

TEST_CASE("self-loops are not simple cycles") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = 5.0;
  m(1, 0) = 1.0;
  m(0, 1) = 1.0;
  const auto cycles = simple_cycles(Digraph::from_matrix(m, true));
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0] == std::vector<int>{0, 1});
}

TEST_CASE("cycle enumeration matches brute force on random graphs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 6);
    const Eigen::MatrixXd m = random_adjacency(n, 0.35, 2000 + seed);
    const auto ours = simple_cycles(Digraph::from_matrix(m, true));
    const auto ref = oracle::brute_cycles(m);
    REQUIRE(canonical_set(ours) == canonical_set(ref));
    REQUIRE(ours.size() == ref.size());
  }
}

TEST_CASE("enumeration order is deterministic") {
  const Eigen::MatrixXd m = random_adjacency(7, 0.4, 77);
  const auto a = simple_cycles(Digraph::from_matrix(m, true));
  const auto b = simple_cycles(Digraph::from_matrix(m, true));
  CHECK(a == b);
}

TEST_CASE("cycle limit guard") {
  // A complete digraph on 9 vertices already has far more than 100 cycles.
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(9, 9);
  m.diagonal().setZero();
  CHECK_THROWS_AS(simple_cycles(Digraph::from_matrix(m, true), 100), std::runtime_error);
}

TEST_CASE("cycle gain of a two-cycle") {
  // m = -D + B with d = (2, 2), edge weights 0.9 both ways, b_ii = 1.
  Eigen::MatrixXd m(2, 2);
  m << -1.0, 0.9, 0.9, -1.0;
  CHECK(cycle_gain(m, {0, 1}) == doctest::Approx(0.81).epsilon(1e-12));
}

TEST_CASE("cycle gain is rotation invariant") {
  Rng rng(99);
  Eigen::MatrixXd m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = i == j ? -rng.uniform(0.5, 2.0) : rng.uniform(0.1, 1.0);
  const std::vector<int> cycle = {0, 2, 1, 3};
  const double base = cycle_gain(m, cycle);
  for (std::size_t r = 1; r < cycle.size(); ++r) {
    std::vector<int> rotated = cycle;
    std::rotate(rotated.begin(), rotated.begin() + r, rotated.end());
    CHECK(cycle_gain(m, rotated) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("cycle gain rejects bad inputs") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 0.9, 0.9, -1.0;
  CHECK_THROWS_AS(cycle_gain(m, {0, 1}), std::invalid_argument);  // positive diagonal
  m(0, 0) = -1.0;
  m(0, 1) = 0.0;
  CHECK_THROWS_AS(cycle_gain(m, {0, 1}), std::invalid_argument);  // missing edge
  CHECK_THROWS_AS(cycle_gain(m, {0}), std::invalid_argument);     // too short
}

TEST_CASE("toy benchmark block carries exactly two cycles") {
  const EpidemicNetwork net = toy6_network();
  // Candidate block after removing the hub: nodes b..f (indices 1..5).
  const std::vector<int> nodes = {1, 2, 3, 4, 5};
  Eigen::VectorXd d(5);
  Eigen::MatrixXd b(5, 5);
  for (int a = 0; a < 5; ++a) {
    d(a) = net.d(nodes[a]);
    for (int c = 0; c < 5; ++c) b(a, c) = net.b(nodes[a], nodes[c]);
  }
  const CycleReport report = cycle_gains(d, b);
  REQUIRE(report.cycles.size() == 2);

  // Exact values: the three-cycle gives (9/10)^3 and the two-cycle (9/10)^2,
  // totalling 1539/1000.
  const oracle::Rational g3 = oracle::Rational{9, 10} * oracle::Rational{9, 10} *
                              oracle::Rational{9, 10};
  const oracle::Rational g2 = oracle::Rational{9, 10} * oracle::Rational{9, 10};
  const oracle::Rational total = g3 + g2;
  CHECK(g3 == oracle::Rational{729, 1000});
  CHECK(g2 == oracle::Rational{81, 100});
  CHECK(total == oracle::Rational{1539, 1000});

  std::vector<double> gains = report.gains;
  std::sort(gains.begin(), gains.end());
  CHECK(gains[0] == doctest::Approx(g3.value()).epsilon(1e-12));
  CHECK(gains[1] == doctest::Approx(g2.value()).epsilon(1e-12));
  CHECK(report.total_gain == doctest::Approx(total.value()).epsilon(1e-12));
  REQUIRE(report.max_index.has_value());
  CHECK(report.gains[*report.max_index] == doctest::Approx(g2.value()).epsilon(1e-12));
}

TEST_CASE("cycle gains rejects unstable diagonals") {
  Eigen::VectorXd d = Eigen::VectorXd::Constant(2, 1.0);
  Eigen::MatrixXd b(2, 2);
  b << 1.0, 0.5, 0.5, 0.2;  // d_0 <= b_00
  CHECK_THROWS_AS(cycle_gains(d, b), std::invalid_argument);
}

TEST_CASE("tie-break between equal-gain cycles") {
  // Two disjoint two-cycles with identical gains.
  Eigen::VectorXd d = Eigen::VectorXd::Constant(4, 2.0);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 4);
  b(1, 0) = b(0, 1) = 0.9;
  b(3, 2) = b(2, 3) = 0.9;
  const CycleReport plain = cycle_gains(d, b);
  REQUIRE(plain.max_index.has_value());
  CHECK(plain.cycles[*plain.max_index] == std::vector<int>{0, 1});  // lexicographic winner

  // A seeded tie-break still picks one of the tied cycles, deterministically.
  const CycleReport seeded_a = cycle_gains(d, b, 42);
  const CycleReport seeded_b = cycle_gains(d, b, 42);
  REQUIRE(seeded_a.max_index.has_value());
  CHECK(*seeded_a.max_index == *seeded_b.max_index);
  CHECK(seeded_a.gains[*seeded_a.max_index] == doctest::Approx(0.2025));
}
