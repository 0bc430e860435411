#include "episis/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "episis/rng.hpp"

namespace episis {

EpidemicNetwork toy6_network() {
  const int n = 6;
  Eigen::VectorXd d = Eigen::VectorXd::Constant(n, 2.0);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  b.diagonal().setOnes();
  b(0, 0) = 4.0;
  // b(dst, src) = 0.9 for each directed contact edge src -> dst.
  const int edges[][2] = {{0, 1}, {1, 2}, {2, 4}, {4, 3}, {3, 2}, {4, 5}, {5, 4}, {5, 0}};
  for (const auto& e : edges) b(e[1], e[0]) = 0.9;
  return EpidemicNetwork(std::move(d), std::move(b), {"a", "b", "c", "d", "e", "f"});
}

EpidemicNetwork italy_like_network(std::uint64_t seed) {
  const int n = 107;
  Rng rng(mix_seed(seed, kStreamNetwork));
  Eigen::MatrixXd raw(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) raw(i, j) = std::pow(10.0, -3.0 * rng.next_double());

  // Threshold at the 40th percentile of all entries, then row-normalize.
  std::vector<double> entries(raw.data(), raw.data() + n * n);
  std::sort(entries.begin(), entries.end());
  const double kappa = entries[static_cast<std::size_t>(0.4 * entries.size())];

  Eigen::MatrixXd b = normalize_and_threshold(raw, kappa, 2.0);
  return EpidemicNetwork(Eigen::VectorXd::Ones(n), std::move(b));
}

EpidemicNetwork random_sc_network(int n, double density, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_sc needs at least two nodes");
  if (!(density >= 0.0 && density <= 1.0))
    throw std::invalid_argument("edge density must lie in [0, 1]");
  Rng rng(mix_seed(seed, kStreamNetwork));
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) b((i + 1) % n, i) = rng.uniform(0.5, 1.5);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || j == (i + 1) % n) continue;
      const double coin = rng.next_double();
      if (coin < density) b(j, i) = rng.uniform(0.2, 1.2);
    }
  }
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = rng.uniform(0.5, 1.5);
  return EpidemicNetwork(std::move(d), std::move(b));
}

bool is_builtin_scenario(const std::string& name) {
  return name == "toy6" || name == "italy_like" || name == "random_sc";
}

EpidemicNetwork builtin_scenario(const ScenarioSpec& spec) {
  if (spec.name == "toy6") return toy6_network();
  if (spec.name == "italy_like") return italy_like_network(spec.seed);
  if (spec.name == "random_sc") return random_sc_network(spec.n, spec.density, spec.seed);
  throw std::invalid_argument("unknown scenario: " + spec.name);
}

}  // namespace episis
