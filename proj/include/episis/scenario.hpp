#pragma once

#include <cstdint>

#include "episis/network.hpp"

namespace episis {

/// Six-node benchmark: labels a..f, d_i = 2, self-loops b_ii = 1 except
/// b_aa = 4, and transmission edges of weight 0.9 along
/// a->b, b->c, c->e, e->d, d->c, e->f, f->e, f->a.
EpidemicNetwork toy6_network();

/// 107-node synthetic network in the style of an inter-regional mobility
/// matrix: log-uniform raw weights in [1e-3, 1], thresholded at their 40th
/// percentile, rows normalized to sum 2, unit recovery rates.  Deterministic
/// in the seed.
EpidemicNetwork italy_like_network(std::uint64_t seed);

/// Random strongly connected network: a Hamiltonian cycle with weights in
/// [0.5, 1.5] guarantees connectivity, every other ordered pair gets an edge
/// with the given probability and weight in [0.2, 1.2], and d_i falls in
/// [0.5, 1.5].
EpidemicNetwork random_sc_network(int n, double density, std::uint64_t seed);

struct ScenarioSpec {
  std::string name;  // "toy6" | "italy_like" | "random_sc"
  std::uint64_t seed = 0;
  int n = 10;
  double density = 0.3;
};

bool is_builtin_scenario(const std::string& name);
EpidemicNetwork builtin_scenario(const ScenarioSpec& spec);

}  // namespace episis
