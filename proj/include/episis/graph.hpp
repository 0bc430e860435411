#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace episis {

/// Directed graph on vertices {0..n-1} as adjacency lists.  When built from a
/// matrix, entry m(i, j) > 0 reads as the edge j -> i (column index is the
/// source), matching the convention that b_ij carries transmission from node
/// j into node i.
class Digraph {
public:
  explicit Digraph(int n) : adj_(n) {}

  static Digraph from_matrix(const Eigen::MatrixXd& m, bool skip_diagonal = false);

  void add_edge(int from, int to) { adj_[from].push_back(to); }
  int size() const { return static_cast<int>(adj_.size()); }
  const std::vector<int>& successors(int v) const { return adj_[v]; }

  /// Sorts every adjacency list ascending and drops duplicate edges, so
  /// traversal order is a function of the edge set alone.
  void canonicalize();

private:
  std::vector<std::vector<int>> adj_;
};

/// Strongly connected components (Tarjan).  Each component is sorted
/// ascending and the list of components is ordered by smallest member.
std::vector<std::vector<int>> strongly_connected_components(const Digraph& g);
std::vector<std::vector<int>> strongly_connected_components(const Eigen::MatrixXd& adjacency);

bool is_strongly_connected(const Eigen::MatrixXd& adjacency);

/// All simple directed cycles (length >= 2; self-loops are not simple cycles
/// here).  Each cycle is rotated so its smallest vertex comes first, and the
/// enumeration order is deterministic: outer loop over start vertices
/// ascending, successors visited ascending.  Throws std::runtime_error once
/// more than max_cycles cycles have been produced; such graphs should be cut
/// into smaller pieces before enumeration.
std::vector<std::vector<int>> simple_cycles(const Digraph& g,
                                            std::size_t max_cycles = 1000000);

/// Gain of one simple cycle through the Metzler matrix m: the product over
/// cycle edges u -> v of m(v, u) / (-m(v, v)).  Requires every diagonal entry
/// on the cycle to be negative and every traversed off-diagonal entry to be
/// positive.
double cycle_gain(const Eigen::MatrixXd& m, const std::vector<int>& cycle);

struct CycleReport {
  std::vector<std::vector<int>> cycles;  // block-local vertex indices
  std::vector<double> gains;             // gains[k] is the gain of cycles[k]
  double total_gain = 0.0;               // sum of all gains
  std::optional<int> max_index;          // index of a maximum-gain cycle
  double max_gain = 0.0;
};

/// Enumerates the simple cycles of -diag(d) + b restricted to the given block
/// and reports their gains.  Requires d_i > b_ii for every block node.  When
/// several cycles tie for the maximum gain, the lexicographically smallest
/// cycle wins unless tie_break_seed is given, in which case one of the tied
/// cycles is drawn uniformly from that seed.
CycleReport cycle_gains(const Eigen::VectorXd& d_block, const Eigen::MatrixXd& b_block,
                        std::optional<std::uint64_t> tie_break_seed = std::nullopt,
                        std::size_t max_cycles = 1000000);

}  // namespace episis
