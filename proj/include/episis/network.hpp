#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace episis {

/// A directed SIS contact network: per-node recovery rates d and a
/// transmission matrix b where b(i, j) is the rate at which infection at
/// node j presses on node i.  Self-loops b(i, i) model within-node mixing.
///
/// Construction validates the data (d_i > 0, b_ij >= 0 and finite, label
/// count and uniqueness) and records whether the graph of b is strongly
/// connected.  Rebuild the object rather than mutating d or b in place if
/// that flag must stay truthful.
struct EpidemicNetwork {
  Eigen::VectorXd d;
  Eigen::MatrixXd b;
  std::vector<std::string> labels;  // empty, or one unique label per node
  bool strongly_connected = false;

  EpidemicNetwork() = default;
  EpidemicNetwork(Eigen::VectorXd d_in, Eigen::MatrixXd b_in,
                  std::vector<std::string> labels_in = {});

  int size() const { return static_cast<int>(d.size()); }
  std::string label_of(int i) const;
  /// Index for a label (or the decimal node index); -1 when unknown.
  int index_of(const std::string& name) const;
};

struct ValidationReport {
  bool strongly_connected = false;
  double r0 = 0.0;
  bool r0_above_one = false;
  /// Nodes whose local recovery beats their self-loop (d_i > b_ii); these
  /// are the admissible seeds for an uncontrolled set in partial control.
  std::vector<int> self_stable_nodes;
};

ValidationReport validate(const EpidemicNetwork& net);

/// Two-block reordering of the network into uncontrolled (u) and controlled
/// (c) parts.  Blocks use the ordering uncontrolled ++ controlled, each
/// ascending by original index.
struct Partition {
  std::vector<int> uncontrolled;
  std::vector<int> controlled;
  Eigen::VectorXd d_u, d_c;
  Eigen::MatrixXd b_uu, b_uc, b_cu, b_cc;

  /// order()[k] is the original index of reordered node k.
  std::vector<int> order() const;
  /// Reassembles (d, b) in the original node order; inverse of partition().
  void reassemble(Eigen::VectorXd& d_out, Eigen::MatrixXd& b_out) const;
};

Partition make_partition(const EpidemicNetwork& net, const std::vector<int>& controlled);

enum class NetworkFormat { json, edge_csv };

/// JSON format: {"n": int, "d": [..], "b": [[..]], "labels": [..]?}.
/// Edge CSV format: a `src,dst,weight` edge list plus a `node,d` file next to
/// it (path with the extension replaced by `.nodes.csv`).  Node ids may be
/// 0-based indices or labels declared in the node file.
EpidemicNetwork load_network(const std::string& path, NetworkFormat format,
                             bool require_strong_connectivity = false);
EpidemicNetwork load_network(const std::string& path,
                             bool require_strong_connectivity = false);  // format by extension
void save_network(const EpidemicNetwork& net, const std::string& path, NetworkFormat format);

std::string nodes_csv_path(const std::string& edges_path);

/// Row-normalization with thresholding: entries of raw strictly below kappa
/// are zeroed, then every row is scaled to sum to target_row_sum.  Errors if
/// thresholding empties a row or disconnects the graph (the message names the
/// offending row or component).
Eigen::MatrixXd normalize_and_threshold(const Eigen::MatrixXd& raw, double kappa,
                                        double target_row_sum);

}  // namespace episis
