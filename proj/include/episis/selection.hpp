#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "episis/network.hpp"

namespace episis {

/// True when some node can be left uncontrolled at all: there is an i with
/// d_i > b_ii.  Without one, every candidate uncontrolled block keeps an
/// unstable diagonal and partial control cannot eliminate the epidemic.
bool exists_partial_solution(const EpidemicNetwork& net);

/// Stage one of the selection heuristic: every node whose self-loop already
/// dominates its recovery (d_i <= b_ii) must be controlled.
std::vector<int> selection_stage1(const EpidemicNetwork& net);

struct TieBreak {
  bool seeded = false;
  std::uint64_t seed = 0;
};

struct Stage2Step {
  int component = 0;               // index of the component being cut
  std::vector<int> component_nodes;
  int removed = -1;                // node moved to the controlled set
  std::vector<int> broken_cycle;   // the max-gain cycle it was taken from
  double total_before = 0.0;       // sum of cycle gains before the removal
  double total_after = 0.0;
};

struct SelectionResult {
  std::vector<int> controlled;
  std::vector<int> uncontrolled;
  bool feasible = false;   // a proper uncontrolled subset exists
  double certificate = 0.0;  // spectral abscissa of the uncontrolled block
  std::vector<Stage2Step> trace;
};

/// Stage two: within each strongly connected component of the candidate
/// uncontrolled block, while the sum of cycle gains is >= 1, move one node of
/// a maximum-gain cycle into the controlled set.  Ties break toward the
/// lexicographically smallest choice unless a seed is supplied.  Components
/// are computed once on entry.  Throws when the candidate block is empty.
SelectionResult selection_stage2(const EpidemicNetwork& net, const std::vector<int>& controlled0,
                                 TieBreak tie_break = {});

/// Full pipeline: stage one, then stage two, then the Hurwitz certificate on
/// the uncontrolled block.  When no node admits d_i > b_ii the result is
/// infeasible with every node controlled.
SelectionResult select_control_nodes(const EpidemicNetwork& net, TieBreak tie_break = {});

struct PartitionCertificate {
  bool hurwitz = false;
  double abscissa = 0.0;
};

/// Exact stability check of the uncontrolled block -D_u + B_uu for a given
/// controlled set.  An empty uncontrolled block is vacuously stable with
/// abscissa -infinity.
PartitionCertificate verify_partition(const EpidemicNetwork& net,
                                      const std::vector<int>& controlled);

}  // namespace episis
