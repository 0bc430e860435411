#include "episis/selection.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "episis/graph.hpp"
#include "episis/rng.hpp"
#include "episis/spectral.hpp"

namespace episis {

bool exists_partial_solution(const EpidemicNetwork& net) {
  for (int i = 0; i < net.size(); ++i)
    if (net.d(i) > net.b(i, i)) return true;
  return false;
}

std::vector<int> selection_stage1(const EpidemicNetwork& net) {
  std::vector<int> controlled;
  for (int i = 0; i < net.size(); ++i)
    if (net.d(i) <= net.b(i, i)) controlled.push_back(i);
  return controlled;
}

namespace {

CycleReport component_cycles(const EpidemicNetwork& net, const std::vector<int>& nodes,
                             const TieBreak& tb) {
  const int k = static_cast<int>(nodes.size());
  Eigen::VectorXd d(k);
  Eigen::MatrixXd b(k, k);
  for (int a = 0; a < k; ++a) {
    d(a) = net.d(nodes[a]);
    for (int c = 0; c < k; ++c) b(a, c) = net.b(nodes[a], nodes[c]);
  }
  return cycle_gains(d, b, tb.seeded ? std::optional<std::uint64_t>(tb.seed) : std::nullopt);
}

}  // namespace

SelectionResult selection_stage2(const EpidemicNetwork& net, const std::vector<int>& controlled0,
                                 TieBreak tie_break) {
  const int n = net.size();
  std::vector<bool> in_controlled(n, false);
  for (int idx : controlled0) {
    if (idx < 0 || idx >= n)
      throw std::invalid_argument("controlled node index out of range: " + std::to_string(idx));
    in_controlled[idx] = true;
  }
  std::vector<int> candidate;
  for (int i = 0; i < n; ++i)
    if (!in_controlled[i]) candidate.push_back(i);
  if (candidate.empty())
    throw std::invalid_argument("stage two needs a nonempty candidate uncontrolled set");
  for (int i : candidate)
    if (!(net.d(i) > net.b(i, i)))
      throw std::invalid_argument("candidate node " + std::to_string(i) +
                                  " violates d_i > b_ii; run stage one first");

  // Components of the candidate block are fixed on entry; removals only ever
  // shrink them, so they never merge.
  const int k = static_cast<int>(candidate.size());
  Eigen::MatrixXd sub(k, k);
  for (int a = 0; a < k; ++a)
    for (int c = 0; c < k; ++c) sub(a, c) = net.b(candidate[a], candidate[c]);
  const auto comps_local = strongly_connected_components(Digraph::from_matrix(sub, true));

  SelectionResult result;
  Rng tie_rng(mix_seed(tie_break.seed, kStreamTieBreak));

  for (std::size_t ci = 0; ci < comps_local.size(); ++ci) {
    std::vector<int> members;
    for (int local : comps_local[ci]) members.push_back(candidate[local]);

    while (members.size() >= 2) {
      const CycleReport report = component_cycles(net, members, tie_break);
      if (report.total_gain < 1.0) break;

      const auto& cyc_local = report.cycles[*report.max_index];
      int removed_pos;
      if (tie_break.seeded) {
        removed_pos = tie_rng.uniform_int(0, static_cast<int>(cyc_local.size()) - 1);
      } else {
        removed_pos = static_cast<int>(
            std::min_element(cyc_local.begin(), cyc_local.end()) - cyc_local.begin());
      }

      Stage2Step step;
      step.component = static_cast<int>(ci);
      step.component_nodes = members;
      for (int local : cyc_local) step.broken_cycle.push_back(members[local]);
      step.removed = members[cyc_local[removed_pos]];
      step.total_before = report.total_gain;

      in_controlled[step.removed] = true;
      members.erase(std::find(members.begin(), members.end(), step.removed));
      step.total_after = members.size() >= 2
                             ? component_cycles(net, members, tie_break).total_gain
                             : 0.0;
      result.trace.push_back(std::move(step));
    }
  }

  for (int i = 0; i < n; ++i)
    (in_controlled[i] ? result.controlled : result.uncontrolled).push_back(i);
  result.feasible = !result.uncontrolled.empty();
  const auto cert = verify_partition(net, result.controlled);
  result.certificate = cert.abscissa;
  return result;
}

SelectionResult select_control_nodes(const EpidemicNetwork& net, TieBreak tie_break) {
  if (!exists_partial_solution(net)) {
    SelectionResult result;
    for (int i = 0; i < net.size(); ++i) result.controlled.push_back(i);
    result.feasible = false;
    result.certificate = -std::numeric_limits<double>::infinity();
    return result;
  }
  return selection_stage2(net, selection_stage1(net), tie_break);
}

PartitionCertificate verify_partition(const EpidemicNetwork& net,
                                      const std::vector<int>& controlled) {
  const Partition p = make_partition(net, controlled);
  PartitionCertificate cert;
  if (p.uncontrolled.empty()) {
    cert.hurwitz = true;
    cert.abscissa = -std::numeric_limits<double>::infinity();
    return cert;
  }
  Eigen::MatrixXd m = p.b_uu;
  m.diagonal() -= p.d_u;
  cert.abscissa = spectral_abscissa(m).value;
  cert.hurwitz = cert.abscissa < -kHurwitzEps;
  return cert;
}

}  // namespace episis
