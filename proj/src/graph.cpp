#include "episis/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "episis/rng.hpp"

namespace episis {

Digraph Digraph::from_matrix(const Eigen::MatrixXd& m, bool skip_diagonal) {
  if (m.rows() != m.cols()) throw std::invalid_argument("adjacency matrix must be square");
  const int n = static_cast<int>(m.rows());
  Digraph g(n);
  for (int src = 0; src < n; ++src) {
    for (int dst = 0; dst < n; ++dst) {
      if (src == dst && skip_diagonal) continue;
      if (m(dst, src) > 0.0) g.add_edge(src, dst);
    }
  }
  return g;
}

void Digraph::canonicalize() {
  for (auto& row : adj_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

namespace {

// Iterative Tarjan; recursion depth would be fine at this scale but an
// explicit stack keeps the routine safe for adversarial inputs.
struct TarjanState {
  const Digraph& g;
  std::vector<int> index, lowlink;
  std::vector<bool> on_stack;
  std::vector<int> stack;
  int next_index = 0;
  std::vector<std::vector<int>> components;

  explicit TarjanState(const Digraph& graph)
      : g(graph),
        index(graph.size(), -1),
        lowlink(graph.size(), 0),
        on_stack(graph.size(), false) {}

  void run(int root) {
    struct Frame {
      int v;
      std::size_t edge;
    };
    std::vector<Frame> frames{{root, 0}};
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& succ = g.successors(f.v);
      if (f.edge < succ.size()) {
        const int w = succ[f.edge++];
        if (index[w] < 0) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        const int v = f.v;
        if (lowlink[v] == index[v]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
          } while (w != v);
          std::sort(comp.begin(), comp.end());
          components.push_back(std::move(comp));
        }
        frames.pop_back();
        if (!frames.empty()) {
          lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
        }
      }
    }
  }
};

}  // namespace

std::vector<std::vector<int>> strongly_connected_components(const Digraph& g) {
  TarjanState st(g);
  for (int v = 0; v < g.size(); ++v) {
    if (st.index[v] < 0) st.run(v);
  }
  std::sort(st.components.begin(), st.components.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
  return st.components;
}

std::vector<std::vector<int>> strongly_connected_components(const Eigen::MatrixXd& adjacency) {
  return strongly_connected_components(Digraph::from_matrix(adjacency));
}

bool is_strongly_connected(const Eigen::MatrixXd& adjacency) {
  if (adjacency.rows() == 0) return false;
  return strongly_connected_components(adjacency).size() == 1;
}

namespace {

// Johnson's circuit enumeration restricted to the subgraph on {s..n-1},
// run for each start vertex s ascending.  Cycles come out canonically
// rotated (smallest vertex first) because s is the smallest vertex of
// every cycle it emits.
struct JohnsonState {
  int n;
  std::vector<std::vector<int>> adj;   // subgraph adjacency, sorted
  std::vector<bool> blocked;
  std::vector<std::vector<int>> block_map;
  std::vector<int> path;
  std::vector<std::vector<int>>& out;
  std::size_t max_cycles;

  JohnsonState(int size, std::vector<std::vector<int>>& sink, std::size_t limit)
      : n(size), blocked(size, false), block_map(size), out(sink), max_cycles(limit) {}

  void unblock(int v) {
    blocked[v] = false;
    for (int w : block_map[v]) {
      if (blocked[w]) unblock(w);
    }
    block_map[v].clear();
  }

  bool circuit(int v, int s) {
    bool found = false;
    blocked[v] = true;
    path.push_back(v);
    for (int w : adj[v]) {
      if (w == s) {
        if (out.size() >= max_cycles) {
          throw std::runtime_error(
              "simple cycle enumeration exceeded " + std::to_string(max_cycles) +
              " cycles; decompose the graph before enumerating");
        }
        out.push_back(path);
        found = true;
      } else if (!blocked[w]) {
        if (circuit(w, s)) found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (int w : adj[v]) {
        auto& lst = block_map[w];
        if (std::find(lst.begin(), lst.end(), v) == lst.end()) lst.push_back(v);
      }
    }
    path.pop_back();
    return found;
  }
};

}  // namespace

std::vector<std::vector<int>> simple_cycles(const Digraph& g, std::size_t max_cycles) {
  Digraph work = g;
  work.canonicalize();
  const int n = work.size();
  std::vector<std::vector<int>> cycles;

  for (int s = 0; s < n; ++s) {
    // Restrict to the strongly connected component of s inside {s..n-1}.
    Digraph sub(n);
    for (int v = s; v < n; ++v) {
      for (int w : work.successors(v)) {
        if (w >= s && w != v) sub.add_edge(v, w);
      }
    }
    std::vector<int> comp_of(n, -1);
    const auto comps = strongly_connected_components(sub);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
    }
    bool has_partner = false;
    for (int w : work.successors(s)) {
      if (w > s && comp_of[w] == comp_of[s]) has_partner = true;
    }
    if (!has_partner) continue;

    JohnsonState st(n, cycles, max_cycles);
    st.adj.assign(n, {});
    for (int v = s; v < n; ++v) {
      if (comp_of[v] != comp_of[s]) continue;
      for (int w : sub.successors(v)) {
        if (comp_of[w] == comp_of[s]) st.adj[v].push_back(w);
      }
    }
    st.circuit(s, s);
  }
  return cycles;
}

double cycle_gain(const Eigen::MatrixXd& m, const std::vector<int>& cycle) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if (cycle.size() < 2) throw std::invalid_argument("a simple cycle needs at least two vertices");
  double gain = 1.0;
  const std::size_t h = cycle.size();
  for (std::size_t k = 0; k < h; ++k) {
    const int u = cycle[k];
    const int v = cycle[(k + 1) % h];
    if (u < 0 || v < 0 || u >= m.rows() || v >= m.rows())
      throw std::invalid_argument("cycle vertex out of range");
    const double diag = m(v, v);
    if (!(diag < 0.0))
      throw std::invalid_argument("cycle gain needs negative diagonal at vertex " +
                                  std::to_string(v));
    const double edge = m(v, u);
    if (!(edge > 0.0))
      throw std::invalid_argument("cycle traverses missing edge " + std::to_string(u) + " -> " +
                                  std::to_string(v));
    gain *= edge / (-diag);
  }
  return gain;
}

CycleReport cycle_gains(const Eigen::VectorXd& d_block, const Eigen::MatrixXd& b_block,
                        std::optional<std::uint64_t> tie_break_seed, std::size_t max_cycles) {
  const int n = static_cast<int>(d_block.size());
  if (b_block.rows() != n || b_block.cols() != n)
    throw std::invalid_argument("block dimensions disagree");
  for (int i = 0; i < n; ++i) {
    if (!(d_block(i) > b_block(i, i)))
      throw std::invalid_argument("cycle gains need d_i > b_ii at block vertex " +
                                  std::to_string(i));
  }
  Eigen::MatrixXd m = b_block;
  m.diagonal() -= d_block;

  CycleReport report;
  report.cycles = simple_cycles(Digraph::from_matrix(b_block, /*skip_diagonal=*/true), max_cycles);
  report.gains.reserve(report.cycles.size());
  for (const auto& c : report.cycles) {
    const double g = cycle_gain(m, c);
    report.gains.push_back(g);
    report.total_gain += g;
  }

  if (!report.cycles.empty()) {
    std::vector<int> best;
    double best_gain = -1.0;
    for (int k = 0; k < static_cast<int>(report.gains.size()); ++k) {
      if (report.gains[k] > best_gain) {
        best_gain = report.gains[k];
        best = {k};
      } else if (report.gains[k] == best_gain) {
        best.push_back(k);
      }
    }
    report.max_gain = best_gain;
    if (best.size() == 1 || !tie_break_seed) {
      // Cycles are generated in lexicographic order, so the first tied
      // index is already the lexicographically smallest cycle.
      report.max_index = best.front();
    } else {
      Rng rng(mix_seed(*tie_break_seed, kStreamTieBreak));
      report.max_index = best[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(best.size()) - 1))];
    }
  }
  return report;
}

}  // namespace episis
