#include "episis/network.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "episis/graph.hpp"
#include "episis/spectral.hpp"

namespace episis {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

EpidemicNetwork::EpidemicNetwork(Eigen::VectorXd d_in, Eigen::MatrixXd b_in,
                                 std::vector<std::string> labels_in)
    : d(std::move(d_in)), b(std::move(b_in)), labels(std::move(labels_in)) {
  const int n = static_cast<int>(d.size());
  if (n < 1) fail("a network needs at least one node");
  if (b.rows() != n || b.cols() != n)
    fail("transmission matrix is " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
         " but the network has " + std::to_string(n) + " nodes");
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(d(i)) || !(d(i) > 0.0))
      fail("recovery rate d[" + std::to_string(i) + "] must be positive and finite");
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(b(i, j)) || b(i, j) < 0.0)
        fail("transmission rate b[" + std::to_string(i) + "][" + std::to_string(j) +
             "] must be nonnegative and finite");
    }
  }
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != n)
      fail("expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (l.empty()) fail("node labels must be nonempty");
      if (!seen.insert(l).second) fail("duplicate node label: " + l);
    }
  }
  strongly_connected = is_strongly_connected(b);
}

std::string EpidemicNetwork::label_of(int i) const {
  if (i < 0 || i >= size()) fail("node index out of range: " + std::to_string(i));
  return labels.empty() ? std::to_string(i) : labels[i];
}

int EpidemicNetwork::index_of(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(labels.size()); ++i)
    if (labels[i] == name) return i;
  try {
    std::size_t pos = 0;
    const int idx = std::stoi(name, &pos);
    if (pos == name.size() && idx >= 0 && idx < size()) return idx;
  } catch (const std::exception&) {
  }
  return -1;
}

ValidationReport validate(const EpidemicNetwork& net) {
  ValidationReport report;
  report.strongly_connected = net.strongly_connected;
  Eigen::MatrixXd m = net.b;
  for (int i = 0; i < net.size(); ++i) m.row(i) /= net.d(i);
  report.r0 = spectral_radius(m).value;
  report.r0_above_one = report.r0 > 1.0;
  for (int i = 0; i < net.size(); ++i)
    if (net.d(i) > net.b(i, i)) report.self_stable_nodes.push_back(i);
  return report;
}

std::vector<int> Partition::order() const {
  std::vector<int> ord = uncontrolled;
  ord.insert(ord.end(), controlled.begin(), controlled.end());
  return ord;
}

void Partition::reassemble(Eigen::VectorXd& d_out, Eigen::MatrixXd& b_out) const {
  const auto ord = order();
  const int n = static_cast<int>(ord.size());
  const int k = static_cast<int>(uncontrolled.size());
  d_out.resize(n);
  b_out.resize(n, n);
  Eigen::VectorXd d_perm(n);
  d_perm << d_u, d_c;
  Eigen::MatrixXd b_perm(n, n);
  b_perm.topLeftCorner(k, k) = b_uu;
  b_perm.topRightCorner(k, n - k) = b_uc;
  b_perm.bottomLeftCorner(n - k, k) = b_cu;
  b_perm.bottomRightCorner(n - k, n - k) = b_cc;
  for (int a = 0; a < n; ++a) {
    d_out(ord[a]) = d_perm(a);
    for (int c = 0; c < n; ++c) b_out(ord[a], ord[c]) = b_perm(a, c);
  }
}

Partition make_partition(const EpidemicNetwork& net, const std::vector<int>& controlled) {
  const int n = net.size();
  std::vector<bool> is_controlled(n, false);
  for (int idx : controlled) {
    if (idx < 0 || idx >= n) fail("controlled node index out of range: " + std::to_string(idx));
    if (is_controlled[idx]) fail("controlled node listed twice: " + std::to_string(idx));
    is_controlled[idx] = true;
  }

  Partition p;
  for (int i = 0; i < n; ++i) (is_controlled[i] ? p.controlled : p.uncontrolled).push_back(i);

  const int k = static_cast<int>(p.uncontrolled.size());
  const int c = n - k;
  p.d_u.resize(k);
  p.d_c.resize(c);
  p.b_uu.resize(k, k);
  p.b_uc.resize(k, c);
  p.b_cu.resize(c, k);
  p.b_cc.resize(c, c);
  for (int a = 0; a < k; ++a) {
    p.d_u(a) = net.d(p.uncontrolled[a]);
    for (int b2 = 0; b2 < k; ++b2) p.b_uu(a, b2) = net.b(p.uncontrolled[a], p.uncontrolled[b2]);
    for (int b2 = 0; b2 < c; ++b2) p.b_uc(a, b2) = net.b(p.uncontrolled[a], p.controlled[b2]);
  }
  for (int a = 0; a < c; ++a) {
    p.d_c(a) = net.d(p.controlled[a]);
    for (int b2 = 0; b2 < k; ++b2) p.b_cu(a, b2) = net.b(p.controlled[a], p.uncontrolled[b2]);
    for (int b2 = 0; b2 < c; ++b2) p.b_cc(a, b2) = net.b(p.controlled[a], p.controlled[b2]);
  }
  return p;
}

namespace {

EpidemicNetwork network_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected a JSON object");
  for (const char* key : {"n", "d", "b"})
    if (!j.contains(key)) fail(where + ": missing required field \"" + key + "\"");
  const int n = j.at("n").get<int>();
  if (n < 1) fail(where + ": field \"n\" must be a positive integer");
  const auto& dj = j.at("d");
  const auto& bj = j.at("b");
  if (!dj.is_array() || static_cast<int>(dj.size()) != n)
    fail(where + ": field \"d\" must be an array of " + std::to_string(n) + " numbers");
  if (!bj.is_array() || static_cast<int>(bj.size()) != n)
    fail(where + ": field \"b\" must be an array of " + std::to_string(n) + " rows");
  Eigen::VectorXd d(n);
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i) {
    if (!dj[i].is_number()) fail(where + ": d[" + std::to_string(i) + "] is not a number");
    d(i) = dj[i].get<double>();
    const auto& row = bj[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail(where + ": b[" + std::to_string(i) + "] must be an array of " + std::to_string(n) +
           " numbers");
    for (int k = 0; k < n; ++k) {
      if (!row[k].is_number())
        fail(where + ": b[" + std::to_string(i) + "][" + std::to_string(k) + "] is not a number");
      b(i, k) = row[k].get<double>();
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const auto& lj = j.at("labels");
    if (!lj.is_array() || static_cast<int>(lj.size()) != n)
      fail(where + ": field \"labels\" must be an array of " + std::to_string(n) + " strings");
    for (const auto& l : lj) {
      if (!l.is_string()) fail(where + ": labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return EpidemicNetwork(std::move(d), std::move(b), std::move(labels));
}

EpidemicNetwork load_json_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open network file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(path + ": JSON parse error: " + e.what());
  }
  return network_from_json(j, path);
}

EpidemicNetwork load_edge_csv_network(const std::string& edges_path) {
  const std::string nodes_path = nodes_csv_path(edges_path);
  std::ifstream nodes_in(nodes_path);
  if (!nodes_in) fail("cannot open node file: " + nodes_path);

  std::vector<std::string> node_names;
  std::vector<double> d_values;
  std::unordered_map<std::string, int> index_by_name;
  std::string line;
  int line_no = 0;
  while (std::getline(nodes_in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    auto fields = split_csv_line(t);
    if (line_no == 1 && fields.size() >= 2 && fields[0] == "node") continue;
    if (fields.size() != 2)
      fail(nodes_path + ":" + std::to_string(line_no) + ": expected `node,d`");
    double dv;
    try {
      dv = std::stod(fields[1]);
    } catch (const std::exception&) {
      fail(nodes_path + ":" + std::to_string(line_no) + ": bad recovery rate: " + fields[1]);
    }
    if (!index_by_name.emplace(fields[0], static_cast<int>(node_names.size())).second)
      fail(nodes_path + ":" + std::to_string(line_no) + ": duplicate node id: " + fields[0]);
    node_names.push_back(fields[0]);
    d_values.push_back(dv);
  }
  const int n = static_cast<int>(node_names.size());
  if (n == 0) fail(nodes_path + ": no nodes declared");

  // Pure 0..n-1 integer ids are positional, not labels.
  bool numeric = true;
  for (int i = 0; i < n && numeric; ++i) numeric = node_names[i] == std::to_string(i);

  std::ifstream edges_in(edges_path);
  if (!edges_in) fail("cannot open edge file: " + edges_path);
  Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(d_values.data(), n);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  line_no = 0;
  while (std::getline(edges_in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    auto fields = split_csv_line(t);
    if (line_no == 1 && fields.size() >= 3 && fields[0] == "src") continue;
    if (fields.size() != 3)
      fail(edges_path + ":" + std::to_string(line_no) + ": expected `src,dst,weight`");
    auto resolve = [&](const std::string& name) -> int {
      auto it = index_by_name.find(name);
      if (it == index_by_name.end())
        fail(edges_path + ":" + std::to_string(line_no) + ": unknown node id: " + name);
      return it->second;
    };
    const int src = resolve(fields[0]);
    const int dst = resolve(fields[1]);
    double w;
    try {
      w = std::stod(fields[2]);
    } catch (const std::exception&) {
      fail(edges_path + ":" + std::to_string(line_no) + ": bad weight: " + fields[2]);
    }
    if (b(dst, src) != 0.0)
      fail(edges_path + ":" + std::to_string(line_no) + ": duplicate edge " + fields[0] + " -> " +
           fields[1]);
    b(dst, src) = w;
  }

  std::vector<std::string> labels;
  if (!numeric) labels = node_names;
  return EpidemicNetwork(std::move(d), std::move(b), std::move(labels));
}

}  // namespace

std::string nodes_csv_path(const std::string& edges_path) {
  const auto dot = edges_path.find_last_of('.');
  const auto slash = edges_path.find_last_of("/\\");
  const std::string stem = (dot == std::string::npos || (slash != std::string::npos && dot < slash))
                               ? edges_path
                               : edges_path.substr(0, dot);
  return stem + ".nodes.csv";
}

EpidemicNetwork load_network(const std::string& path, NetworkFormat format,
                             bool require_strong_connectivity) {
  EpidemicNetwork net =
      format == NetworkFormat::json ? load_json_network(path) : load_edge_csv_network(path);
  if (require_strong_connectivity && !net.strongly_connected)
    fail(path + ": network is not strongly connected");
  return net;
}

EpidemicNetwork load_network(const std::string& path, bool require_strong_connectivity) {
  const bool csv = path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
  return load_network(path, csv ? NetworkFormat::edge_csv : NetworkFormat::json,
                      require_strong_connectivity);
}

void save_network(const EpidemicNetwork& net, const std::string& path, NetworkFormat format) {
  const int n = net.size();
  if (format == NetworkFormat::json) {
    nlohmann::ordered_json j;
    j["n"] = n;
    if (!net.labels.empty()) j["labels"] = net.labels;
    j["d"] = std::vector<double>(net.d.data(), net.d.data() + n);
    auto rows = nlohmann::ordered_json::array();
    for (int i = 0; i < n; ++i)
      rows.push_back(std::vector<double>(net.b.row(i).begin(), net.b.row(i).end()));
    j["b"] = rows;
    std::ofstream out(path);
    if (!out) fail("cannot write network file: " + path);
    out << j.dump(2) << "\n";
    return;
  }

  std::ofstream edges(path);
  if (!edges) fail("cannot write edge file: " + path);
  char buf[64];
  edges << "src,dst,weight\n";
  for (int src = 0; src < n; ++src) {
    for (int dst = 0; dst < n; ++dst) {
      if (net.b(dst, src) == 0.0) continue;
      std::snprintf(buf, sizeof buf, "%.17g", net.b(dst, src));
      edges << net.label_of(src) << "," << net.label_of(dst) << "," << buf << "\n";
    }
  }
  const std::string nodes_path = nodes_csv_path(path);
  std::ofstream nodes(nodes_path);
  if (!nodes) fail("cannot write node file: " + nodes_path);
  nodes << "node,d\n";
  for (int i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", net.d(i));
    nodes << net.label_of(i) << "," << buf << "\n";
  }
}

Eigen::MatrixXd normalize_and_threshold(const Eigen::MatrixXd& raw, double kappa,
                                        double target_row_sum) {
  if (raw.rows() != raw.cols() || raw.rows() == 0)
    fail("normalize_and_threshold needs a nonempty square matrix");
  if (!(kappa >= 0.0)) fail("threshold kappa must be nonnegative");
  if (!(target_row_sum > 0.0)) fail("target row sum must be positive");
  const int n = static_cast<int>(raw.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(raw(i, j)) || !(raw(i, j) > 0.0))
        fail("raw matrix entries must be positive and finite; entry (" + std::to_string(i) + "," +
             std::to_string(j) + ") is not");

  Eigen::MatrixXd out = raw;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (out(i, j) < kappa) out(i, j) = 0.0;

  for (int i = 0; i < n; ++i) {
    const double row_sum = out.row(i).sum();
    if (row_sum == 0.0)
      fail("thresholding emptied row " + std::to_string(i) + "; lower kappa");
    out.row(i) *= target_row_sum / row_sum;
  }

  const auto comps = strongly_connected_components(out);
  if (comps.size() > 1) {
    const auto smallest = *std::min_element(
        comps.begin(), comps.end(),
        [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::string members;
    for (std::size_t k = 0; k < smallest.size() && k < 8; ++k)
      members += (k ? "," : "") + std::to_string(smallest[k]);
    fail("thresholding disconnected the graph; component {" + members +
         "} is cut off; lower kappa");
  }
  return out;
}

}  // namespace episis
