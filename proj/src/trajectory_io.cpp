#include "episis/trajectory_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace episis {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trajectory file: " + path);
  const int n = traj.nodes();
  out << "t";
  for (int i = 1; i <= n; ++i) out << ",x_" << i;
  for (int i = 1; i <= n; ++i) out << ",g_" << i;
  out << "\n";
  for (int k = 0; k < traj.samples(); ++k) {
    out << format_double(traj.times[k]);
    for (int i = 0; i < n; ++i) out << "," << format_double(traj.x(k, i));
    for (int i = 0; i < n; ++i) out << "," << format_double(traj.g(k, i));
    out << "\n";
  }
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty trajectory file");

  int columns = 1;
  for (char c : line)
    if (c == ',') ++columns;
  if (columns < 3 || columns % 2 == 0)
    throw std::runtime_error(path + ": expected 1 + 2n columns, got " + std::to_string(columns));
  const int n = (columns - 1) / 2;

  std::vector<double> times;
  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    row.reserve(columns);
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      try {
        row.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": bad number: " + field);
      }
    }
    if (static_cast<int>(row.size()) != columns)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(columns) + " fields, got " +
                               std::to_string(row.size()));
    times.push_back(row[0]);
    rows.push_back(std::move(row));
  }
  if (times.empty()) throw std::runtime_error(path + ": no samples");

  Trajectory traj;
  traj.times = times;
  const int samples = static_cast<int>(times.size());
  traj.x.resize(samples, n);
  traj.g.resize(samples, n);
  for (int k = 0; k < samples; ++k) {
    for (int i = 0; i < n; ++i) {
      traj.x(k, i) = rows[k][1 + i];
      traj.g(k, i) = rows[k][1 + n + i];
    }
  }
  traj.final_gains = traj.g.row(samples - 1);
  traj.peak_avg_infection = 0.0;
  for (int k = 0; k < samples; ++k)
    traj.peak_avg_infection = std::max(traj.peak_avg_infection, traj.x.row(k).mean());
  traj.horizon = times.back();
  return traj;
}

void write_json_file(const nlohmann::ordered_json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": JSON parse error: " + e.what());
  }
  return j;
}

}  // namespace episis
