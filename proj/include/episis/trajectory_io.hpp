#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "episis/integrator.hpp"

namespace episis {

/// Formats a double with 17 significant digits, enough to round-trip.
std::string format_double(double v);

/// Writes `t, x_1..x_n, g_1..g_n` rows (exactly 1 + 2n columns).
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Reads the times and the x/g blocks back; derived fields (peak, terminal,
/// final gains) are recomputed from the samples.
Trajectory read_trajectory_csv(const std::string& path);

void write_json_file(const nlohmann::ordered_json& j, const std::string& path);
nlohmann::json read_json_file(const std::string& path);

}  // namespace episis
