#pragma once

#include <string>
#include <vector>

namespace episis {

struct PlotSeries {
  std::string label;
  std::vector<double> t;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "t";
  std::string y_label;
  bool log_x = false;
  int max_series = 16;  // extra series are dropped, keeping the chart legible
};

/// Writes a self-contained SVG line chart.  Output is deterministic for
/// identical inputs.
void write_svg_chart(const std::string& path, const std::vector<PlotSeries>& series,
                     const PlotOptions& opts);

}  // namespace episis
