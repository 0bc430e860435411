#include "episis/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace episis {

namespace {

constexpr double kWidth = 760.0, kHeight = 480.0;
constexpr double kLeft = 70.0, kRight = 150.0, kTop = 40.0, kBottom = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
                          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#4b0082", "#b8860b",
                          "#006400", "#8b0000", "#483d8b", "#2f4f4f"};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round-number tick positions covering [lo, hi].
std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step)
    ticks.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
  return ticks;
}

std::vector<double> decade_ticks(double lo, double hi) {
  std::vector<double> ticks;
  for (int e = static_cast<int>(std::ceil(std::log10(lo) - 1e-12));
       std::pow(10.0, e) <= hi * (1.0 + 1e-12); ++e)
    ticks.push_back(std::pow(10.0, e));
  if (ticks.empty()) ticks = {lo, hi};
  return ticks;
}

}  // namespace

void write_svg_chart(const std::string& path, const std::vector<PlotSeries>& all_series,
                     const PlotOptions& opts) {
  std::vector<PlotSeries> series(
      all_series.begin(),
      all_series.begin() + std::min<std::size_t>(all_series.size(), opts.max_series));
  if (series.empty()) throw std::invalid_argument("nothing to plot");

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series) {
    if (s.t.size() != s.y.size()) throw std::invalid_argument("series grids disagree");
    for (std::size_t k = 0; k < s.t.size(); ++k) {
      const double t = s.t[k];
      if (opts.log_x && !(t > 0.0)) continue;
      x_lo = std::min(x_lo, t);
      x_hi = std::max(x_hi, t);
      y_lo = std::min(y_lo, s.y[k]);
      y_hi = std::max(y_hi, s.y[k]);
    }
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > y_lo)) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  auto px = [&](double t) {
    const double f = opts.log_x ? (std::log(t) - std::log(x_lo)) / (std::log(x_hi) - std::log(x_lo))
                                : (t - x_lo) / (x_hi - x_lo);
    return kLeft + f * (kWidth - kLeft - kRight);
  };
  auto py = [&](double y) {
    return kHeight - kBottom - (y - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
  };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write plot file: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << (kLeft + (kWidth - kLeft - kRight) / 2) << "\" y=\"24\" "
      << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << escape_xml(opts.title) << "</text>\n";

  // Axes.
  out << "<line x1=\"" << kLeft << "\" y1=\"" << (kHeight - kBottom) << "\" x2=\""
      << (kWidth - kRight) << "\" y2=\"" << (kHeight - kBottom)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << (kHeight - kBottom) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  const auto x_ticks = opts.log_x ? decade_ticks(x_lo, x_hi) : linear_ticks(x_lo, x_hi);
  for (double t : x_ticks) {
    const double x = px(t);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << (kHeight - kBottom) << "\" x2=\"" << num(x)
        << "\" y2=\"" << (kHeight - kBottom + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(x) << "\" y=\"" << (kHeight - kBottom + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
        << "</text>\n";
  }
  for (double y : linear_ticks(y_lo, y_hi)) {
    const double yy = py(y);
    out << "<line x1=\"" << (kLeft - 5) << "\" y1=\"" << num(yy) << "\" x2=\"" << kLeft
        << "\" y2=\"" << num(yy) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << num(yy) << "\" x2=\"" << (kWidth - kRight)
        << "\" y2=\"" << num(yy) << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    out << "<text x=\"" << (kLeft - 8) << "\" y=\"" << num(yy + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(y)
        << "</text>\n";
  }
  out << "<text x=\"" << (kLeft + (kWidth - kLeft - kRight) / 2) << "\" y=\"" << (kHeight - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape_xml(opts.x_label) << (opts.log_x ? " (log scale)" : "") << "</text>\n";
  out << "<text x=\"18\" y=\"" << (kTop + (kHeight - kTop - kBottom) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << (kTop + (kHeight - kTop - kBottom) / 2) << ")\">"
      << escape_xml(opts.y_label) << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t k = 0; k < s.t.size(); ++k) {
      if (opts.log_x && !(s.t[k] > 0.0)) continue;
      if (!first) out << " ";
      out << num(px(s.t[k])) << "," << num(py(s.y[k]));
      first = false;
    }
    out << "\"/>\n";
    const double ly = kTop + 16.0 * si;
    out << "<line x1=\"" << (kWidth - kRight + 10) << "\" y1=\"" << num(ly + 4) << "\" x2=\""
        << (kWidth - kRight + 30) << "\" y2=\"" << num(ly + 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << (kWidth - kRight + 35) << "\" y=\"" << num(ly + 8)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(s.label)
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace episis
