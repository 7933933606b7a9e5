#pragma once

#include <zeno/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zeno::svg {

struct Point {
  double x;
  double y;
};

struct ChartOptions {
  bool log_log = false;
  std::string x_label = "n";
  std::string y_label = "value";
  std::string title;
  std::optional<std::string> annotation;
};

inline constexpr int kWidth = 800;
inline constexpr int kHeight = 600;

namespace detail {

inline std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo;
  double hi;
  double pixel_lo;
  double pixel_hi;

  [[nodiscard]] double map(double v) const {
    return pixel_lo + (v - lo) / (hi - lo) * (pixel_hi - pixel_lo);
  }
};

inline Axis make_axis(double lo, double hi, double pixel_lo, double pixel_hi) {
  if (hi - lo <= 0.0) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.5;
    lo -= pad;
    hi += pad;
  }
  return {lo, hi, pixel_lo, pixel_hi};
}

}  // namespace detail

/// Deterministic 800x600 line chart. With log_log both axes are log10 and
/// points with a non-positive coordinate are left out. Throws
/// insufficient_data when no point is drawable.
inline std::string render_chart(std::span<const Point> data, const ChartOptions& options) {
  std::vector<Point> pts;
  for (const auto& p : data) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
    if (options.log_log) {
      if (p.x <= 0.0 || p.y <= 0.0) continue;
      pts.push_back({std::log10(p.x), std::log10(p.y)});
    } else {
      pts.push_back(p);
    }
  }
  if (pts.empty()) throw insufficient_data("nothing to plot");

  const double left = 90.0;
  const double right = kWidth - 30.0;
  const double top = 50.0;
  const double bottom = kHeight - 70.0;

  auto [xmin, xmax] = std::minmax_element(pts.begin(), pts.end(),
                                          [](const Point& a, const Point& b) { return a.x < b.x; });
  auto [ymin, ymax] = std::minmax_element(pts.begin(), pts.end(),
                                          [](const Point& a, const Point& b) { return a.y < b.y; });
  const detail::Axis xa = detail::make_axis(xmin->x, xmax->x, left, right);
  const detail::Axis ya = detail::make_axis(ymin->y, ymax->y, bottom, top);

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    s += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         detail::escape(options.title) + "</text>\n";
  }

  // Frame and ticks.
  s += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  s += "<line x1=\"" + detail::fmt("%.2f", left) + "\" y1=\"" + detail::fmt("%.2f", bottom) +
       "\" x2=\"" + detail::fmt("%.2f", right) + "\" y2=\"" + detail::fmt("%.2f", bottom) + "\"/>\n";
  s += "<line x1=\"" + detail::fmt("%.2f", left) + "\" y1=\"" + detail::fmt("%.2f", bottom) +
       "\" x2=\"" + detail::fmt("%.2f", left) + "\" y2=\"" + detail::fmt("%.2f", top) + "\"/>\n";
  s += "</g>\n";

  constexpr int kTicks = 5;
  s += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k < kTicks; ++k) {
    const double fx = xa.lo + (xa.hi - xa.lo) * k / (kTicks - 1);
    const double fy = ya.lo + (ya.hi - ya.lo) * k / (kTicks - 1);
    const double label_x = options.log_log ? std::pow(10.0, fx) : fx;
    const double label_y = options.log_log ? std::pow(10.0, fy) : fy;
    const double px = xa.map(fx);
    const double py = ya.map(fy);
    s += "<line x1=\"" + detail::fmt("%.2f", px) + "\" y1=\"" + detail::fmt("%.2f", bottom) +
         "\" x2=\"" + detail::fmt("%.2f", px) + "\" y2=\"" + detail::fmt("%.2f", bottom + 5) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + detail::fmt("%.2f", px) + "\" y=\"" + detail::fmt("%.2f", bottom + 20) +
         "\" text-anchor=\"middle\">" + detail::fmt("%.4g", label_x) + "</text>\n";
    s += "<line x1=\"" + detail::fmt("%.2f", left - 5) + "\" y1=\"" + detail::fmt("%.2f", py) +
         "\" x2=\"" + detail::fmt("%.2f", left) + "\" y2=\"" + detail::fmt("%.2f", py) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + detail::fmt("%.2f", left - 8) + "\" y=\"" + detail::fmt("%.2f", py + 4) +
         "\" text-anchor=\"end\">" + detail::fmt("%.4g", label_y) + "</text>\n";
  }
  s += "</g>\n";

  const std::string suffix = options.log_log ? " (log scale)" : "";
  s += "<text x=\"" + detail::fmt("%.2f", (left + right) / 2) + "\" y=\"" +
       detail::fmt("%.2f", kHeight - 25.0) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
       detail::escape(options.x_label + suffix) + "</text>\n";
  s += "<text x=\"20\" y=\"" + detail::fmt("%.2f", (top + bottom) / 2) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 20 " +
       detail::fmt("%.2f", (top + bottom) / 2) + ")\">" + detail::escape(options.y_label + suffix) +
       "</text>\n";

  s += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k > 0) s += ' ';
    s += detail::fmt("%.2f", xa.map(pts[k].x)) + "," + detail::fmt("%.2f", ya.map(pts[k].y));
  }
  s += "\"/>\n";
  s += "<g fill=\"steelblue\">\n";
  for (const auto& p : pts) {
    s += "<circle cx=\"" + detail::fmt("%.2f", xa.map(p.x)) + "\" cy=\"" +
         detail::fmt("%.2f", ya.map(p.y)) + "\" r=\"3\"/>\n";
  }
  s += "</g>\n";

  if (options.annotation) {
    s += "<text x=\"" + detail::fmt("%.2f", right - 10) + "\" y=\"" + detail::fmt("%.2f", top + 15) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"13\">" +
         detail::escape(*options.annotation) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace zeno::svg
