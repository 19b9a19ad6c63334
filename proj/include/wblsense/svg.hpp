// svg.hpp
// Deterministic SVG line charts of the damage series k_t against t — one
// polyline per (N, trial), colored by system size. No plotting backend is
// involved: the chart is assembled as text with fixed two-decimal
// coordinates, so identical inputs yield byte-identical files that diff
// cleanly under version control.

#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wblsense/experiments.hpp"

namespace wblsense {

namespace detail {

inline constexpr std::array<const char*, 5> svg_palette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};

inline std::string svg_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string svg_tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace detail

struct SvgLayout {
  double width = 900.0;
  double height = 560.0;
  double margin_left = 70.0;
  double margin_right = 30.0;
  double margin_top = 42.0;
  double margin_bottom = 56.0;
};

// Renders all records into one chart. Colors are assigned to the distinct
// system sizes in ascending order, cycling through the palette; every trial
// of the same N shares its color, and the legend lists one entry per N.
inline std::string render_k_series_svg(const std::vector<TrajectoryRecord>& records,
                                       const std::string& title = "damage spreading",
                                       const SvgLayout& layout = SvgLayout{}) {
  if (records.empty()) throw std::invalid_argument("render_k_series_svg: no trajectories");

  int t_max = 0;
  int k_max = 1;
  std::map<int, std::size_t> color_of_n;  // sorted by N
  for (const auto& rec : records) {
    if (rec.k_series.empty())
      throw std::invalid_argument("render_k_series_svg: empty trajectory");
    t_max = std::max(t_max, static_cast<int>(rec.k_series.size()) - 1);
    k_max = std::max(k_max, *std::max_element(rec.k_series.begin(), rec.k_series.end()));
    color_of_n.emplace(rec.n_qubits, 0);
  }
  std::size_t color_index = 0;
  for (auto& [n, idx] : color_of_n) idx = color_index++ % detail::svg_palette.size();

  const double plot_w = layout.width - layout.margin_left - layout.margin_right;
  const double plot_h = layout.height - layout.margin_top - layout.margin_bottom;
  const double x0 = layout.margin_left;
  const double y0 = layout.margin_top + plot_h;  // y axis grows downward in SVG
  auto x_of = [&](double t) { return x0 + (t_max == 0 ? 0.0 : t / t_max * plot_w); };
  auto y_of = [&](double k) { return y0 - k / k_max * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::svg_coord(layout.width)
      << "\" height=\"" << detail::svg_coord(layout.height) << "\" viewBox=\"0 0 "
      << detail::svg_coord(layout.width) << ' ' << detail::svg_coord(layout.height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  out << "<text x=\"" << detail::svg_coord(layout.width / 2) << "\" y=\"24\""
      << " text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\" fill=\"#202020\">"
      << title << "</text>\n";

  // Gridlines and tick labels at quarter intervals on both axes.
  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#404040\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double ft = t_max * (i / 4.0);
    const double fk = k_max * (i / 4.0);
    const double gx = x_of(ft);
    const double gy = y_of(fk);
    out << "<line x1=\"" << detail::svg_coord(gx) << "\" y1=\"" << detail::svg_coord(y0)
        << "\" x2=\"" << detail::svg_coord(gx) << "\" y2=\""
        << detail::svg_coord(layout.margin_top) << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<line x1=\"" << detail::svg_coord(x0) << "\" y1=\"" << detail::svg_coord(gy)
        << "\" x2=\"" << detail::svg_coord(x0 + plot_w) << "\" y2=\"" << detail::svg_coord(gy)
        << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << detail::svg_coord(gx) << "\" y=\"" << detail::svg_coord(y0 + 18)
        << "\" text-anchor=\"middle\">" << detail::svg_tick_label(ft) << "</text>\n";
    out << "<text x=\"" << detail::svg_coord(x0 - 8) << "\" y=\"" << detail::svg_coord(gy + 4)
        << "\" text-anchor=\"end\">" << detail::svg_tick_label(fk) << "</text>\n";
  }
  out << "</g>\n";

  // Axes frame and labels.
  out << "<rect x=\"" << detail::svg_coord(x0) << "\" y=\"" << detail::svg_coord(layout.margin_top)
      << "\" width=\"" << detail::svg_coord(plot_w) << "\" height=\"" << detail::svg_coord(plot_h)
      << "\" fill=\"none\" stroke=\"#202020\"/>\n";
  out << "<text x=\"" << detail::svg_coord(x0 + plot_w / 2) << "\" y=\""
      << detail::svg_coord(layout.height - 14)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\""
      << " fill=\"#202020\">t</text>\n";
  out << "<text x=\"20\" y=\"" << detail::svg_coord(layout.margin_top + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\""
      << " fill=\"#202020\" transform=\"rotate(-90 20 "
      << detail::svg_coord(layout.margin_top + plot_h / 2) << ")\">k_t</text>\n";

  for (const auto& rec : records) {
    out << "<polyline fill=\"none\" stroke=\""
        << detail::svg_palette[color_of_n.at(rec.n_qubits)]
        << "\" stroke-width=\"1.5\" stroke-opacity=\"0.85\" points=\"";
    for (std::size_t t = 0; t < rec.k_series.size(); ++t) {
      if (t != 0) out << ' ';
      out << detail::svg_coord(x_of(static_cast<double>(t))) << ','
          << detail::svg_coord(y_of(rec.k_series[t]));
    }
    out << "\"/>\n";
  }

  // Legend, one swatch per system size, top-left inside the frame.
  double ly = layout.margin_top + 16.0;
  for (const auto& [n, idx] : color_of_n) {
    const double lx = x0 + 14.0;
    out << "<line x1=\"" << detail::svg_coord(lx) << "\" y1=\"" << detail::svg_coord(ly - 4)
        << "\" x2=\"" << detail::svg_coord(lx + 26) << "\" y2=\"" << detail::svg_coord(ly - 4)
        << "\" stroke=\"" << detail::svg_palette[idx] << "\" stroke-width=\"2.5\"/>\n";
    out << "<text x=\"" << detail::svg_coord(lx + 32) << "\" y=\"" << detail::svg_coord(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#202020\">N=" << n
        << "</text>\n";
    ly += 18.0;
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace wblsense
