#pragma once

#include <string>
#include <utility>
#include <vector>

namespace smopt {

struct SvgSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

// Minimal hand-rolled SVG line chart: axes, optional log-scale y, legend.
// Produces strict XML (one polyline per series).
std::string svg_line_chart(const std::vector<SvgSeries>& series, const std::string& title,
                           const std::string& x_label, const std::string& y_label,
                           bool log_y = true, int width = 720, int height = 480);

void write_svg_chart(const std::string& path, const std::vector<SvgSeries>& series,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label, bool log_y = true);

}  // namespace smopt
