#include "smopt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace smopt {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string xml_escape(const std::string& s) {
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

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string svg_line_chart(const std::vector<SvgSeries>& series, const std::string& title,
                           const std::string& x_label, const std::string& y_label, bool log_y,
                           int width, int height) {
  const double ml = 70, mr = 20, mt = 40, mb = 55;  // margins
  const double pw = width - ml - mr, ph = height - mt - mb;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const SvgSeries& s : series) {
    for (auto [x, y] : s.points) {
      if (log_y && y <= 0) continue;
      double yy = log_y ? std::log10(y) : y;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, yy);
      ymax = std::max(ymax, yy);
    }
  }
  if (!(xmin < xmax)) xmax = xmin + 1;
  if (!(ymin < ymax)) ymax = ymin + 1;

  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) {
    double yy = log_y ? std::log10(y) : y;
    return mt + (1 - (yy - ymin) / (ymax - ymin)) * ph;
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
     << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
     << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
     << xml_escape(title) << "</text>\n";

  // axes
  os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
     << mt + ph << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
     << "\" stroke=\"black\"/>\n";

  // ticks (5 per axis)
  for (int i = 0; i <= 5; ++i) {
    double tx = xmin + i * (xmax - xmin) / 5;
    double X = px(tx);
    os << "<line x1=\"" << X << "\" y1=\"" << mt + ph << "\" x2=\"" << X << "\" y2=\""
       << mt + ph + 5 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << X << "\" y=\"" << mt + ph + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(tx) << "</text>\n";
    double tyv = ymin + i * (ymax - ymin) / 5;
    double Y = mt + (1 - (double)i / 5) * ph;
    std::string label = log_y ? ("1e" + fmt(tyv)) : fmt(tyv);
    os << "<line x1=\"" << ml - 5 << "\" y1=\"" << Y << "\" x2=\"" << ml << "\" y2=\"" << Y
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << ml - 8 << "\" y=\"" << Y + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << label << "</text>\n";
  }
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-size=\"13\">" << xml_escape(x_label) << "</text>\n"
     << "<text x=\"18\" y=\"" << mt + ph / 2 << "\" text-anchor=\"middle\" font-size=\"13\""
     << " transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << xml_escape(y_label)
     << "</text>\n";

  // series
  for (size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % 8];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (auto [x, y] : series[si].points) {
      if (log_y && y <= 0) continue;
      os << (first ? "" : " ") << fmt(px(x)) << "," << fmt(py(y));
      first = false;
    }
    os << "\"/>\n";
    // legend
    double ly = mt + 14 + 18 * (double)si;
    os << "<line x1=\"" << ml + pw - 130 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw - 105
       << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << ml + pw - 100 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
       << xml_escape(series[si].name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_svg_chart(const std::string& path, const std::vector<SvgSeries>& series,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label, bool log_y) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_svg_chart: cannot open " + path);
  f << svg_line_chart(series, title, x_label, y_label, log_y);
}

}  // namespace smopt
