#include "memwave/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "memwave/csv.hpp"
#include "memwave/errors.hpp"

namespace memwave {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
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

std::string header(const std::string& title) {
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
       num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"16\">" + escape(title) + "</text>\n";
  return s;
}

std::string axes(const std::string& x_label, const std::string& y_label, double x0, double x1,
                 double y0, double y1, bool log_y) {
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  std::string s;
  s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
       "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = i / 4.0;
    const double px = kLeft + fx * pw;
    const double py = kTop + ph - fx * ph;
    s += "<line x1=\"" + num(px) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(px) +
         "\" y2=\"" + num(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(px) + "\" y=\"" + num(kTop + ph + 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
         tick(x0 + fx * (x1 - x0)) + "</text>\n";
    const double yv = y0 + fx * (y1 - y0);
    s += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         (log_y ? "1e" + tick(yv) : tick(yv)) + "</text>\n";
  }
  s += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 18) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
       escape(x_label) + "</text>\n";
  s += "<text x=\"18\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
       num(kTop + ph / 2) + ")\">" + escape(y_label) + "</text>\n";
  return s;
}

std::string legend_entry(int index, const std::string& color, const std::string& label,
                         bool swatch) {
  const double x = kWidth - kRight + 15;
  const double y = kTop + 10 + 20 * index;
  std::string s;
  if (swatch) {
    s += "<rect x=\"" + num(x) + "\" y=\"" + num(y - 9) + "\" width=\"14\" height=\"12\" fill=\"" +
         color + "\"/>\n";
  } else {
    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(y - 3) + "\" x2=\"" + num(x + 14) +
         "\" y2=\"" + num(y - 3) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
  }
  s += "<text x=\"" + num(x + 20) + "\" y=\"" + num(y + 1) +
       "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(label) + "</text>\n";
  return s;
}

}  // namespace

std::string render_series_svg(const SeriesPlot& plot) {
  if (plot.series.empty()) throw DataError("SVG plot: no series");
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  auto yval = [&](double y) { return plot.log_y ? std::log10(y) : y; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!plot.log_y || y > 0.0);
  };
  bool any = false;
  for (const Series& s : plot.series) {
    if (s.x.size() != s.y.size()) throw DataError("SVG plot: x and y lengths differ");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      any = true;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, yval(s.y[i]));
      y1 = std::max(y1, yval(s.y[i]));
    }
  }
  if (!any) throw DataError("SVG plot: no finite points");
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;

  std::string out = header(plot.title);
  out += axes(plot.x_label, plot.y_label, x0, x1, y0, y1, plot.log_y);
  int index = 0;
  for (const Series& s : plot.series) {
    const std::string color = kPalette[index % 8];
    out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      const double px = kLeft + (s.x[i] - x0) / (x1 - x0) * pw;
      const double py = kTop + ph - (yval(s.y[i]) - y0) / (y1 - y0) * ph;
      if (!first) out += ' ';
      out += num(px) + "," + num(py);
      first = false;
    }
    out += "\"/>\n";
    out += legend_entry(index, color, s.name, false);
    ++index;
  }
  out += "</svg>\n";
  return out;
}

std::string render_heatmap_svg(const Heatmap& map) {
  if (map.cells.empty()) throw DataError("SVG heatmap: no cells");
  if (map.columns < 1 || map.rows < 1) throw DataError("SVG heatmap: empty layout");
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const double cw = pw / map.columns;
  const double chh = ph / map.rows;
  auto color_of = [&](const std::string& cat) -> std::string {
    for (std::size_t i = 0; i < map.categories.size(); ++i) {
      if (map.categories[i] == cat) return kPalette[i % 8];
    }
    return "#bbbbbb";
  };

  std::string out = header(map.title);
  for (const HeatCell& c : map.cells) {
    const double x = kLeft + c.column * cw;
    const double y = kTop + ph - (c.row + 1) * chh;
    out += "<rect class=\"cell\" x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(cw) +
           "\" height=\"" + num(chh) + "\" fill=\"" + color_of(c.category) + "\"><title>" +
           escape(c.category) + "</title></rect>\n";
  }
  out += axes(map.x_label, map.y_label, map.x_min, map.x_max, map.y_min, map.y_max, false);
  for (std::size_t i = 0; i < map.categories.size(); ++i) {
    out += legend_entry(static_cast<int>(i), kPalette[i % 8], map.categories[i], true);
  }
  out += "</svg>\n";
  return out;
}

void write_svg(const SeriesPlot& plot, const std::string& path) {
  write_text_atomic(path, render_series_svg(plot));
}

void write_svg(const Heatmap& map, const std::string& path) {
  write_text_atomic(path, render_heatmap_svg(map));
}

}  // namespace memwave
