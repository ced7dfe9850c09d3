#pragma once

// Minimal standalone SVG emitters for line plots and categorical heatmaps.
// Output bytes depend only on the input.

#include <string>
#include <vector>

namespace memwave {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct SeriesPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  bool log_y = false;  ///< plot log10 of positive values; others are skipped
};

struct HeatCell {
  int column = 0;
  int row = 0;
  std::string category;
};

struct Heatmap {
  std::string title;
  std::string x_label;
  std::string y_label;
  int columns = 1;
  int rows = 1;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  std::vector<HeatCell> cells;
  /// Legend order; categories not listed get a grey swatch.
  std::vector<std::string> categories;
};

std::string render_series_svg(const SeriesPlot& plot);
std::string render_heatmap_svg(const Heatmap& map);

/// Raise DataError on empty input and IoError when the path is unwritable.
void write_svg(const SeriesPlot& plot, const std::string& path);
void write_svg(const Heatmap& map, const std::string& path);

}  // namespace memwave
