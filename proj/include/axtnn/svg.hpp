#pragma once

#include <string>
#include <vector>

namespace axtnn {

/// Minimal SVG emitters for the report plots. No timestamps; byte-identical
/// output for identical inputs.

struct ScatterSeries {
  std::string label;
  std::string color;
  bool staircase = false;  // connect points as a Pareto staircase
  std::vector<std::pair<double, double>> points;
};

std::string svg_scatter(const std::vector<ScatterSeries>& series, const std::string& x_label,
                        const std::string& y_label, int width = 640, int height = 440);

struct BoxStats {
  std::string label;
  double min, q1, median, q3, max;
};

std::string svg_boxplot(const std::vector<BoxStats>& boxes, const std::string& y_label,
                        int width = 640, int height = 440);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace axtnn
