#include "axtnn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "axtnn/common.hpp"

namespace axtnn {

namespace {

struct Frame {
  int width, height;
  static constexpr int margin_left = 70, margin_right = 20, margin_top = 20, margin_bottom = 50;
  double x_lo, x_hi, y_lo, y_hi;

  double px(double x) const {
    double span = x_hi - x_lo;
    if (span <= 0) span = 1;
    return margin_left + (x - x_lo) / span * (width - margin_left - margin_right);
  }
  double py(double y) const {
    double span = y_hi - y_lo;
    if (span <= 0) span = 1;
    return height - margin_bottom - (y - y_lo) / span * (height - margin_top - margin_bottom);
  }
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

void axes(std::ostringstream& out, const Frame& f, const std::string& x_label,
          const std::string& y_label) {
  out << "<rect width='" << f.width << "' height='" << f.height << "' fill='white'/>\n";
  out << "<line x1='" << f.margin_left << "' y1='" << f.height - f.margin_bottom << "' x2='"
      << f.width - f.margin_right << "' y2='" << f.height - f.margin_bottom
      << "' stroke='black'/>\n";
  out << "<line x1='" << f.margin_left << "' y1='" << f.margin_top << "' x2='" << f.margin_left
      << "' y2='" << f.height - f.margin_bottom << "' stroke='black'/>\n";
  for (int i = 0; i <= 4; ++i) {
    double xv = f.x_lo + (f.x_hi - f.x_lo) * i / 4;
    double yv = f.y_lo + (f.y_hi - f.y_lo) * i / 4;
    out << "<text x='" << f.px(xv) << "' y='" << f.height - f.margin_bottom + 16
        << "' font-size='10' text-anchor='middle'>" << fmt(xv) << "</text>\n";
    out << "<text x='" << f.margin_left - 6 << "' y='" << f.py(yv) + 3
        << "' font-size='10' text-anchor='end'>" << fmt(yv) << "</text>\n";
  }
  out << "<text x='" << (f.margin_left + f.width - f.margin_right) / 2 << "' y='"
      << f.height - 12 << "' font-size='12' text-anchor='middle'>" << x_label << "</text>\n";
  out << "<text x='14' y='" << (f.margin_top + f.height - f.margin_bottom) / 2
      << "' font-size='12' text-anchor='middle' transform='rotate(-90 14 "
      << (f.margin_top + f.height - f.margin_bottom) / 2 << ")'>" << y_label << "</text>\n";
}

}  // namespace

std::string svg_scatter(const std::vector<ScatterSeries>& series, const std::string& x_label,
                        const std::string& y_label, int width, int height) {
  Frame f{width, height, 0, 1, 0, 1};
  bool first = true;
  for (const auto& s : series)
    for (auto [x, y] : s.points) {
      if (first) {
        f.x_lo = f.x_hi = x;
        f.y_lo = f.y_hi = y;
        first = false;
      }
      f.x_lo = std::min(f.x_lo, x);
      f.x_hi = std::max(f.x_hi, x);
      f.y_lo = std::min(f.y_lo, y);
      f.y_hi = std::max(f.y_hi, y);
    }
  double x_pad = (f.x_hi - f.x_lo) * 0.05 + 1e-12, y_pad = (f.y_hi - f.y_lo) * 0.05 + 1e-12;
  f.x_lo -= x_pad;
  f.x_hi += x_pad;
  f.y_lo -= y_pad;
  f.y_hi += y_pad;

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "'>\n";
  axes(out, f, x_label, y_label);
  int legend_y = f.margin_top + 8;
  for (const auto& s : series) {
    if (s.staircase && s.points.size() > 1) {
      auto sorted = s.points;
      std::sort(sorted.begin(), sorted.end());
      out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1' points='";
      for (size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0) out << fmt(f.px(sorted[i].first)) << "," << fmt(f.py(sorted[i - 1].second)) << " ";
        out << fmt(f.px(sorted[i].first)) << "," << fmt(f.py(sorted[i].second)) << " ";
      }
      out << "'/>\n";
    }
    for (auto [x, y] : s.points)
      out << "<circle cx='" << fmt(f.px(x)) << "' cy='" << fmt(f.py(y)) << "' r='3' fill='"
          << s.color << "' fill-opacity='0.8'/>\n";
    out << "<circle cx='" << width - 150 << "' cy='" << legend_y << "' r='3' fill='" << s.color
        << "'/>\n";
    out << "<text x='" << width - 142 << "' y='" << legend_y + 3 << "' font-size='11'>" << s.label
        << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
  return out.str();
}

std::string svg_boxplot(const std::vector<BoxStats>& boxes, const std::string& y_label, int width,
                        int height) {
  Frame f{width, height, 0, static_cast<double>(boxes.size()), 0, 1};
  bool first = true;
  for (const auto& b : boxes) {
    if (first) {
      f.y_lo = b.min;
      f.y_hi = b.max;
      first = false;
    }
    f.y_lo = std::min(f.y_lo, b.min);
    f.y_hi = std::max(f.y_hi, b.max);
  }
  double pad = (f.y_hi - f.y_lo) * 0.1 + 1e-12;
  f.y_lo -= pad;
  f.y_hi += pad;

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "'>\n";
  axes(out, f, "", y_label);
  for (size_t i = 0; i < boxes.size(); ++i) {
    const BoxStats& b = boxes[i];
    double cx = f.px(i + 0.5);
    double half = (f.px(1) - f.px(0)) * 0.2;
    out << "<line x1='" << cx << "' y1='" << f.py(b.min) << "' x2='" << cx << "' y2='"
        << f.py(b.max) << "' stroke='black'/>\n";
    out << "<rect x='" << cx - half << "' y='" << f.py(b.q3) << "' width='" << 2 * half
        << "' height='" << f.py(b.q1) - f.py(b.q3) << "' fill='#7fb3d5' stroke='black'/>\n";
    out << "<line x1='" << cx - half << "' y1='" << f.py(b.median) << "' x2='" << cx + half
        << "' y2='" << f.py(b.median) << "' stroke='black' stroke-width='2'/>\n";
    out << "<text x='" << cx << "' y='" << f.height - f.margin_bottom + 16
        << "' font-size='10' text-anchor='middle'>" << b.label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

}  // namespace axtnn
