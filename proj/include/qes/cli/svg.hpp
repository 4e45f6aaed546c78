#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qes::cli {

/// A polyline (broken at NaN) or, with `markers`, a set of dots.
struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::optional<std::pair<double, double>> y_limits;
};

/// Self-contained SVG document; deterministic for identical input.
std::string render_svg(const Plot& plot);

}  // namespace qes::cli
