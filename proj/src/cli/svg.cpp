#include "qes/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "qes/format.hpp"

namespace qes::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
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

std::string coord(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << v;
  return s.str();
}

struct Bounds {
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

double tick_step(double span) {
  const double raw = span / 5.0;
  const double base = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * base >= raw) return m * base;
  return 10.0 * base;
}

}  // namespace

std::string render_svg(const Plot& plot) {
  Bounds bx, by;
  for (const auto& s : plot.series) {
    for (double v : s.x) bx.add(v);
    for (double v : s.y) by.add(v);
  }
  bx.finish();
  by.finish();
  if (plot.y_limits) {
    by.lo = plot.y_limits->first;
    by.hi = plot.y_limits->second;
  }
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - bx.lo) / (bx.hi - bx.lo) * pw; };
  auto py = [&](double y) { return kTop + (by.hi - y) / (by.hi - by.lo) * ph; };
  auto inside = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && y >= by.lo && y <= by.hi && x >= bx.lo && x <= bx.hi;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(plot.title) << "</text>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double xs = tick_step(bx.hi - bx.lo);
  for (double t = std::ceil(bx.lo / xs) * xs; t <= bx.hi + 1e-9 * xs; t += xs) {
    svg << "<line x1=\"" << coord(px(t)) << "\" y1=\"" << coord(kTop + ph) << "\" x2=\"" << coord(px(t))
        << "\" y2=\"" << coord(kTop + ph + 5) << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << coord(px(t)) << "\" y=\"" << coord(kTop + ph + 18) << "\" text-anchor=\"middle\">"
        << format_number(std::abs(t) < 1e-12 * xs ? 0.0 : t) << "</text>\n";
  }
  const double ys = tick_step(by.hi - by.lo);
  for (double t = std::ceil(by.lo / ys) * ys; t <= by.hi + 1e-9 * ys; t += ys) {
    svg << "<line x1=\"" << coord(kLeft - 5) << "\" y1=\"" << coord(py(t)) << "\" x2=\"" << kLeft << "\" y2=\""
        << coord(py(t)) << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(py(t) + 4) << "\" text-anchor=\"end\">"
        << format_number(std::abs(t) < 1e-12 * ys ? 0.0 : t) << "</text>\n";
  }
  svg << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"" << coord(kHeight - 10)
      << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  svg << "<text transform=\"translate(16 " << coord(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(plot.y_label) << "</text>\n";

  svg << "<clipPath id=\"frame\"><rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
      << "\" height=\"" << ph << "\"/></clipPath>\n<g clip-path=\"url(#frame)\">\n";
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* color = kPalette[k % kPalette.size()];
    const std::size_t n = std::min(s.x.size(), s.y.size());
    if (s.markers) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!inside(s.x[i], s.y[i])) continue;
        svg << "<circle cx=\"" << coord(px(s.x[i])) << "\" cy=\"" << coord(py(s.y[i])) << "\" r=\"3\" fill=\""
            << color << "\"/>\n";
      }
      continue;
    }
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << points
            << "\"/>\n";
      }
      points.clear();
    };
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += coord(px(s.x[i])) + "," + coord(py(s.y[i]));
    }
    flush();
  }
  svg << "</g>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(k);
    const char* color = kPalette[k % kPalette.size()];
    const double x = kLeft + pw + 12;
    if (plot.series[k].markers) {
      svg << "<circle cx=\"" << coord(x + 10) << "\" cy=\"" << coord(y) << "\" r=\"3\" fill=\"" << color << "\"/>";
    } else {
      svg << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(y) << "\" x2=\"" << coord(x + 20) << "\" y2=\""
          << coord(y) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>";
    }
    svg << "<text x=\"" << coord(x + 26) << "\" y=\"" << coord(y + 4) << "\">" << escape(plot.series[k].name)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace qes::cli
