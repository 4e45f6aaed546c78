#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qes/recurrence.hpp"

namespace qes::cli {

/// Branches a^{(n,i)}(b) and their continuity diagnostics.
struct Figure1Data {
  CurveTable table;
  std::vector<double> roots_at_zero;  ///< roots at b = 0, computed directly
  double max_jump = 0.0;              ///< largest |a(b_{k+1}) - a(b_k)| over all branches
  double max_jump_refined = 0.0;      ///< same on the grid with midpoints inserted
  bool continuous = false;            ///< no crossing, and the jump shrinks on refinement
};

Figure1Data figure1(int n, double s, std::span<const double> b_values);

struct Figure2Options {
  double s = 0.0;
  double b = 1.0;
  int n_max = 8;
  int basis_size = 30;
  double margin = 4.0;  ///< window padding around the extreme level-n_max roots
  double a_step = 0.05;
  std::optional<std::pair<double, double>> window;
  double tolerance = 1e-5;
};

struct TruncationPoint {
  int n = 0;
  int i = 0;
  double a = 0.0;
  double W = 0.0;
  int curve = -1;  ///< index j of the nearest variational level
  double defect = 0.0;
};

struct LineCrossing {
  int curve = 0;
  double a = 0.0;
  double distance = 0.0;  ///< to the nearest level-n_max root
  bool matched = false;
};

struct Figure2Data {
  Figure2Options options;
  int basis_used = 0;
  int levels = 0;
  std::pair<double, double> window;
  std::vector<double> a_grid;
  std::vector<std::vector<double>> curves;  ///< curves[k][j] = W_j(a_grid[k])
  std::vector<TruncationPoint> points;
  double line_W = 0.0;
  std::vector<double> line_roots;
  std::vector<LineCrossing> crossings;
  double max_defect = 0.0;
  bool passed = false;
};

/// Variational curves W_j(a, b), the truncation points for n <= n_max, and
/// the intersections of W = W^{(n_max)} with every computed curve.
Figure2Data figure2(const Figure2Options& options);

}  // namespace qes::cli
