#include "qes/cli/figures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qes/variational.hpp"

namespace qes::cli {

namespace {

double max_branch_jump(const CurveTable& table) {
  double jump = 0.0;
  for (std::size_t k = 1; k < table.rows.size(); ++k)
    for (std::size_t i = 0; i < table.rows[k].roots.size(); ++i)
      jump = std::max(jump, std::abs(table.rows[k].roots[i] - table.rows[k - 1].roots[i]));
  return jump;
}

}  // namespace

Figure1Data figure1(int n, double s, std::span<const double> b_values) {
  Figure1Data data;
  data.table = curve_sweep(n, s, b_values);
  data.roots_at_zero = truncation_roots(n, s, 0.0);
  data.max_jump = max_branch_jump(data.table);

  std::vector<double> refined;
  for (std::size_t k = 0; k < b_values.size(); ++k) {
    if (k) refined.push_back(0.5 * (b_values[k - 1] + b_values[k]));
    refined.push_back(b_values[k]);
  }
  const CurveTable fine = curve_sweep(n, s, refined);
  data.max_jump_refined = max_branch_jump(fine);
  data.continuous = !data.table.any_crossing() && !fine.any_crossing() && b_values.size() > 2 &&
                    data.max_jump_refined <= 0.75 * data.max_jump;
  return data;
}

Figure2Data figure2(const Figure2Options& options) {
  Figure2Data data;
  data.options = options;
  data.levels = options.n_max + 2;

  const Polynomial top = build_truncation_polynomial(options.n_max, to_rational(options.s));
  data.line_roots = truncation_roots(top, options.n_max, options.b);
  data.line_W = truncation_energy(options.n_max, options.s, options.b);
  data.window = options.window.value_or(
      std::pair{data.line_roots.front() - options.margin, data.line_roots.back() + options.margin});
  for (double a = data.window.first; a <= data.window.second + 1e-9 * options.a_step; a += options.a_step)
    data.a_grid.push_back(a);

  RitzOptions ritz;
  ritz.basis_size = options.basis_size;
  const RitzSolver solver(options.s * options.s, ritz);
  data.basis_used = solver.reduced().size();
  data.levels = std::min(data.levels, data.basis_used);

  data.curves.reserve(data.a_grid.size());
  for (double a : data.a_grid) {
    const Eigen::VectorXd w = solver.eigenvalues(a, options.b);
    data.curves.emplace_back(w.data(), w.data() + data.levels);
  }

  for (int n = 0; n <= options.n_max; ++n) {
    const double W = truncation_energy(n, options.s, options.b);
    const auto roots = n == options.n_max ? data.line_roots : truncation_roots(n, options.s, options.b);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      TruncationPoint point{n, static_cast<int>(i) + 1, roots[i], W, -1, std::numeric_limits<double>::infinity()};
      const Eigen::VectorXd w = solver.eigenvalues(roots[i], options.b);
      for (int j = 0; j < data.levels; ++j) {
        const double d = std::abs(w[j] - W);
        if (d < point.defect) {
          point.defect = d;
          point.curve = j;
        }
      }
      data.max_defect = std::max(data.max_defect, point.defect);
      data.points.push_back(point);
    }
  }

  // W_j is increasing in a, so each curve meets the line at most once; a sign
  // change between grid nodes is refined by bisection.
  auto record = [&](int j, double a) {
    LineCrossing crossing;
    crossing.curve = j;
    crossing.a = a;
    crossing.distance = std::numeric_limits<double>::infinity();
    for (double r : data.line_roots) crossing.distance = std::min(crossing.distance, std::abs(r - a));
    crossing.matched = crossing.distance <= options.tolerance;
    data.crossings.push_back(crossing);
  };
  for (int j = 0; j < data.levels; ++j) {
    for (std::size_t k = 0; k < data.a_grid.size(); ++k) {
      double f_lo = data.curves[k][j] - data.line_W;
      if (f_lo == 0.0) {
        record(j, data.a_grid[k]);
        continue;
      }
      if (k + 1 == data.a_grid.size() || f_lo * (data.curves[k + 1][j] - data.line_W) >= 0.0) continue;
      double lo = data.a_grid[k], hi = data.a_grid[k + 1];
      while (hi - lo > 1e-13 * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = solver.eigenvalue(mid, options.b, j) - data.line_W;
        if (f_mid == 0.0) {
          lo = hi = mid;
        } else if ((f_mid < 0.0) == (f_lo < 0.0)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      record(j, 0.5 * (lo + hi));
    }
  }

  bool every_root_hit = true;
  for (double r : data.line_roots) {
    const auto hits = std::count_if(data.crossings.begin(), data.crossings.end(),
                                    [&](const LineCrossing& c) { return std::abs(c.a - r) <= options.tolerance; });
    every_root_hit = every_root_hit && hits == 1;
  }
  const bool no_extra = std::all_of(data.crossings.begin(), data.crossings.end(),
                                    [](const LineCrossing& c) { return c.matched; });
  data.passed = data.max_defect <= options.tolerance && every_root_hit && no_extra &&
                data.crossings.size() == data.line_roots.size();
  return data;
}

}  // namespace qes::cli
