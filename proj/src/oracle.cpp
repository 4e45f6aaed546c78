#include "qes/oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qes {

namespace {

struct Tridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;
};

Tridiagonal discretize(const RadialParameters& p, const GridSpec& grid) {
  const int n = grid.points;
  const double h = grid.spacing();
  const double s = p.s;
  // Measure x^{2s+1} dx and flux weight x^{2s+1} after writing psi = x^s phi.
  auto antiderivative = [](double x, double power) { return std::pow(x, power) / power; };
  std::vector<double> measure(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    measure[k] = antiderivative((k + 1) * h, 2 * s + 2) - antiderivative(k * h, 2 * s + 2);
  }
  Tridiagonal t;
  t.diagonal.resize(static_cast<std::size_t>(n));
  t.off_diagonal.resize(static_cast<std::size_t>(n - 1));
  for (int k = 0; k < n; ++k) {
    const double left = k * h;
    const double right = (k + 1) * h;
    const double center = (k + 0.5) * h;
    const double flux = (std::pow(left, 2 * s + 1) + std::pow(right, 2 * s + 1)) / (h * measure[k]);
    const double coulomb =
        p.a == 0.0 ? 0.0 : p.a * (antiderivative(right, 2 * s + 1) - antiderivative(left, 2 * s + 1)) / measure[k];
    t.diagonal[k] = flux + coulomb + p.b * center + center * center;
    if (k + 1 < n) t.off_diagonal[k] = -std::pow(right, 2 * s + 1) / (h * std::sqrt(measure[k] * measure[k + 1]));
  }
  return t;
}

// Number of eigenvalues strictly below lambda (LDL^T inertia).
int count_below(const Tridiagonal& t, double lambda) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diagonal.size(); ++i) {
    const double coupling = i == 0 ? 0.0 : t.off_diagonal[i - 1] * t.off_diagonal[i - 1] / q;
    q = t.diagonal[i] - lambda - coupling;
    if (q == 0.0) q = -std::numeric_limits<double>::min();
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const Tridiagonal& t, int levels) {
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  const std::size_t n = t.diagonal.size();
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off_diagonal[i - 1]);
    if (i + 1 < n) radius += std::abs(t.off_diagonal[i]);
    lo = std::min(lo, t.diagonal[i] - radius);
    hi = std::max(hi, t.diagonal[i] + radius);
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k) {
    double left = values.empty() ? lo : values.back() - 1e-9 * std::max(1.0, std::abs(values.back()));
    double right = hi;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (left + right);
      if (mid <= left || mid >= right) break;
      if (count_below(t, mid) > k) {
        right = mid;
      } else {
        left = mid;
      }
    }
    values.push_back(0.5 * (left + right));
  }
  return values;
}

}  // namespace

GridSpec GridSpec::for_parameters(const RadialParameters& params) {
  GridSpec grid;
  if (params.b < -6.0) grid.x_max = 14.0;
  return grid;
}

std::vector<double> fd_spectrum(const RadialParameters& params, const GridSpec& grid, int levels,
                                std::optional<double> richardson_tolerance) {
  const RadialParameters p = validate(params);
  if (!(grid.x_max >= 8.0)) throw Error(ErrorKind::InvalidArgument, "grid x_max must be >= 8");
  if (grid.points < 100) throw Error(ErrorKind::InvalidArgument, "grid needs at least 100 points");
  if (levels < 1 || levels > grid.points / 4) throw Error(ErrorKind::InvalidArgument, "levels must lie in 1..points/4");

  std::vector<double> values = lowest_eigenvalues(discretize(p, grid), levels);
  if (richardson_tolerance) {
    GridSpec fine = grid;
    fine.points = 2 * grid.points;
    const std::vector<double> refined = lowest_eigenvalues(discretize(p, fine), levels);
    for (int k = 0; k < levels; ++k) {
      const double change = std::abs(values[k] - refined[k]);
      if (change > *richardson_tolerance) {
        std::ostringstream msg;
        msg << "level " << k << " moves by " << change << " under grid halving (tolerance " << *richardson_tolerance
            << ")";
        throw Error(ErrorKind::GridTooCoarse, msg.str());
      }
    }
  }
  return values;
}

std::vector<double> default_residual_sample() {
  constexpr int count = 40;
  const double lo = std::log(0.05);
  const double hi = std::log(8.0);
  std::vector<double> xs(count);
  for (int k = 0; k < count; ++k) xs[k] = std::exp(lo + (hi - lo) * k / (count - 1));
  return xs;
}

double ode_residual(const RadialParameters& params, double W, std::span<const double> coeffs,
                    std::span<const double> sample) {
  const RadialParameters p = validate(params);
  double worst = 0.0;
  double scale = 0.0;
  for (double x : sample) {
    if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "residual sample points must be positive");
    // H and its first two derivatives by Horner.
    double H = 0.0, dH = 0.0, d2H = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      d2H = d2H * x + 2.0 * dH;
      dH = dH * x + H;
      H = H * x + *it;
    }
    // psi = E H with E = x^s exp(g), g = -b x/2 - x^2/2; E' = E L, E'' = E (L^2 + L').
    const double E = std::pow(x, p.s) * std::exp(-0.5 * p.b * x - 0.5 * x * x);
    const double L = p.s / x - 0.5 * p.b - x;
    const double dL = -p.s / (x * x) - 1.0;
    const double psi = E * H;
    const double dpsi = E * (dH + L * H);
    const double d2psi = E * (d2H + 2.0 * L * dH + (L * L + dL) * H);
    const double lhs = d2psi + dpsi / x - p.gamma_sq / (x * x) * psi - p.a / x * psi - p.b * x * psi - x * x * psi +
                       W * psi;
    worst = std::max(worst, std::abs(lhs));
    scale = std::max(scale, std::abs(psi));
  }
  return scale > 0.0 ? worst / scale : worst;
}

double ode_residual(const TruncationSolution& solution, std::span<const double> sample) {
  return ode_residual(solution.params(), solution.W, solution.coeffs, sample);
}

double ode_residual(const TruncationSolution& solution) {
  const auto sample = default_residual_sample();
  return ode_residual(solution, sample);
}

double polynomial_gaussian_norm(double s, std::span<const double> coeffs) {
  double norm = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[j] == 0.0 || coeffs[k] == 0.0) continue;
      norm += coeffs[j] * coeffs[k] * moment(2.0 * s + static_cast<double>(j + k) + 1.0);
    }
  return norm;
}

double norm_check(const TruncationSolution& solution) {
  double norm = 0.0;
  if (solution.b == 0.0) {
    norm = polynomial_gaussian_norm(solution.s, solution.coeffs);
  } else {
    auto integrand = [&](double x) {
      double H = 0.0;
      for (auto it = solution.coeffs.rbegin(); it != solution.coeffs.rend(); ++it) H = H * x + *it;
      return std::pow(x, 2.0 * solution.s + 1.0) * std::exp(-solution.b * x - x * x) * H * H;
    };
    norm = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-12);
  }
  if (!std::isfinite(norm) || !(norm > 0.0)) {
    throw Error(ErrorKind::NonNormalizable, "norm integral is not finite and positive");
  }
  return norm;
}

double norm_check(const SpectrumResult& result, int level) {
  if (level < 0 || level >= result.orthonormal_vectors.cols()) {
    throw Error(ErrorKind::InvalidArgument, "level outside the computed spectrum");
  }
  // v = L^{-T} y with S = L L^T, so v^T S v = y^T y.
  const double norm = result.orthonormal_vectors.col(level).squaredNorm();
  if (!std::isfinite(norm) || !(norm > 0.0)) {
    throw Error(ErrorKind::NonNormalizable, "variational state has no finite positive norm");
  }
  return norm;
}

}  // namespace qes
