#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qes/model.hpp"
#include "qes/recurrence.hpp"
#include "qes/variational.hpp"

/// Independent checks: a finite-difference eigensolver that shares nothing
/// with the Ritz path, and direct substitution of closed-form solutions
/// into the differential equation.
namespace qes {

struct GridSpec {
  double x_max = 10.0;
  int points = 4000;

  /// Cell width h. The cells tile [0, x_max] with centers at (k - 1/2) h,
  /// k = 1..points; u vanishes at the ghost center x_max + h/2, so doubling
  /// `points` halves h exactly.
  double spacing() const { return x_max / points; }

  /// Default grid, widened to x_max = 14 when b < -6 pushes the states out.
  static GridSpec for_parameters(const RadialParameters& params);
};

/// Lowest `levels` eigenvalues of the transformed problem
/// -u'' + [(gamma^2 - 1/4)/x^2 + a/x + b x + x^2] u = W u, u = sqrt(x) psi,
/// Dirichlet at both ends.
///
/// The discretization is the 3-point conservative (finite-volume) form of
/// that operator on a cell-centered grid with the x^s behaviour at the origin
/// factored out: cell measures and the a/x average are integrated exactly,
/// the smooth potential is sampled at cell centers. The result is a
/// symmetric tridiagonal matrix whose eigenvalues converge as O(h^2) for
/// every s >= 0. Eigenvalues are found by Sturm-count bisection.
///
/// With a Richardson tolerance, the grid is also solved at h/2 and
/// GridTooCoarse is thrown when any requested level moves by more than it.
std::vector<double> fd_spectrum(const RadialParameters& params, const GridSpec& grid, int levels,
                                std::optional<double> richardson_tolerance = std::nullopt);

/// 40 log-spaced points in [0.05, 8].
std::vector<double> default_residual_sample();

/// max_x |LHS of the ODE| / max_x |psi| for psi = x^s exp(-b x/2 - x^2/2)
/// sum_j coeffs[j] x^j, with derivatives taken analytically.
double ode_residual(const RadialParameters& params, double W, std::span<const double> coeffs,
                    std::span<const double> sample);
double ode_residual(const TruncationSolution& solution, std::span<const double> sample);
double ode_residual(const TruncationSolution& solution);

/// int_0^inf |psi|^2 x dx. Closed form through Gaussian moments when b = 0,
/// adaptive quadrature otherwise.
double norm_check(const TruncationSolution& solution);
/// Same closed form for an explicit (s, coeffs) with b = 0.
double polynomial_gaussian_norm(double s, std::span<const double> coeffs);
/// v^T S v for a variational state.
double norm_check(const SpectrumResult& result, int level);

}  // namespace qes
