#pragma once

#include <cstddef>

#include "qes/error.hpp"

/// Dimensionless singular oscillator
///
///   psi'' + psi'/x - (gamma^2/x^2) psi - (a/x) psi - b x psi - x^2 psi + W psi = 0,
///
/// on x in (0, inf) with weight x dx. All solver modules operate on this
/// problem; the physical scenarios map onto it.
namespace qes {

struct RadialParameters {
  double gamma_sq = 0.0;  ///< coefficient of the 1/x^2 term
  double a = 0.0;         ///< Coulomb coefficient
  double b = 0.0;         ///< linear coefficient
  double s = 0.0;         ///< |gamma|, derived from gamma_sq by validate()
};

/// Eigenvalue W at ordering index `level` for fixed parameters.
struct SpectralPoint {
  double W = 0.0;
  std::size_t level = 0;
  RadialParameters params;
};

/// Checks finiteness and gamma_sq >= 0 and fills in s. Throws Error with
/// kind NonFinite or NegativeGammaSquared.
RadialParameters validate(const RadialParameters& params);

/// Convenience for validate({gamma_sq, a, b}).
RadialParameters make_parameters(double gamma_sq, double a, double b);

/// Potential of the Liouville-transformed equation for u = sqrt(x) psi:
/// (gamma^2 - 1/4)/x^2 + a/x + b x + x^2. Requires x > 0.
double effective_potential(const RadialParameters& params, double x);

}  // namespace qes
