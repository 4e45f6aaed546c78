#include "qes/model.hpp"

#include <cmath>
#include <sstream>

namespace qes {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeGammaSquared: return "NegativeGammaSquared";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::RootCountMismatch: return "RootCountMismatch";
    case ErrorKind::CertificationFailed: return "CertificationFailed";
    case ErrorKind::MomentDivergent: return "MomentDivergent";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::NonNormalizable: return "NonNormalizable";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::TachyonicLevel: return "TachyonicLevel";
  }
  return "Unknown";
}

RadialParameters validate(const RadialParameters& params) {
  if (!std::isfinite(params.gamma_sq) || !std::isfinite(params.a) || !std::isfinite(params.b)) {
    std::ostringstream msg;
    msg << "parameters must be finite (gamma_sq=" << params.gamma_sq << ", a=" << params.a
        << ", b=" << params.b << ")";
    throw Error(ErrorKind::NonFinite, msg.str());
  }
  if (params.gamma_sq < 0.0) {
    std::ostringstream msg;
    msg << "gamma_sq=" << params.gamma_sq << " < 0 (complex exponent regime is not modeled)";
    throw Error(ErrorKind::NegativeGammaSquared, msg.str());
  }
  RadialParameters out = params;
  out.s = std::sqrt(params.gamma_sq);
  return out;
}

RadialParameters make_parameters(double gamma_sq, double a, double b) {
  return validate(RadialParameters{gamma_sq, a, b, 0.0});
}

double effective_potential(const RadialParameters& params, double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::InvalidArgument, "effective_potential requires x > 0");
  return (params.gamma_sq - 0.25) / (x * x) + params.a / x + params.b * x + x * x;
}

}  // namespace qes
