#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qes {

enum class ErrorKind {
  NegativeGammaSquared,
  NonFinite,
  InvalidArgument,
  RootCountMismatch,
  CertificationFailed,
  MomentDivergent,
  IllConditioned,
  GridTooCoarse,
  NonNormalizable,
  NoRoot,
  TachyonicLevel,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI exit-code mapping, the Python layer) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qes
