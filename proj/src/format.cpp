#include "qes/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace qes {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), x, std::chars_format::general, 12);
  if (result.ec != std::errc()) return "nan";
  return std::string(buffer, result.ptr);
}

double round_to_output(double x) {
  if (!std::isfinite(x)) return x;
  std::string text = format_number(x);
  double value = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), value);
  return value;
}

}  // namespace qes
