#include "qes/cli/range.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "qes/error.hpp"

namespace qes::cli {

namespace {

double parse_number(std::string_view text, std::string_view whole) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw Error(ErrorKind::InvalidArgument, "malformed range '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

std::vector<double> parse_range(std::string_view text) {
  const auto first = text.find(':');
  if (first == std::string_view::npos) return {parse_number(text, text)};
  const auto second = text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw Error(ErrorKind::InvalidArgument, "range must be lo:hi:step, got '" + std::string(text) + "'");
  }
  const double lo = parse_number(text.substr(0, first), text);
  const double hi = parse_number(text.substr(first + 1, second - first - 1), text);
  const double step = parse_number(text.substr(second + 1), text);
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "range step must be positive");
  if (lo > hi) throw Error(ErrorKind::InvalidArgument, "range needs lo <= hi");

  const double steps = (hi - lo) / step;
  if (steps > 1e7) throw Error(ErrorKind::InvalidArgument, "range has more than 1e7 points");
  const double nearest = std::round(steps);
  const auto count = static_cast<long>(std::abs(steps - nearest) <= 1e-9 ? nearest : std::floor(steps)) + 1;
  std::vector<double> values(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) values[static_cast<std::size_t>(k)] = lo + static_cast<double>(k) * step;
  if (std::abs(steps - nearest) <= 1e-9) values.back() = hi;
  return values;
}

}  // namespace qes::cli
