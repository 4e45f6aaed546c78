#pragma once

#include <string_view>
#include <vector>

namespace qes::cli {

/// Parses `lo:hi:step` (or a single number) into lo, lo + step, ... The upper
/// end is included when (hi - lo) / step is an integer within 1e-9.
/// Throws qes::Error(InvalidArgument) on malformed input, lo > hi or step <= 0.
std::vector<double> parse_range(std::string_view text);

}  // namespace qes::cli
