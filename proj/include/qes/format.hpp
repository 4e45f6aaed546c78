#pragma once

#include <string>

namespace qes {

/// Fixed float formatting used by every emitted table: 12 significant
/// digits, `.` decimal point, independent of the global locale.
std::string format_number(double x);

/// Value of format_number(x) read back as a double, for serializers that
/// print shortest round-trip representations.
double round_to_output(double x);

}  // namespace qes
