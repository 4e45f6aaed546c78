#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qes::cli {

struct ReportOptions {
  int basis_size = 30;
  int fd_points = 4000;
  std::uint64_t seed = 20240517;
};

struct CheckOutcome {
  std::string id;
  std::string title;
  bool passed = false;
  nlohmann::ordered_json details;
};

/// Runs the full verification suite: printed truncation polynomials,
/// real-rootedness, both figures, oscillator limits, the closed-form
/// solution, Hellmann-Feynman, cross-solver agreement, frequency scans and
/// variational monotonicity.
std::vector<CheckOutcome> run_report(const ReportOptions& options);

nlohmann::ordered_json report_document(const std::vector<CheckOutcome>& checks, const ReportOptions& options);

}  // namespace qes::cli
