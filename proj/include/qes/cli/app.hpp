#pragma once

#include <iosfwd>

namespace qes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDefect = 1;  ///< a check exceeded its tolerance or a solve failed
inline constexpr int kExitConfig = 2;  ///< bad flags, ranges or output paths

/// Entry point of the `qes` tool. Tables go to `out` unless an output file
/// or directory is configured (--out, --out-dir or QES_OUTPUT_DIR);
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qes::cli
