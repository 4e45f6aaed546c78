#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qes/cli/svg.hpp"
#include "qes/cli/table.hpp"

namespace qes::cli {

enum class Format { Csv, Json, Svg };

Format parse_format(const std::string& text);
std::string extension(Format format);

/// One emitted file. `suffix` distinguishes secondary artifacts of a command
/// (empty for the primary one). SVG falls back to CSV when no plot is given.
struct Artifact {
  std::string suffix;
  Table table;
  std::optional<Plot> plot;
  std::optional<nlohmann::ordered_json> document;  ///< replaces the table in JSON output
};

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Library and build versions recorded in every sidecar.
nlohmann::ordered_json module_versions();

std::string render(const Artifact& artifact, Format format);

/// Where a command's artifacts go: an explicit file, a directory, or stdout
/// (primary artifact only, no sidecar).
class OutputTarget {
 public:
  OutputTarget(std::optional<std::filesystem::path> file, std::optional<std::filesystem::path> directory,
               Format format, std::ostream& console);

  /// Emits each artifact with a `<file>.meta.json` sidecar holding `metadata`.
  /// Returns the paths written.
  std::vector<std::filesystem::path> emit(const std::string& stem, const std::vector<Artifact>& artifacts,
                                          const nlohmann::ordered_json& metadata) const;

  Format format() const { return format_; }

 private:
  std::filesystem::path path_for(const std::string& stem, const std::string& suffix) const;

  std::optional<std::filesystem::path> file_;
  std::optional<std::filesystem::path> directory_;
  Format format_;
  std::ostream* console_;
};

}  // namespace qes::cli
