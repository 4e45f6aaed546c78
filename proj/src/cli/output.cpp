#include "qes/cli/output.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <Eigen/Core>
#include <boost/version.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "qes/error.hpp"

#ifndef QES_VERSION
#define QES_VERSION "0.0.0"
#endif

namespace qes::cli {

namespace fs = std::filesystem;

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  if (text == "svg") return Format::Svg;
  throw Error(ErrorKind::InvalidArgument, "unknown format '" + text + "' (csv, json, svg)");
}

std::string extension(Format format) {
  switch (format) {
    case Format::Csv: return ".csv";
    case Format::Json: return ".json";
    case Format::Svg: return ".svg";
  }
  return ".csv";
}

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorKind::InvalidArgument, "cannot create directory " + path.parent_path().string());
  }
  fs::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + temp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for " + temp.string());
  }
  std::error_code ec;
  fs::rename(temp, path, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw Error(ErrorKind::InvalidArgument, "cannot rename onto " + path.string());
  }
}

nlohmann::ordered_json module_versions() {
  nlohmann::ordered_json v;
  v["qes"] = QES_VERSION;
  v["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  v["gmp"] = gmp_version;
  v["mpfr"] = mpfr_get_version();
  v["boost"] = std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000) + "." +
               std::to_string(BOOST_VERSION % 100);
  return v;
}

std::string render(const Artifact& artifact, Format format) {
  std::ostringstream out;
  if (format == Format::Json) {
    out << (artifact.document ? *artifact.document : to_json(artifact.table)).dump(2) << "\n";
  } else if (format == Format::Svg && artifact.plot) {
    out << render_svg(*artifact.plot);
  } else {
    write_csv(out, artifact.table);
  }
  return out.str();
}

OutputTarget::OutputTarget(std::optional<fs::path> file, std::optional<fs::path> directory, Format format,
                           std::ostream& console)
    : file_(std::move(file)), directory_(std::move(directory)), format_(format), console_(&console) {}

fs::path OutputTarget::path_for(const std::string& stem, const std::string& suffix) const {
  if (file_) {
    if (suffix.empty()) return *file_;
    fs::path p = *file_;
    const std::string ext = p.extension().string();
    p.replace_extension();
    p += "_" + suffix + ext;
    return p;
  }
  return *directory_ / (stem + (suffix.empty() ? "" : "_" + suffix));
}

std::vector<fs::path> OutputTarget::emit(const std::string& stem, const std::vector<Artifact>& artifacts,
                                         const nlohmann::ordered_json& metadata) const {
  std::vector<fs::path> written;
  if (!file_ && !directory_) {
    if (!artifacts.empty()) *console_ << render(artifacts.front(), format_);
    return written;
  }
  for (const auto& artifact : artifacts) {
    const Format fmt = format_ == Format::Svg && !artifact.plot ? Format::Csv : format_;
    fs::path path = path_for(stem, artifact.suffix);
    if (!file_ || !artifact.suffix.empty()) {
      if (!file_) path += extension(fmt);
      else path.replace_extension(extension(fmt));
    }
    write_atomic(path, render(artifact, fmt));
    nlohmann::ordered_json meta = metadata;
    meta["file"] = path.filename().string();
    meta["format"] = extension(fmt).substr(1);
    meta["versions"] = module_versions();
    fs::path sidecar = path;
    sidecar += ".meta.json";
    write_atomic(sidecar, meta.dump(2) + "\n");
    written.push_back(path);
  }
  return written;
}

}  // namespace qes::cli
