#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qes/cli/app.hpp"
#include "qes/cli/range.hpp"
#include "qes/cli/svg.hpp"
#include "qes/error.hpp"

namespace fs = std::filesystem;
using namespace qes::cli;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run qes_run(std::vector<std::string> args) {
  args.insert(args.begin(), "qes");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qes_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("range syntax") {
  CHECK(parse_range("0:1:0.25") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto r = parse_range("0.1:5:0.1");
  CHECK(r.size() == 50);
  CHECK(r.back() == 5.0);
  CHECK(parse_range("0:1:0.3").size() == 4);  // 1 is not on the lattice
  CHECK(parse_range("2.5") == std::vector<double>{2.5});
  CHECK(parse_range("-4:4:0.05").size() == 161);
  CHECK(parse_range("3:3:1") == std::vector<double>{3.0});
  for (const char* bad : {"1:0:0.1", "0:1:0", "0:1:-1", "0:1", "a:1:0.1", "0:1:0.1:2", ""}) {
    CHECK_THROWS_AS(parse_range(bad), qes::Error);
  }
}

TEST_CASE("truncate example") {
  const Run r = qes_run({"truncate", "--n", "1", "--s", "0", "--b", "0"});
  CHECK(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(header == "n,i,a,W,tail,residual");
  CHECK(first.rfind("1,1,-1.41421356237,4,", 0) == 0);
  CHECK(second.rfind("1,2,1.41421356237,4,", 0) == 0);
}

TEST_CASE("config errors exit with 2") {
  CHECK(qes_run({"curves", "--b-range", "1:0:0.1"}).code == kExitConfig);
  CHECK(qes_run({"truncate"}).code == kExitConfig);
  CHECK(qes_run({"nonsense"}).code == kExitConfig);
  CHECK(qes_run({"--format", "xml", "truncate", "--n", "1"}).code == kExitConfig);
  CHECK(qes_run({"spectrum", "--gamma-sq", "-1"}).code == kExitConfig);
  CHECK(qes_run({"scan", "--scenario", "3"}).code == kExitConfig);
  CHECK(qes_run({"scan", "--scenario", "1", "--sigma", "0"}).code == kExitConfig);
  const Run r = qes_run({"scenario", "--scenario", "1", "--coupling", "0.3"});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("NegativeGammaSquared") != std::string::npos);
  CHECK(qes_run({"--help"}).code == kExitOk);
}

TEST_CASE("acceptance defects exit with 1") {
  const Run r = qes_run({"verify-figure2", "--n-max", "2", "--tolerance", "1e-30"});
  CHECK(r.code == kExitDefect);
  CHECK(r.err.find("figure check failed") != std::string::npos);
}

TEST_CASE("files, sidecars and determinism") {
  const fs::path dir = scratch("files");
  const Run first = qes_run({"--out-dir", dir.string(), "curves", "--n", "2", "--b-range", "-1:1:0.5"});
  CHECK(first.code == kExitOk);
  CHECK(first.out.empty());
  const std::string csv = slurp(dir / "curves.csv");
  CHECK(csv.rfind("b,a_1,a_2,a_3\n-1,", 0) == 0);
  const auto meta = nlohmann::json::parse(slurp(dir / "curves.csv.meta.json"));
  CHECK(meta["command"] == "curves");
  CHECK(meta["parameters"]["n"] == 2);
  CHECK(meta["versions"].contains("qes"));
  CHECK(meta["tolerances"].contains("root_bracket"));
  for (const auto& entry : fs::directory_iterator(dir)) CHECK(entry.path().extension() != ".tmp");

  const Run second = qes_run({"--out-dir", dir.string(), "curves", "--n", "2", "--b-range", "-1:1:0.5"});
  CHECK(second.code == kExitOk);
  CHECK(slurp(dir / "curves.csv") == csv);
  fs::remove_all(dir);
}

TEST_CASE("explicit output file and secondary artifacts") {
  const fs::path dir = scratch("explicit");
  fs::create_directories(dir);
  const fs::path target = dir / "fig2.csv";
  const Run r = qes_run({"verify-figure2", "--n-max", "3", "--out", target.string()});
  CHECK(r.code == kExitOk);
  CHECK(fs::exists(target));
  CHECK(fs::exists(dir / "fig2_curves.csv"));
  CHECK(fs::exists(dir / "fig2_crossings.csv"));
  CHECK(fs::exists(dir / "fig2.csv.meta.json"));
  const auto meta = nlohmann::json::parse(slurp(dir / "fig2.csv.meta.json"));
  CHECK(meta["basis_size"] == 30);
  CHECK(meta["passed"] == true);
  fs::remove_all(dir);
}

TEST_CASE("output directory from the environment") {
  const fs::path dir = scratch("env");
  ::setenv("QES_OUTPUT_DIR", dir.string().c_str(), 1);
  const Run r = qes_run({"--format", "json", "truncate", "--n", "0", "--b", "1"});
  ::unsetenv("QES_OUTPUT_DIR");
  CHECK(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(slurp(dir / "truncate.json"));
  CHECK(doc["columns"][2] == "a");
  CHECK(doc["rows"][0][2].get<double>() == doctest::Approx(-0.5));
  fs::remove_all(dir);
}

TEST_CASE("svg output") {
  const Run r = qes_run({"--format", "svg", "curves", "--n", "3", "--b-range", "-4:4:0.5"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("<svg", 0) == 0);
  CHECK(r.out.find("<polyline") != std::string::npos);
  CHECK(r.out.find("a_4") != std::string::npos);

  Plot plot{"t", "x", "y", {{"gap", {0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, std::nan(""), 3.0}, false}}, std::nullopt};
  const std::string svg = render_svg(plot);
  std::size_t lines = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++lines;
  CHECK(lines == 2);
  CHECK(render_svg(plot) == svg);
}

TEST_CASE("scan of the decoupled oscillator") {
  const Run r = qes_run({"scan", "--scenario", "1", "--omega", "0.1:5:0.1", "--m", "1", "--l", "0", "--sigma", "1",
                         "--coupling", "0"});
  CHECK(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "omega,E_particle,E_antiparticle,W,defect");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream cells(line);
    std::string omega, e, anti;
    std::getline(cells, omega, ',');
    std::getline(cells, e, ',');
    std::getline(cells, anti, ',');
    CHECK(e == "1");
    CHECK(anti == "-1");
  }
  CHECK(rows == 50);
}

TEST_CASE("hellmann and scenario commands") {
  const Run hf = qes_run({"--format", "json", "hellmann", "--a", "0", "--b", "0"});
  CHECK(hf.code == kExitOk);
  const auto doc = nlohmann::json::parse(hf.out);
  CHECK(doc["rows"][0][2].get<double>() == doctest::Approx(1.7724538509));
  const Run sc = qes_run({"scenario", "--scenario", "2", "--m", "1", "--omega", "0.8", "--l", "1", "--sigma", "-1",
                          "--coupling", "0.5", "--level", "1"});
  CHECK(sc.code == kExitOk);
  CHECK(sc.out.find("particle,") != std::string::npos);
  CHECK(sc.out.find("antiparticle,-") != std::string::npos);
}
