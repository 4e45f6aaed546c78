#include "qes/cli/app.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include "qes/cli/figures.hpp"
#include "qes/cli/output.hpp"
#include "qes/cli/range.hpp"
#include "qes/cli/report.hpp"
#include "qes/format.hpp"
#include "qes/oracle.hpp"
#include "qes/physics.hpp"
#include "qes/recurrence.hpp"
#include "qes/variational.hpp"

namespace qes::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kEnergyDefectTolerance = 1e-6;
constexpr double kHellmannTolerance = 1e-3;

struct Globals {
  std::string format = "csv";
  std::string out_file;
  std::string out_dir;
  int basis = 30;
};

struct Outcome {
  std::string stem;
  std::vector<Artifact> artifacts;
  json metadata;
  int status = kExitOk;
  std::vector<std::string> diagnostics;
};

json range_json(const std::vector<double>& v) {
  return {{"lo", json_number(v.front())}, {"hi", json_number(v.back())}, {"count", v.size()}};
}

Plot line_plot(const Table& table, std::string title, std::string x_label, std::string y_label,
               std::size_t first_column = 1, std::size_t last_column = std::numeric_limits<std::size_t>::max()) {
  Plot plot{std::move(title), std::move(x_label), std::move(y_label), {}, std::nullopt};
  const auto xs = table.column(0);
  for (std::size_t c = first_column; c < table.columns.size() && c < last_column; ++c)
    plot.series.push_back({table.columns[c], xs, table.column(c), false});
  return plot;
}

// ---- truncate --------------------------------------------------------------

struct TruncateArgs {
  int n = 0;
  double s = 0.0;
  double b = 0.0;
};

Outcome run_truncate(const TruncateArgs& args) {
  if (args.n < 0 || args.n > kMaxTruncationLevel) {
    throw Error(ErrorKind::InvalidArgument, "--n must lie in 0.." + std::to_string(kMaxTruncationLevel));
  }
  if (!(args.s >= 0.0)) throw Error(ErrorKind::InvalidArgument, "--s must be >= 0");
  Outcome o;
  o.stem = "truncate";
  Table t{{"n", "i", "a", "W", "tail", "residual"}, {}};
  for (int i = 1; i <= args.n + 1; ++i) {
    const TruncationSolution sol = assemble_polynomial_solution(args.n, i, args.s, args.b);
    t.add_row({double(args.n), double(i), sol.a_root, sol.W, sol.tail, ode_residual(sol)});
  }
  o.artifacts.push_back({"", t, std::nullopt, std::nullopt});
  o.metadata = {{"parameters", {{"n", args.n}, {"s", json_number(args.s)}, {"b", json_number(args.b)}}},
                {"tolerances", {{"root_bracket", 1e-12}, {"tail", kTailTolerance}}}};
  return o;
}

// ---- curves / verify-figure1 ----------------------------------------------

struct CurvesArgs {
  int n = 3;
  double s = 0.0;
  std::string b_range = "-4:4:0.05";
};

Table curve_table(const CurveTable& curves) {
  Table t;
  t.columns.push_back("b");
  for (int i = 1; i <= curves.n + 1; ++i) t.columns.push_back("a_" + std::to_string(i));
  for (const auto& row : curves.rows) {
    std::vector<Cell> cells{row.b};
    for (double r : row.roots) cells.emplace_back(r);
    t.add_row(std::move(cells));
  }
  return t;
}

Outcome run_curves(const CurvesArgs& args) {
  if (args.n < 0 || args.n > kMaxTruncationLevel) throw Error(ErrorKind::InvalidArgument, "--n out of range");
  if (!(args.s >= 0.0)) throw Error(ErrorKind::InvalidArgument, "--s must be >= 0");
  const auto bs = parse_range(args.b_range);
  const CurveTable curves = curve_sweep(args.n, args.s, bs);
  Outcome o;
  o.stem = "curves";
  const Table t = curve_table(curves);
  o.artifacts.push_back({"", t, line_plot(t, "a(b) branches, n = " + std::to_string(args.n), "b", "a"), std::nullopt});
  json crossings = json::array();
  for (const auto& row : curves.rows)
    if (row.branch_crossing) crossings.push_back(json_number(row.b));
  o.metadata = {{"parameters", {{"n", args.n}, {"s", json_number(args.s)}, {"b_range", range_json(bs)}}},
                {"tolerances", {{"root_bracket", 1e-12}, {"branch_crossing", 1e-6}}},
                {"branch_crossings", crossings}};
  return o;
}

Outcome run_figure1(const std::string& b_range) {
  const auto bs = parse_range(b_range);
  const Figure1Data data = figure1(3, 0.0, bs);
  const double expected[] = {-6.090, -1.706, 1.706, 6.090};
  Outcome o;
  o.stem = "figure1";
  const Table t = curve_table(data.table);
  o.artifacts.push_back({"", t, line_plot(t, "Curves a_0^(3,i)(b)", "b", "a"), std::nullopt});
  Table roots{{"i", "a_at_b0", "expected", "deviation"}, {}};
  double worst = 0.0;
  for (std::size_t i = 0; i < data.roots_at_zero.size(); ++i) {
    const double d = std::abs(data.roots_at_zero[i] - expected[i]);
    worst = std::max(worst, d);
    roots.add_row({double(i + 1), data.roots_at_zero[i], expected[i], d});
  }
  o.artifacts.push_back({"roots", roots, std::nullopt, std::nullopt});
  o.metadata = {{"parameters", {{"n", 3}, {"s", 0}, {"b_range", range_json(bs)}}},
                {"tolerances", {{"root_at_b0", 1e-3}, {"root_bracket", 1e-12}}},
                {"max_jump", json_number(data.max_jump)},
                {"max_jump_refined", json_number(data.max_jump_refined)},
                {"continuous", data.continuous}};
  if (!data.continuous) {
    o.status = kExitDefect;
    o.diagnostics.push_back("branches are not continuous on the sampled b grid");
  }
  if (worst > 1e-3) {
    o.status = kExitDefect;
    o.diagnostics.push_back("roots at b = 0 deviate by " + format_number(worst));
  }
  return o;
}

// ---- spectrum --------------------------------------------------------------

struct SpectrumArgs {
  double gamma_sq = 0.0;
  double b = 0.0;
  std::string a_range = "-10:10:0.1";
  int levels = 5;
};

Outcome run_spectrum(const SpectrumArgs& args, int basis) {
  const auto as = parse_range(args.a_range);
  validate(make_parameters(args.gamma_sq, 0.0, args.b));
  RitzOptions ritz;
  ritz.basis_size = basis;
  const RitzSolver solver(args.gamma_sq, ritz);
  if (args.levels < 1 || args.levels > solver.reduced().size()) {
    throw Error(ErrorKind::InvalidArgument, "--levels must lie in 1..basis size");
  }
  const auto rows = spectrum_sweep(solver, args.b, as, args.levels);
  Table t;
  t.columns.push_back("a");
  for (int j = 0; j < args.levels; ++j) t.columns.push_back("W_" + std::to_string(j));
  t.columns.push_back("flag");
  for (const auto& row : rows) {
    std::vector<Cell> cells{row.a};
    for (double w : row.W) cells.emplace_back(w);
    cells.emplace_back(std::string(row.ill_conditioned ? "ill_conditioned" : "ok"));
    t.add_row(std::move(cells));
  }
  Outcome o;
  o.stem = "spectrum";
  o.artifacts.push_back({"", t, line_plot(t, "W_j(a)", "a", "W", 1, t.columns.size() - 1), std::nullopt});
  o.metadata = {{"parameters",
                 {{"gamma_sq", json_number(args.gamma_sq)}, {"b", json_number(args.b)}, {"a_range", range_json(as)},
                  {"levels", args.levels}}},
                {"basis_size", solver.reduced().size()},
                {"condition_estimate", json_number(solver.reduced().condition_estimate())},
                {"tolerances", {{"condition_ceiling", RitzOptions{}.condition_ceiling}}}};
  return o;
}

// ---- verify-figure2 --------------------------------------------------------

Outcome run_figure2(const Figure2Options& opts) {
  const Figure2Data data = figure2(opts);
  Outcome o;
  o.stem = "figure2";

  Table points{{"n", "i", "a", "W", "curve", "defect"}, {}};
  for (const auto& p : data.points) points.add_row({double(p.n), double(p.i), p.a, p.W, double(p.curve), p.defect});
  Table curves;
  curves.columns.push_back("a");
  for (int j = 0; j < data.levels; ++j) curves.columns.push_back("W_" + std::to_string(j));
  for (std::size_t k = 0; k < data.a_grid.size(); ++k) {
    std::vector<Cell> cells{data.a_grid[k]};
    for (double w : data.curves[k]) cells.emplace_back(w);
    curves.add_row(std::move(cells));
  }
  Table crossings{{"curve", "a", "distance", "matched"}, {}};
  for (const auto& c : data.crossings) {
    crossings.add_row({double(c.curve), c.a, c.distance, std::string(c.matched ? "yes" : "no")});
  }

  Plot plot = line_plot(curves, "W_j(a) at b = " + format_number(opts.b) + " and truncation points", "a", "W");
  plot.series.push_back({"W = " + format_number(data.line_W),
                         {data.window.first, data.window.second},
                         {data.line_W, data.line_W},
                         false});
  Series dots{"truncation points", {}, {}, true};
  for (const auto& p : data.points) {
    dots.x.push_back(p.a);
    dots.y.push_back(p.W);
  }
  plot.series.push_back(std::move(dots));
  plot.y_limits = std::pair{std::min(0.0, data.curves.empty() ? 0.0 : data.curves.front().front()),
                            data.line_W + 4.0};

  o.artifacts.push_back({"", points, plot, std::nullopt});
  o.artifacts.push_back({"curves", curves, line_plot(curves, "W_j(a)", "a", "W"), std::nullopt});
  o.artifacts.push_back({"crossings", crossings, std::nullopt, std::nullopt});
  o.metadata = {{"parameters",
                 {{"s", json_number(opts.s)},
                  {"b", json_number(opts.b)},
                  {"n_max", opts.n_max},
                  {"a_window", {json_number(data.window.first), json_number(data.window.second)}},
                  {"a_step", json_number(opts.a_step)}}},
                {"basis_size", data.basis_used},
                {"levels", data.levels},
                {"line_W", json_number(data.line_W)},
                {"tolerances", {{"on_curve_defect", opts.tolerance}, {"crossing_match", opts.tolerance}}},
                {"max_defect", json_number(data.max_defect)},
                {"crossings", data.crossings.size()},
                {"passed", data.passed}};
  if (!data.passed) {
    o.status = kExitDefect;
    o.diagnostics.push_back("figure check failed: max defect " + format_number(data.max_defect) + ", " +
                            std::to_string(data.crossings.size()) + " line crossings for " +
                            std::to_string(data.line_roots.size()) + " roots");
  }
  return o;
}

// ---- hellmann --------------------------------------------------------------

struct HellmannArgs {
  double gamma_sq = 0.0;
  double a = 0.0;
  double b = 0.0;
  int level = 0;
  std::optional<double> step;
};

Outcome run_hellmann(const HellmannArgs& args, int basis) {
  validate(make_parameters(args.gamma_sq, args.a, args.b));
  RitzOptions ritz;
  ritz.basis_size = basis;
  const RitzSolver solver(args.gamma_sq, ritz);
  if (args.level < 0 || args.level >= solver.reduced().size()) {
    throw Error(ErrorKind::InvalidArgument, "--level outside the basis");
  }
  const auto r = hellmann_feynman_check(solver, args.a, args.b, args.level, args.step);
  Table t{{"parameter", "finite_difference", "expectation", "defect", "step"}, {}};
  t.add_row({std::string("a"), r.dW_da_fd, r.mean_inv_x, r.defect_a, r.step_a});
  t.add_row({std::string("b"), r.dW_db_fd, r.mean_x, r.defect_b, r.step_b});
  Outcome o;
  o.stem = "hellmann";
  o.artifacts.push_back({"", t, std::nullopt, std::nullopt});
  o.metadata = {{"parameters",
                 {{"gamma_sq", json_number(args.gamma_sq)},
                  {"a", json_number(args.a)},
                  {"b", json_number(args.b)},
                  {"level", args.level}}},
                {"basis_size", solver.reduced().size()},
                {"tolerances", {{"defect", kHellmannTolerance}}}};
  if (r.defect_a > kHellmannTolerance || r.defect_b > kHellmannTolerance) {
    o.status = kExitDefect;
    o.diagnostics.push_back("Hellmann-Feynman defect above " + format_number(kHellmannTolerance));
  }
  return o;
}

// ---- scenario / scan -------------------------------------------------------

struct ScenarioArgs {
  int scenario = 1;
  double m = 1.0;
  double omega = 1.0;
  std::string omega_range = "0.1:5:0.1";
  int l = 0;
  int sigma = 1;
  double coupling = 0.0;
  int level = 0;
  std::string provider = "ritz";
  double x_max = GridSpec{}.x_max;
  int points = GridSpec{}.points;
};

SolveOptions solve_options(const ScenarioArgs& args, int basis) {
  if (args.scenario != 1 && args.scenario != 2) throw Error(ErrorKind::InvalidArgument, "--scenario must be 1 or 2");
  if (args.sigma != 1 && args.sigma != -1) throw Error(ErrorKind::InvalidArgument, "--sigma must be +1 or -1");
  SolveOptions opts;
  opts.ritz.basis_size = basis;
  if (args.provider == "fd") {
    opts.provider = SpectrumProvider::FiniteDifference;
    opts.grid = GridSpec{args.x_max, args.points};
  } else if (args.provider != "ritz") {
    throw Error(ErrorKind::InvalidArgument, "--provider must be ritz or fd");
  }
  return opts;
}

json scenario_parameters(const ScenarioArgs& args) {
  return {{"scenario", args.scenario}, {"m", json_number(args.m)}, {"l", args.l}, {"sigma", args.sigma},
          {"coupling", json_number(args.coupling)}, {"level", args.level}, {"provider", args.provider}};
}

json provider_metadata(const ScenarioArgs& args, int basis) {
  json meta;
  if (args.provider == "fd") {
    meta["grid"] = {{"x_max", json_number(args.x_max)}, {"points", args.points}};
  } else {
    meta["basis_size"] = basis;
  }
  meta["tolerances"] = {{"energy_defect", kEnergyDefectTolerance}};
  return meta;
}

Outcome run_scenario(const ScenarioArgs& args, int basis) {
  const SolveOptions opts = solve_options(args, basis);
  const Spin sigma = args.sigma > 0 ? Spin::Up : Spin::Down;
  std::vector<EnergyLevel> levels;
  if (args.scenario == 1) {
    const Scenario1Params p{args.m, args.omega, args.l, sigma, args.coupling};
    for (Branch br : {Branch::Particle, Branch::Antiparticle}) {
      const auto found = scenario1_energies(p, args.level, br, opts);
      levels.insert(levels.end(), found.begin(), found.end());
    }
  } else {
    const Scenario2Params p{args.m, args.omega, args.l, sigma, args.coupling};
    for (Branch br : {Branch::Particle, Branch::Antiparticle})
      levels.push_back(solve_scenario2_energy(p, args.level, br, opts));
  }
  Table t{{"branch", "E", "W", "defect"}, {}};
  double worst = 0.0;
  for (const auto& lv : levels) {
    t.add_row({to_string(lv.branch), lv.E, lv.W, lv.defect});
    worst = std::max(worst, lv.defect);
  }
  Outcome o;
  o.stem = "scenario";
  o.artifacts.push_back({"", t, std::nullopt, std::nullopt});
  o.metadata = provider_metadata(args, basis);
  o.metadata["parameters"] = scenario_parameters(args);
  o.metadata["parameters"]["omega"] = json_number(args.omega);
  if (worst > kEnergyDefectTolerance) {
    o.status = kExitDefect;
    o.diagnostics.push_back("back-substitution defect " + format_number(worst));
  }
  return o;
}

Outcome run_scan(const ScenarioArgs& args, int basis) {
  const SolveOptions opts = solve_options(args, basis);
  const auto omegas = parse_range(args.omega_range);
  if (!(omegas.front() > 0.0)) throw Error(ErrorKind::InvalidArgument, "frequencies must be positive");
  const Spin sigma = args.sigma > 0 ? Spin::Up : Spin::Down;
  std::vector<ScanRow> rows;
  if (args.scenario == 1) {
    rows = frequency_scan(Scenario1Params{args.m, 1.0, args.l, sigma, args.coupling}, args.level, omegas, opts);
  } else {
    rows = frequency_scan(Scenario2Params{args.m, 1.0, args.l, sigma, args.coupling}, args.level, omegas, opts);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Table t{{"omega", "E_particle", "E_antiparticle", "W", "defect"}, {}};
  Outcome o;
  o.stem = "scan";
  std::size_t failures = 0;
  double worst = 0.0;
  for (const auto& r : rows) {
    if (r.ok) {
      t.add_row({r.omega, r.E_particle, r.E_antiparticle, r.W, r.defect});
      worst = std::max(worst, r.defect);
    } else {
      t.add_row({r.omega, nan, nan, nan, nan});
      ++failures;
      o.diagnostics.push_back("omega = " + format_number(r.omega) + ": " + r.error);
    }
  }
  o.artifacts.push_back({"", t, line_plot(t, "E(omega)", "omega", "E", 1, 3), std::nullopt});
  o.metadata = provider_metadata(args, basis);
  o.metadata["parameters"] = scenario_parameters(args);
  o.metadata["parameters"]["omega_range"] = range_json(omegas);
  o.metadata["failures"] = failures;
  o.metadata["max_defect"] = json_number(worst);
  if (failures > 0 || worst > kEnergyDefectTolerance) {
    o.status = kExitDefect;
    if (worst > kEnergyDefectTolerance) o.diagnostics.push_back("back-substitution defect " + format_number(worst));
  }
  return o;
}

// ---- report ----------------------------------------------------------------

Outcome run_report_command(const ReportOptions& opts) {
  const auto checks = run_report(opts);
  Outcome o;
  o.stem = "report";
  Table t{{"check", "passed"}, {}};
  for (const auto& c : checks) {
    t.add_row({c.id, std::string(c.passed ? "yes" : "no")});
    if (!c.passed) {
      o.status = kExitDefect;
      o.diagnostics.push_back("check " + c.id + " failed: " + c.details.dump());
    }
  }
  o.artifacts.push_back({"", t, std::nullopt, report_document(checks, opts)});
  o.metadata = {{"basis_size", opts.basis_size}, {"grid", {{"points", opts.fd_points}}}, {"seed", opts.seed}};
  return o;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::NonFinite:
    case ErrorKind::NegativeGammaSquared:
    case ErrorKind::MomentDivergent:
      return kExitConfig;
    default:
      return kExitDefect;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of the singular oscillator with Coulomb and linear terms"};
  app.name("qes");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--out", g.out_file, "Write the primary table to this file");
  app.add_option("--out-dir", g.out_dir, "Write all tables into this directory")->envname("QES_OUTPUT_DIR");
  app.add_option("--basis", g.basis, "Ritz basis size N")->check(CLI::Range(4, 60));

  TruncateArgs trunc;
  auto* truncate = app.add_subcommand("truncate", "Closed-form solutions of one truncation level");
  truncate->add_option("--n", trunc.n, "Polynomial degree")->required();
  truncate->add_option("--s", trunc.s, "Frobenius exponent |gamma|");
  truncate->add_option("--b", trunc.b, "Linear coefficient");

  CurvesArgs curves_args;
  auto* curves = app.add_subcommand("curves", "Branches a^(n,i)(b) of c_{n+1}(a, b) = 0");
  curves->add_option("--n", curves_args.n, "Polynomial degree");
  curves->add_option("--s", curves_args.s, "Frobenius exponent |gamma|");
  curves->add_option("--b-range", curves_args.b_range, "lo:hi:step");

  SpectrumArgs spec_args;
  auto* spectrum = app.add_subcommand("spectrum", "Ritz eigenvalues along an a-grid");
  spectrum->add_option("--gamma-sq", spec_args.gamma_sq, "Coefficient of 1/x^2");
  spectrum->add_option("--b", spec_args.b, "Linear coefficient");
  spectrum->add_option("--a-range", spec_args.a_range, "lo:hi:step");
  spectrum->add_option("--levels", spec_args.levels, "Number of eigenvalues");

  std::string fig1_range = "-4:4:0.05";
  auto* fig1 = app.add_subcommand("verify-figure1", "Branches of the n = 3 curves at s = 0");
  fig1->add_option("--b-range", fig1_range, "lo:hi:step");

  Figure2Options fig2_opts;
  double a_lo = std::numeric_limits<double>::quiet_NaN(), a_hi = a_lo;
  auto* fig2 = app.add_subcommand("verify-figure2", "Truncation points against variational curves");
  fig2->add_option("--s", fig2_opts.s, "Frobenius exponent |gamma|");
  fig2->add_option("--b", fig2_opts.b, "Linear coefficient");
  fig2->add_option("--n-max", fig2_opts.n_max, "Highest truncation level")->check(CLI::Range(0, kMaxTruncationLevel));
  fig2->add_option("--a-step", fig2_opts.a_step, "Spacing of the a-grid")->check(CLI::PositiveNumber);
  fig2->add_option("--margin", fig2_opts.margin, "Window padding around the top-level roots");
  fig2->add_option("--a-min", a_lo, "Explicit window start");
  fig2->add_option("--a-max", a_hi, "Explicit window end");
  fig2->add_option("--tolerance", fig2_opts.tolerance, "On-curve defect tolerance");

  HellmannArgs hf;
  double hf_step = 0.0;
  auto* hellmann = app.add_subcommand("hellmann", "Hellmann-Feynman check at one point");
  hellmann->add_option("--gamma-sq", hf.gamma_sq, "Coefficient of 1/x^2");
  hellmann->add_option("--a", hf.a, "Coulomb coefficient");
  hellmann->add_option("--b", hf.b, "Linear coefficient");
  hellmann->add_option("--level", hf.level, "Eigenvalue index j");
  auto* step_opt = hellmann->add_option("--step", hf_step, "Finite-difference step")->check(CLI::PositiveNumber);

  ScenarioArgs sc;
  auto add_physics = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", sc.scenario, "1 (Coulomb-like) or 2 (magnetic)")->required();
    cmd->add_option("--m", sc.m, "Mass");
    cmd->add_option("--l", sc.l, "Orbital quantum number");
    cmd->add_option("--sigma", sc.sigma, "Spin label +1 or -1");
    cmd->add_option("--coupling", sc.coupling, "a g lambda (scenario 1) or a B0 g (scenario 2)");
    cmd->add_option("--level", sc.level, "Radial level j");
    cmd->add_option("--provider", sc.provider, "ritz or fd");
    cmd->add_option("--x-max", sc.x_max, "Finite-difference box");
    cmd->add_option("--points", sc.points, "Finite-difference cells");
  };
  auto* scenario = app.add_subcommand("scenario", "Energies of one Dirac-oscillator configuration");
  add_physics(scenario);
  scenario->add_option("--omega", sc.omega, "Oscillator frequency");
  auto* scan = app.add_subcommand("scan", "Energies over a frequency grid");
  add_physics(scan);
  scan->add_option("--omega", sc.omega_range, "lo:hi:step");

  ReportOptions report_opts;
  auto* report = app.add_subcommand("report", "Full verification bundle (JSON)");
  report->add_option("--seed", report_opts.seed, "Seed of the random cross-solver sample");
  report->add_option("--points", report_opts.fd_points, "Finite-difference cells");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Outcome o;
    Format format = parse_format(g.format);
    if (app.got_subcommand(truncate)) {
      o = run_truncate(trunc);
    } else if (app.got_subcommand(curves)) {
      o = run_curves(curves_args);
    } else if (app.got_subcommand(spectrum)) {
      o = run_spectrum(spec_args, g.basis);
    } else if (app.got_subcommand(fig1)) {
      o = run_figure1(fig1_range);
    } else if (app.got_subcommand(fig2)) {
      fig2_opts.basis_size = g.basis;
      if (std::isfinite(a_lo) != std::isfinite(a_hi)) {
        throw Error(ErrorKind::InvalidArgument, "--a-min and --a-max go together");
      }
      if (std::isfinite(a_lo)) {
        if (!(a_lo < a_hi)) throw Error(ErrorKind::InvalidArgument, "--a-min must be below --a-max");
        fig2_opts.window = std::pair{a_lo, a_hi};
      }
      o = run_figure2(fig2_opts);
    } else if (app.got_subcommand(hellmann)) {
      if (step_opt->count() > 0) hf.step = hf_step;
      o = run_hellmann(hf, g.basis);
    } else if (app.got_subcommand(scenario)) {
      o = run_scenario(sc, g.basis);
    } else if (app.got_subcommand(scan)) {
      o = run_scan(sc, g.basis);
    } else if (app.got_subcommand(report)) {
      report_opts.basis_size = g.basis;
      format = Format::Json;
      o = run_report_command(report_opts);
    }

    std::optional<std::filesystem::path> file, dir;
    if (!g.out_file.empty()) file = g.out_file;
    if (!g.out_dir.empty()) dir = g.out_dir;
    if (file && dir && file->is_relative()) file = *dir / *file;
    o.metadata["command"] = app.get_subcommands().front()->get_name();
    const OutputTarget target(file, dir, format, out);
    for (const auto& path : target.emit(o.stem, o.artifacts, o.metadata)) err << "wrote " << path.string() << "\n";
    for (const auto& d : o.diagnostics) err << "qes: " << d << "\n";
    return o.status;
  } catch (const Error& e) {
    err << "qes: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "qes: " << e.what() << "\n";
    return kExitDefect;
  }
}

}  // namespace qes::cli
