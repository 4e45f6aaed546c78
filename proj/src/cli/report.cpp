#include "qes/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qes/cli/figures.hpp"
#include "qes/cli/range.hpp"
#include "qes/cli/table.hpp"
#include "qes/oracle.hpp"
#include "qes/physics.hpp"
#include "qes/recurrence.hpp"
#include "qes/sturm.hpp"
#include "qes/variational.hpp"

namespace qes::cli {

namespace {

using json = nlohmann::ordered_json;

// The n = 0..3 identities in their usual printed, factored form.
std::vector<Polynomial> printed_polynomials() {
  const Polynomial a = Polynomial::variable(Variable::A);
  const Polynomial b = Polynomial::variable(Variable::B);
  const Polynomial s = Polynomial::variable(Variable::S);
  auto k = [](long v) { return Polynomial(Rational(v)); };
  auto lin = [&](long p, long q) { return k(p) * s + k(q); };
  const Polynomial a2 = a * a, a3 = a2 * a, b2 = b * b, b3 = b2 * b, s2 = s * s, s3 = s2 * s;

  std::vector<Polynomial> out;
  out.push_back(k(2) * a + b * lin(2, 1));
  out.push_back(k(4) * a2 + k(8) * a * b * lin(1, 1) + b2 * lin(2, 1) * lin(2, 3) - k(8) * lin(2, 1));
  out.push_back(k(8) * a3 + k(12) * a2 * b * lin(2, 3) + k(2) * a * b2 * (k(12) * s2 + k(36) * s + k(23)) -
                k(32) * a * lin(4, 3) + b3 * lin(2, 1) * lin(2, 3) * lin(2, 5) -
                k(16) * b * lin(2, 1) * lin(4, 7));
  out.push_back(k(16) * a2 * a2 + k(64) * a3 * b * lin(1, 2) + k(8) * a2 * b2 * (k(12) * s2 + k(48) * s + k(43)) -
                k(640) * a2 * lin(1, 1) + k(16) * a * b3 * (k(4) * s3 + k(24) * s2 + k(43) * s + k(22)) -
                k(128) * a * b * (k(10) * s2 + k(30) * s + k(17)) +
                b2 * b2 * lin(2, 1) * lin(2, 3) * lin(2, 5) * lin(2, 7) -
                k(32) * b2 * lin(2, 1) * (k(10) * s2 + k(45) * s + k(47)) + k(576) * lin(2, 1) * lin(2, 3));
  return out;
}

CheckOutcome check_polynomials() {
  CheckOutcome out{"polynomials", "printed truncation polynomials, n = 0..3", true, json::array()};
  const auto expected = printed_polynomials();
  for (int n = 0; n < 4; ++n) {
    const Polynomial built = build_truncation_polynomial_symbolic(n);
    const bool same = built == expected[static_cast<std::size_t>(n)];
    out.passed = out.passed && same;
    out.details.push_back({{"n", n}, {"identical", same}, {"built", built.to_string()}});
  }
  return out;
}

CheckOutcome check_real_roots() {
  CheckOutcome out{"real_roots", "Sturm-certified real roots, n <= 10", true, json::array()};
  for (const char* s_text : {"0", "1/2", "1", "2"}) {
    const Rational s(s_text);
    for (int n = 0; n <= 10; ++n) {
      const Polynomial p = build_truncation_polynomial(n, s);
      for (double b : {-4.0, -1.0, 0.0, 1.0, 4.0}) {
        const RootCount count = certified_root_count(p, b);
        const bool ok = count.with_multiplicity == static_cast<std::size_t>(n) + 1;
        out.passed = out.passed && ok;
        if (!ok) {
          out.details.push_back({{"s", s_text}, {"n", n}, {"b", b}, {"roots", count.with_multiplicity}});
        }
      }
    }
  }
  if (out.details.empty()) out.details = json{{"cases", 4 * 11 * 5}, {"failures", 0}};
  return out;
}

CheckOutcome check_figure1() {
  const auto bs = parse_range("-4:4:0.05");
  const Figure1Data data = figure1(3, 0.0, bs);
  const double expected[] = {-6.0902, -1.7062, 1.7062, 6.0902};
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(data.roots_at_zero[i] - expected[i]));
  CheckOutcome out{"figure1", "four continuous branches of the n = 3 curves", data.continuous && worst <= 1e-3, {}};
  auto roots = json::array();
  for (double r : data.roots_at_zero) roots.push_back(json_number(r));
  out.details = {{"roots_at_b0", roots},
                 {"max_deviation", json_number(worst)},
                 {"max_jump", json_number(data.max_jump)},
                 {"max_jump_refined", json_number(data.max_jump_refined)},
                 {"continuous", data.continuous}};
  return out;
}

CheckOutcome check_figure2(int basis) {
  Figure2Options opts;
  opts.basis_size = basis;
  const Figure2Data data = figure2(opts);
  CheckOutcome out{"figure2", "truncation points lie on the variational curves", data.passed, {}};
  out.details = {{"points", data.points.size()},
                 {"max_defect", json_number(data.max_defect)},
                 {"line_W", json_number(data.line_W)},
                 {"crossings", data.crossings.size()},
                 {"window", {json_number(data.window.first), json_number(data.window.second)}},
                 {"basis_size", data.basis_used}};
  return out;
}

CheckOutcome check_oscillator(int basis, int fd_points) {
  RitzOptions ritz;
  ritz.basis_size = basis;
  const RitzSolver solver(0.0, ritz);
  const Eigen::VectorXd w = solver.eigenvalues(0.0, 0.0);
  double worst = 0.0;
  for (int j = 0; j <= 4; ++j) worst = std::max(worst, std::abs(w[j] - 2.0 * (2 * j + 1)));

  const RadialParameters p = make_parameters(0.0, 0.0, 0.0);
  const double coarse = fd_spectrum(p, {10.0, fd_points}, 1)[0] - 2.0;
  const double fine = fd_spectrum(p, {10.0, 2 * fd_points}, 1)[0] - 2.0;
  const double ratio = coarse / fine;
  const bool ok = worst <= 1e-10 && std::abs(coarse) <= 1e-5 && ratio >= 3.5 && ratio <= 4.5;
  return {"oscillator",
          "oscillator limit in both solvers",
          ok,
          {{"variational_max_error", json_number(worst)},
           {"fd_error", json_number(coarse)},
           {"fd_ratio", json_number(ratio)}}};
}

CheckOutcome check_closed_form(int basis) {
  const TruncationSolution sol = assemble_polynomial_solution(1, 2, 0.0, 0.0);
  const double residual = ode_residual(sol);
  RitzOptions ritz;
  ritz.basis_size = basis;
  const Eigen::VectorXd w = RitzSolver(0.0, ritz).eigenvalues(sol.a_root, 0.0);
  const double ritz_error = (w.array() - sol.W).abs().minCoeff();
  const auto fd = fd_spectrum(sol.params(), GridSpec{}, 4);
  double fd_error = std::abs(fd[0] - sol.W);
  for (double v : fd) fd_error = std::min(fd_error, std::abs(v - sol.W));
  const bool ok = residual <= 1e-12 && ritz_error <= 1e-8 && fd_error <= 1e-4;
  return {"closed_form",
          "closed-form solution n = 1, a = sqrt(2)",
          ok,
          {{"a", json_number(sol.a_root)},
           {"residual", json_number(residual)},
           {"ritz_error", json_number(ritz_error)},
           {"fd_error", json_number(fd_error)}}};
}

CheckOutcome check_hellmann_feynman(int basis) {
  CheckOutcome out{"hellmann_feynman", "dW/da = <1/x>, dW/db = <x>", true, {}};
  RitzOptions ritz;
  ritz.basis_size = basis;
  double worst = 0.0;
  bool positive = true;
  const double grid[] = {-3.0, -1.5, 0.0, 1.5, 3.0};
  for (double gamma_sq : {0.0, 1.0}) {
    const RitzSolver solver(gamma_sq, ritz);
    for (double a : grid)
      for (double b : grid)
        for (int j = 0; j < 2; ++j) {
          const auto r = hellmann_feynman_check(solver, a, b, j);
          worst = std::max({worst, r.defect_a, r.defect_b});
          positive = positive && r.dW_da_fd > 0.0 && r.dW_db_fd > 0.0;
        }
  }
  const auto origin = hellmann_feynman_check(RitzSolver(0.0, ritz), 0.0, 0.0, 0);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double origin_error =
      std::max(std::abs(origin.mean_inv_x - sqrt_pi), std::abs(origin.mean_x - 0.5 * sqrt_pi));
  out.passed = worst <= 1e-3 && positive && origin_error <= 1e-4;
  out.details = {{"points", 100},
                 {"max_defect", json_number(worst)},
                 {"derivatives_positive", positive},
                 {"origin_inv_x", json_number(origin.mean_inv_x)},
                 {"origin_x", json_number(origin.mean_x)}};
  return out;
}

CheckOutcome check_cross_solver(int basis, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gamma_dist(0.0, 4.0), coupling(-3.0, 3.0);
  RitzOptions ritz;
  ritz.basis_size = basis;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double gamma_sq = gamma_dist(rng);
    const double a = coupling(rng);
    const double b = coupling(rng);
    const auto fd = fd_spectrum(make_parameters(gamma_sq, a, b), GridSpec{}, 3);
    const Eigen::VectorXd w = RitzSolver(gamma_sq, ritz).eigenvalues(a, b);
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(fd[j] - w[j]));
  }
  return {"cross_solver", "finite differences against Ritz at 20 random points", worst <= 1e-3,
          {{"seed", seed}, {"max_difference", json_number(worst)}}};
}

CheckOutcome check_scans(int basis) {
  std::vector<double> omegas(50);
  for (int k = 0; k < 50; ++k) omegas[k] = 0.1 + 4.9 * k / 49.0;
  SolveOptions opts;
  opts.ritz.basis_size = basis;

  auto summarize = [](const std::vector<ScanRow>& rows) {
    std::size_t failures = 0;
    double worst = 0.0;
    for (const auto& r : rows) {
      if (!r.ok) ++failures;
      else worst = std::max(worst, r.defect);
    }
    return std::pair{failures, worst};
  };

  Scenario1Params s1{1.0, 1.0, 1, Spin::Up, 0.3};
  Scenario2Params s2{1.0, 1.0, 0, Spin::Up, 0.3};
  Scenario1Params decoupled{1.0, 1.0, 0, Spin::Up, 0.0};
  const auto [f1, d1] = summarize(frequency_scan(s1, 0, omegas, opts));
  const auto [f2, d2] = summarize(frequency_scan(s2, 0, omegas, opts));
  const auto rows = frequency_scan(decoupled, 0, omegas, opts);
  double decoupled_error = 0.0;
  bool decoupled_ok = true;
  for (const auto& r : rows) {
    decoupled_ok = decoupled_ok && r.ok;
    decoupled_error = std::max({decoupled_error, std::abs(r.E_particle - 1.0), std::abs(r.E_antiparticle + 1.0)});
  }
  const bool ok = f1 == 0 && f2 == 0 && d1 <= 1e-6 && d2 <= 1e-6 && decoupled_ok && decoupled_error <= 1e-8;
  return {"scans",
          "bound states at every frequency",
          ok,
          {{"points", omegas.size()},
           {"scenario1", {{"failures", f1}, {"max_defect", json_number(d1)}}},
           {"scenario2", {{"failures", f2}, {"max_defect", json_number(d2)}}},
           {"decoupled_max_error", json_number(decoupled_error)}}};
}

CheckOutcome check_monotonicity() {
  const double points[][3] = {{0.0, 0.0, 0.0}, {0.25, 1.0, -1.0}, {1.0, -2.0, 1.0}, {2.25, 0.5, 2.0}, {4.0, -1.0, -2.0}};
  const int sizes[] = {12, 16, 20, 24, 28, 30};
  double worst_increase = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    std::vector<Eigen::VectorXd> spectra;
    for (int n : sizes) spectra.push_back(RitzSolver(std::make_shared<const ReducedBasis>(p[0], n)).eigenvalues(p[1], p[2]));
    for (std::size_t k = 1; k < spectra.size(); ++k)
      for (int j = 0; j <= 3; ++j) worst_increase = std::max(worst_increase, spectra[k][j] - spectra[k - 1][j]);
  }
  return {"monotonicity", "Ritz values do not increase with the basis size", worst_increase <= 1e-12,
          {{"max_increase", json_number(worst_increase)}}};
}

template <typename F>
CheckOutcome guarded(const char* id, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {id, "check raised an error", false, {{"error", e.what()}}};
  }
}

}  // namespace

std::vector<CheckOutcome> run_report(const ReportOptions& options) {
  std::vector<CheckOutcome> out;
  out.push_back(guarded("polynomials", check_polynomials));
  out.push_back(guarded("real_roots", check_real_roots));
  out.push_back(guarded("figure1", check_figure1));
  out.push_back(guarded("figure2", [&] { return check_figure2(options.basis_size); }));
  out.push_back(guarded("oscillator", [&] { return check_oscillator(options.basis_size, options.fd_points); }));
  out.push_back(guarded("closed_form", [&] { return check_closed_form(options.basis_size); }));
  out.push_back(guarded("hellmann_feynman", [&] { return check_hellmann_feynman(options.basis_size); }));
  out.push_back(guarded("cross_solver", [&] { return check_cross_solver(options.basis_size, options.seed); }));
  out.push_back(guarded("scans", [&] { return check_scans(options.basis_size); }));
  out.push_back(guarded("monotonicity", check_monotonicity));
  return out;
}

nlohmann::ordered_json report_document(const std::vector<CheckOutcome>& checks, const ReportOptions& options) {
  json doc;
  doc["options"] = {{"basis_size", options.basis_size}, {"fd_points", options.fd_points}, {"seed", options.seed}};
  bool all = true;
  auto list = json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    list.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"details", c.details}});
  }
  doc["passed"] = all;
  doc["checks"] = std::move(list);
  return doc;
}

}  // namespace qes::cli
