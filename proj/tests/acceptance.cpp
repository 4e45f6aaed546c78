// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qes/cli/app.hpp"
#include "qes/oracle.hpp"
#include "qes/physics.hpp"
#include "qes/polynomial.hpp"
#include "qes/recurrence.hpp"
#include "qes/variational.hpp"

namespace fs = std::filesystem;
using namespace qes;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ---- transcribed identities ------------------------------------------------

// Reads integer polynomials in a, b, s written with juxtaposition, ^ and
// parentheses, e.g. "4a^2+8ab(s+1)-8(2s+1)".
class Reader {
 public:
  explicit Reader(std::string text) {
    for (char c : text)
      if (c != ' ') text_ += c;
  }

  Polynomial parse() {
    Polynomial p = expr();
    if (pos_ != text_.size()) throw std::runtime_error("trailing input in " + text_);
    return p;
  }

 private:
  Polynomial expr() {
    Polynomial sum;
    bool negative = false;
    if (peek() == '-' || peek() == '+') negative = text_[pos_++] == '-';
    for (;;) {
      Polynomial t = term();
      sum += negative ? t * Rational(-1) : t;
      if (peek() != '+' && peek() != '-') return sum;
      negative = text_[pos_++] == '-';
    }
  }

  Polynomial term() {
    Polynomial product(Rational(1));
    while (pos_ < text_.size() && (std::isdigit(text_[pos_]) || std::isalpha(text_[pos_]) || text_[pos_] == '('))
      product *= power(factor());
    return product;
  }

  Polynomial factor() {
    const char c = text_[pos_];
    if (std::isdigit(c)) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(text_[end])) ++end;
      const Rational v(text_.substr(pos_, end - pos_));
      pos_ = end;
      return Polynomial(v);
    }
    ++pos_;
    if (c == '(') {
      Polynomial inner = expr();
      if (peek() != ')') throw std::runtime_error("unbalanced parenthesis");
      ++pos_;
      return inner;
    }
    if (c == 'a') return Polynomial::variable(Variable::A);
    if (c == 'b') return Polynomial::variable(Variable::B);
    if (c == 's') return Polynomial::variable(Variable::S);
    throw std::runtime_error(std::string("unexpected symbol ") + c);
  }

  Polynomial power(Polynomial base) {
    if (peek() != '^') return base;
    ++pos_;
    int e = 0;
    while (pos_ < text_.size() && std::isdigit(text_[pos_])) e = 10 * e + (text_[pos_++] - '0');
    Polynomial out(Rational(1));
    for (int k = 0; k < e; ++k) out *= base;
    return out;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::string text_;
  std::size_t pos_ = 0;
};

const char* const kPrinted[] = {
    "2a+b(2s+1)",
    "4a^2+8ab(s+1)+b^2(2s+1)(2s+3)-8(2s+1)",
    "8a^3+12a^2b(2s+3)+2ab^2(12s^2+36s+23)-32a(4s+3)+b^3(2s+1)(2s+3)(2s+5)-16b(2s+1)(4s+7)",
    "16a^4+64a^3b(s+2)+8a^2b^2(12s^2+48s+43)-640a^2(s+1)+16ab^3(4s^3+24s^2+43s+22)-128ab(10s^2+30s+17)"
    "+b^4(2s+1)(2s+3)(2s+5)(2s+7)-32b^2(2s+1)(10s^2+45s+47)+576(2s+1)(2s+3)",
};

Verdict ac1() {
  int identical = 0;
  for (int n = 0; n < 4; ++n) {
    const Polynomial expected = Reader(kPrinted[n]).parse();
    const Polynomial built = build_truncation_polynomial_symbolic(n);
    bool integral = true;
    for (const auto& [m, c] : built.terms()) integral = integral && c.get_den() == 1;
    if (built == expected && integral) ++identical;
  }
  return {identical == 4, std::to_string(identical) + "/4 identical"};
}

Verdict ac2() {
  int cases = 0, certified = 0;
  for (const char* s : {"0", "1/2", "1", "2"})
    for (int n = 0; n <= 10; ++n) {
      const Polynomial p = build_truncation_polynomial(n, Rational(s));
      for (double b : {-4.0, -1.0, 0.0, 1.0, 4.0}) {
        ++cases;
        const RootCount c = certified_root_count(p, b);
        if (c.with_multiplicity == static_cast<std::size_t>(n + 1) && c.distinct == static_cast<std::size_t>(n + 1))
          ++certified;
      }
    }
  return {certified == cases, std::to_string(certified) + "/" + std::to_string(cases) + " certified"};
}

// ---- CLI helpers -------------------------------------------------------------

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qes");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

double max_jump(const std::vector<std::vector<std::string>>& rows) {
  double worst = 0.0;
  for (std::size_t r = 2; r < rows.size(); ++r)
    for (std::size_t c = 1; c < rows[r].size(); ++c)
      worst = std::max(worst, std::abs(std::stod(rows[r][c]) - std::stod(rows[r - 1][c])));
  return worst;
}

Verdict ac3(const fs::path& dir) {
  const fs::path coarse = dir / "fig1.csv", fine = dir / "fig1_fine.csv";
  if (cli({"curves", "--n", "3", "--s", "0", "--b-range", "-4:4:0.05", "--out", coarse.string()}) != 0 ||
      cli({"curves", "--n", "3", "--s", "0", "--b-range", "-4:4:0.025", "--out", fine.string()}) != 0) {
    return {false, "curves command failed"};
  }
  const auto rows = read_csv(coarse);
  if (rows.size() != 162 || rows[0].size() != 5) return {false, "unexpected table shape"};
  bool ordered = true, finite = true;
  std::vector<double> at_zero;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::vector<double> a;
    for (std::size_t c = 1; c < 5; ++c) a.push_back(std::stod(rows[r][c]));
    for (double v : a) finite = finite && std::isfinite(v);
    for (std::size_t c = 1; c < 4; ++c) ordered = ordered && a[c] - a[c - 1] > 1e-6;
    if (std::abs(std::stod(rows[r][0])) < 1e-12) at_zero = a;
  }
  // Continuous branches: the largest step between samples halves with the grid.
  const double ratio = max_jump(rows) / max_jump(read_csv(fine));
  const double expected[] = {-6.090, -1.706, 1.706, 6.090};
  double worst = at_zero.size() == 4 ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < at_zero.size(); ++i) worst = std::max(worst, std::abs(at_zero[i] - expected[i]));
  const bool pass = finite && ordered && ratio > 1.8 && ratio < 2.2 && worst <= 1e-3;
  return {pass, "4 branches, jump ratio " + fmt(ratio) + ", max |a(0) - ref| " + fmt(worst)};
}

Verdict ac4(const fs::path& dir) {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path out = dir / "fig2.csv";
  const int code = cli({"--basis", "30", "verify-figure2", "--s", "0", "--b", "1", "--n-max", "8", "--out",
                        out.string()});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto points = read_csv(out);
  const auto crossings = read_csv(dir / "fig2_crossings.csv");
  if (points.size() != 46 || crossings.empty()) return {false, "missing output, exit code " + std::to_string(code)};
  double worst = 0.0, worst_top = 0.0;
  int top = 0;
  for (std::size_t r = 1; r < points.size(); ++r) {
    const double defect = std::stod(points[r][5]);
    worst = std::max(worst, defect);
    if (points[r][0] == "8") {
      ++top;
      worst_top = std::max(worst_top, defect);
      if (std::abs(std::stod(points[r][3]) - 17.75) > 1e-12) return {false, "line is not at W = 17.75"};
    }
  }
  std::size_t matched = 0;
  for (std::size_t r = 1; r < crossings.size(); ++r) matched += crossings[r][3] == "yes";
  const std::size_t found = crossings.size() - 1;
  const bool pass = code == 0 && worst <= 1e-5 && top == 9 && worst_top <= 1e-5 && found == 9 && matched == 9 &&
                    seconds < 60.0;
  return {pass, "45 points, max defect " + fmt(worst) + ", " + std::to_string(found) + " line crossings (" +
                    std::to_string(matched) + " at roots), " + fmt(seconds) + " s"};
}

// ---- solvers -----------------------------------------------------------------

Verdict ac5() {
  const auto w = RitzSolver(0.0).eigenvalues(0.0, 0.0);
  double ritz = 0.0;
  for (int j = 0; j <= 4; ++j) ritz = std::max(ritz, std::abs(w[j] - 2.0 * (2 * j + 1)));
  const auto p = make_parameters(0.0, 0.0, 0.0);
  const double e1 = fd_spectrum(p, {10.0, 4000}, 1)[0] - 2.0;
  const double e2 = fd_spectrum(p, {10.0, 8000}, 1)[0] - 2.0;
  const double ratio = e1 / e2;
  const bool pass = ritz <= 1e-10 && std::abs(e1) <= 1e-5 && ratio >= 3.5 && ratio <= 4.5;
  return {pass, "Ritz max error " + fmt(ritz) + ", FD error " + fmt(e1) + ", halving ratio " + fmt(ratio)};
}

Verdict ac6() {
  const TruncationSolution sol = assemble_polynomial_solution(1, 2, 0.0, 0.0);
  const double residual = ode_residual(sol);
  const auto w = RitzSolver(0.0).eigenvalues(std::sqrt(2.0), 0.0);
  const auto fd = fd_spectrum(make_parameters(0.0, std::sqrt(2.0), 0.0), GridSpec{}, 1);
  const double ritz = std::abs(w[0] - 4.0), fde = std::abs(fd[0] - 4.0);
  const bool pass = std::abs(sol.a_root - std::sqrt(2.0)) < 1e-12 && sol.W == 4.0 && residual <= 1e-12 &&
                    ritz <= 1e-8 && fde <= 1e-4;
  return {pass, "residual " + fmt(residual) + ", Ritz |W - 4| " + fmt(ritz) + ", FD |W - 4| " + fmt(fde)};
}

Verdict ac7() {
  double worst = 0.0;
  bool positive = true;
  int count = 0;
  for (double s : {0.0, 1.0}) {
    const RitzSolver solver(s * s);
    for (double a = -3.0; a <= 3.0; a += 1.5)
      for (double b = -3.0; b <= 3.0; b += 1.5) {
        ++count;
        for (int j = 0; j < 2; ++j) {
          const auto r = hellmann_feynman_check(solver, a, b, j);
          positive = positive && r.dW_da_fd > 0.0 && r.dW_db_fd > 0.0;
          worst = std::max({worst, std::abs(r.dW_da_fd - r.mean_inv_x), std::abs(r.dW_db_fd - r.mean_x)});
        }
      }
  }
  const auto origin = hellmann_feynman_check(RitzSolver(0.0), 0.0, 0.0, 0);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double ref = std::max(std::abs(origin.dW_da_fd - sqrt_pi), std::abs(origin.dW_db_fd - sqrt_pi / 2));
  const bool pass = count == 50 && positive && worst <= 1e-3 && ref <= 1e-4;
  return {pass, "25 points x 2 exponents x 2 levels, max defect " + fmt(worst) + ", origin deviation " + fmt(ref)};
}

Verdict ac8() {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> g(0.0, 3.0), c(-3.0, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double gamma_sq = g(rng), a = c(rng), b = c(rng);
    const auto fd = fd_spectrum(make_parameters(gamma_sq, a, b), GridSpec{}, 3);
    const auto w = RitzSolver(gamma_sq).eigenvalues(a, b);
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(fd[j] - w[j]));
  }
  return {worst <= 1e-3, "20 points, max |W_FD - W_Ritz| " + fmt(worst)};
}

Verdict ac9(const fs::path& dir) {
  std::vector<double> omegas;
  for (int k = 0; k < 50; ++k) omegas.push_back(0.1 + 0.1 * k);
  std::size_t failures = 0;
  double worst = 0.0;
  auto tally = [&](const std::vector<ScanRow>& rows) {
    for (const auto& r : rows) {
      if (!r.ok) ++failures;
      else worst = std::max(worst, r.defect);
    }
  };
  tally(frequency_scan(Scenario1Params{1.0, 1.0, 1, Spin::Up, 0.4}, 0, omegas));
  tally(frequency_scan(Scenario1Params{1.0, 1.0, 0, Spin::Down, 0.6}, 1, omegas));
  tally(frequency_scan(Scenario2Params{1.0, 1.0, 0, Spin::Up, 0.3}, 0, omegas));
  tally(frequency_scan(Scenario2Params{1.0, 1.0, 2, Spin::Down, 0.8}, 1, omegas));

  const fs::path out = dir / "decoupled.csv";
  const int code = cli({"scan", "--scenario", "1", "--omega", "0.1:5:0.1", "--m", "1", "--l", "0", "--sigma", "1",
                        "--coupling", "0", "--out", out.string()});
  const auto rows = read_csv(out);
  double decoupled = rows.size() == 51 ? 0.0 : INFINITY;
  for (std::size_t r = 1; r < rows.size(); ++r)
    decoupled = std::max({decoupled, std::abs(std::stod(rows[r][1]) - 1.0), std::abs(std::stod(rows[r][2]) + 1.0)});
  const bool pass = failures == 0 && worst <= 1e-6 && code == 0 && decoupled <= 1e-10;
  return {pass, "4 scans x 50 frequencies, " + std::to_string(failures) + " gaps, max defect " + fmt(worst) +
                    ", decoupled |E| - 1 " + fmt(decoupled)};
}

Verdict ac10() {
  const double points[][3] = {{0.0, 0.0, 0.0}, {0.5, -2.0, 1.0}, {1.0, 2.0, -2.0}, {2.0, -1.0, 3.0}, {3.5, 2.5, 0.5}};
  double worst = -INFINITY;
  for (const auto& p : points) {
    Eigen::VectorXd previous;
    for (int n : {12, 16, 20, 24, 28, 30}) {
      const Eigen::VectorXd w = RitzSolver(std::make_shared<const ReducedBasis>(p[0], n)).eigenvalues(p[1], p[2]);
      if (previous.size() > 0)
        for (int j = 0; j <= 3; ++j) worst = std::max(worst, w[j] - previous[j]);
      previous = w;
    }
  }
  return {worst <= 1e-12, "largest increase W_j(N') - W_j(N) " + fmt(worst)};
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "qes_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"AC1 printed polynomials n = 0..3", ac1},
      {"AC2 real roots n <= 10", ac2},
      {"AC3 Figure 1 branches", [&] { return ac3(dir); }},
      {"AC4 Figure 2 points on curves", [&] { return ac4(dir); }},
      {"AC5 oscillator limit", ac5},
      {"AC6 closed-form solution", ac6},
      {"AC7 Hellmann-Feynman", ac7},
      {"AC8 cross-solver agreement", ac8},
      {"AC9 no frequency quantization", [&] { return ac9(dir); }},
      {"AC10 variational monotonicity", ac10},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  fs::remove_all(dir);
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
