#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qes/oracle.hpp"

using namespace qes;

namespace {

// Composite Simpson rule, used as an independent check on the quadrature.
template <typename F>
double simpson(F f, double lo, double hi, int intervals) {
  const double h = (hi - lo) / intervals;
  double sum = f(lo) + f(hi);
  for (int k = 1; k < intervals; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(lo + k * h);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("finite differences reproduce the oscillator") {
  const auto w = fd_spectrum(make_parameters(0.0, 0.0, 0.0), GridSpec{}, 3);
  CHECK(std::abs(w[0] - 2.0) < 1e-5);
  CHECK(std::abs(w[1] - 6.0) < 1e-4);
  CHECK(std::abs(w[2] - 10.0) < 1e-4);
}

TEST_CASE("second-order convergence for several exponents") {
  for (double s : {0.0, 0.5, 1.0, 2.0}) {
    const auto p = make_parameters(s * s, 0.0, 0.0);
    const double exact = 2.0 * (s + 1.0);
    const double e1 = fd_spectrum(p, {10.0, 1000}, 1)[0] - exact;
    const double e2 = fd_spectrum(p, {10.0, 2000}, 1)[0] - exact;
    const double ratio = e1 / e2;
    CHECK(ratio > 3.8);
    CHECK(ratio < 4.2);
  }
}

TEST_CASE("closed-form energy in the finite-difference spectrum") {
  const auto w = fd_spectrum(make_parameters(0.0, std::sqrt(2.0), 0.0), GridSpec{}, 2);
  CHECK(std::abs(w[0] - 4.0) < 1e-4);
}

TEST_CASE("Richardson guard and grid validation") {
  const auto p = make_parameters(0.0, 0.0, 0.0);
  CHECK_NOTHROW(fd_spectrum(p, GridSpec{}, 1, 1e-5));
  try {
    fd_spectrum(p, {10.0, 200}, 1, 1e-9);
    FAIL("expected GridTooCoarse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GridTooCoarse);
  }
  CHECK_THROWS_AS(fd_spectrum(p, {5.0, 4000}, 1), Error);
  CHECK_THROWS_AS(fd_spectrum(p, {10.0, 50}, 1), Error);
  CHECK_THROWS_AS(fd_spectrum(p, {10.0, 400}, 101), Error);
  CHECK(GridSpec::for_parameters(make_parameters(0, 0, -7.0)).x_max == 14.0);
  CHECK(GridSpec::for_parameters(make_parameters(0, 0, 1.0)).x_max == 10.0);
}

TEST_CASE("residual of exact and perturbed solutions") {
  const auto sample = default_residual_sample();
  REQUIRE(sample.size() == 40);
  CHECK(sample.front() == doctest::Approx(0.05));
  CHECK(sample.back() == doctest::Approx(8.0));

  const std::vector<double> ground{1.0};
  CHECK(ode_residual(make_parameters(0.0, 0.0, 0.0), 2.0, ground, sample) < 1e-13);
  // wrong energy leaves (W - 2) psi
  CHECK(ode_residual(make_parameters(0.0, 0.0, 0.0), 2.5, ground, sample) == doctest::Approx(0.5));

  const TruncationSolution sol = assemble_polynomial_solution(1, 2, 0.0, 0.0);
  CHECK(ode_residual(sol) < 1e-12);
  for (double s : {0.5, 1.0})
    for (double b : {-1.0, 0.0, 2.0})
      for (int n = 0; n <= 4; ++n)
        for (int i = 1; i <= n + 1; ++i) {
          CHECK(ode_residual(assemble_polynomial_solution(n, i, s, b)) < 1e-8);
        }
  CHECK_THROWS_AS(ode_residual(make_parameters(0, 0, 0), 2.0, ground, std::vector<double>{0.0}), Error);
}

TEST_CASE("norms") {
  const TruncationSolution sol = assemble_polynomial_solution(1, 2, 0.0, 0.0);
  // M(1) + 2 sqrt(2) M(2) + 2 M(3) = 3/2 + sqrt(2 pi)/2
  CHECK(norm_check(sol) == doctest::Approx(1.5 + std::sqrt(2.0 * std::numbers::pi) / 2).epsilon(1e-12));
  CHECK(norm_check(sol) == doctest::Approx(2.7533141373).epsilon(1e-10));

  const TruncationSolution shifted = assemble_polynomial_solution(2, 2, 0.5, 1.0);
  auto integrand = [&](double x) {
    double H = 0.0;
    for (auto it = shifted.coeffs.rbegin(); it != shifted.coeffs.rend(); ++it) H = H * x + *it;
    return std::pow(x, 2.0 * shifted.s + 1.0) * std::exp(-shifted.b * x - x * x) * H * H;
  };
  CHECK(norm_check(shifted) == doctest::Approx(simpson(integrand, 0.0, 12.0, 40000)).epsilon(1e-9));

  const auto result = solve(make_parameters(0.0, 0.3, 0.2), BasisSpec{0.0, 16});
  CHECK(norm_check(result, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(norm_check(result, 16), Error);
}

TEST_CASE("finite differences against Ritz away from the closed-form points") {
  const double points[][3] = {{0.3, -2.0, 1.0}, {1.7, 2.5, -1.5}, {3.2, -0.4, 0.0}};
  for (const auto& p : points) {
    const auto fd = fd_spectrum(make_parameters(p[0], p[1], p[2]), GridSpec{}, 3);
    const auto w = RitzSolver(p[0]).eigenvalues(p[1], p[2]);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(fd[j] - w[j]) < 1e-3);
      CHECK(w[j] >= fd[j] - 1e-3);
    }
  }
}
