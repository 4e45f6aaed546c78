#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qes/recurrence.hpp"
#include "qes/variational.hpp"

using namespace qes;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

}  // namespace

TEST_CASE("Gaussian moments") {
  CHECK(moment(0.0) == doctest::Approx(kSqrtPi / 2));
  CHECK(moment(1.0) == doctest::Approx(0.5));
  CHECK(moment(2.0) == doctest::Approx(kSqrtPi / 4));
  CHECK(moment(3.0) == doctest::Approx(0.5));
  CHECK(moment(-0.5) == doctest::Approx(std::tgamma(0.25) / 2));
  CHECK_THROWS_AS(moment(-1.0), Error);
}

TEST_CASE("matrix elements in the primitive basis") {
  const auto m = assemble_matrices(make_parameters(0.0, 0.0, 0.0), {0.0, 3});
  // S_kl = M(k + l + 1)
  CHECK(m.overlap(0, 0) == doctest::Approx(0.5));
  CHECK(m.overlap(0, 1) == doctest::Approx(kSqrtPi / 4));
  CHECK(m.overlap(1, 2) == doctest::Approx(0.5 * std::tgamma(2.5)));
  // <phi_0|H|phi_0> = 2 M(1) for the oscillator ground state, W = 2
  CHECK(m.hamiltonian(0, 0) / m.overlap(0, 0) == doctest::Approx(2.0));
  CHECK((m.hamiltonian - m.hamiltonian.transpose()).norm() == doctest::Approx(0.0));
}

TEST_CASE("oscillator spectrum 2(2j + s + 1)") {
  for (double gamma_sq : {0.0, 0.25, 1.0, 2.25}) {
    const RitzSolver solver(gamma_sq);
    const double s = std::sqrt(gamma_sq);
    const auto w = solver.eigenvalues(0.0, 0.0);
    for (int j = 0; j <= 4; ++j) CHECK(std::abs(w[j] - 2.0 * (2 * j + s + 1)) < 1e-10);
  }
}

TEST_CASE("closed-form point is reproduced") {
  const double a = std::sqrt(2.0);
  const auto result = solve(make_parameters(0.0, a, 0.0));
  CHECK(std::abs(result.eigenvalues[0] - 4.0) < 1e-10);
  CHECK(result.basis.size == 30);
  // ground state is 1 + sqrt(2) x in the first two primitives
  const Eigen::VectorXd v = result.eigenvectors.col(0);
  CHECK(v[1] / v[0] == doctest::Approx(a).epsilon(1e-6));
}

TEST_CASE("Hellmann-Feynman at the oscillator") {
  const auto r = hellmann_feynman_check(RitzSolver(0.0), 0.0, 0.0, 0);
  CHECK(r.mean_inv_x == doctest::Approx(kSqrtPi).epsilon(1e-8));
  CHECK(r.mean_x == doctest::Approx(kSqrtPi / 2).epsilon(1e-8));
  CHECK(r.defect_a < 1e-6);
  CHECK(r.defect_b < 1e-6);
  CHECK(r.step_a == doctest::Approx(1e-4));
}

TEST_CASE("derivatives are positive and match expectations") {
  const RitzSolver solver(1.0);
  for (double a : {-2.0, 0.5, 2.5})
    for (double b : {-1.0, 2.0})
      for (int j = 0; j < 3; ++j) {
        const auto r = hellmann_feynman_check(solver, a, b, j);
        CHECK(r.dW_da_fd > 0.0);
        CHECK(r.dW_db_fd > 0.0);
        CHECK(r.defect_a < 1e-5);
        CHECK(r.defect_b < 1e-5);
      }
}

TEST_CASE("expectations from a full solve") {
  const auto result = solve(make_parameters(0.0, 0.0, 0.0), BasisSpec{0.0, 20});
  CHECK(expectation_inverse_x(result, 0) == doctest::Approx(kSqrtPi).epsilon(1e-9));
  CHECK(expectation_x(result, 0) == doctest::Approx(kSqrtPi / 2).epsilon(1e-9));
  // first excited state (1 - x^2) exp(-x^2/2)
  const double norm = 0.5 - 2 * 0.5 + 1.0;  // M(1) - 2 M(3) + M(5)
  const double mean_x = (kSqrtPi / 4 - 2 * 3 * kSqrtPi / 8 + 15 * kSqrtPi / 16) / norm;
  CHECK(expectation_x(result, 1) == doctest::Approx(mean_x).epsilon(1e-9));
}

TEST_CASE("Ritz values decrease with the basis size") {
  const int sizes[] = {8, 12, 16, 20, 24, 28, 30};
  Eigen::VectorXd previous;
  for (int n : sizes) {
    const Eigen::VectorXd w = RitzSolver(std::make_shared<const ReducedBasis>(0.7, n)).eigenvalues(-1.3, 0.8);
    if (previous.size() > 0) {
      for (int j = 0; j < 4; ++j) CHECK(w[j] <= previous[j] + 1e-12);
    }
    previous = w;
  }
}

TEST_CASE("eigenvectors are S-orthonormal") {
  const auto params = make_parameters(1.0, 0.4, -0.6);
  const auto result = solve(params, BasisSpec{1.0, 10});
  const auto m = assemble_matrices(params, {1.0, 10});
  const Eigen::MatrixXd gram = result.eigenvectors.transpose() * m.overlap * result.eigenvectors;
  CHECK((gram - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-5);
  // and satisfy H v = W S v
  for (int j = 0; j < 3; ++j) {
    const Eigen::VectorXd v = result.eigenvectors.col(j);
    const Eigen::VectorXd r = m.hamiltonian * v - result.eigenvalues[j] * m.overlap * v;
    CHECK(r.norm() < 1e-6 * std::max(1.0, std::abs(result.eigenvalues[j])));
  }
}

TEST_CASE("conditioning policy") {
  // The ceiling applies to cond(S) scaled by the working precision, ~1e-100.
  CHECK_NOTHROW(ReducedBasis(0.0, 30, 1e-40));
  CHECK_THROWS_AS(ReducedBasis(0.0, 30, 1e-95), Error);
  RitzOptions strict;
  strict.condition_ceiling = 1e-95;
  CHECK_THROWS_AS(RitzSolver(0.0, strict), Error);
  try {
    RitzSolver solver(0.0, strict);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IllConditioned);
  }
  const ReducedBasis basis(0.0, 20);
  CHECK(basis.condition_estimate() > 1.0);
  CHECK(basis.size() == 20);
}

TEST_CASE("ill-conditioned basis steps down") {
  // Smallest decade ceiling that N = 30 still satisfies; one decade below it
  // N = 30 is rejected, while N = 26 is about four decades better conditioned.
  int decade = -95;
  while (decade < -30) {
    try {
      ReducedBasis(0.0, 30, std::pow(10.0, decade));
      break;
    } catch (const Error&) {
      ++decade;
    }
  }
  REQUIRE(decade > -95);
  REQUIRE(decade < -30);
  RitzOptions opts;
  opts.condition_ceiling = std::pow(10.0, decade - 1);
  CHECK_THROWS_AS(ReducedBasis(0.0, 30, opts.condition_ceiling), Error);
  const RitzSolver solver(0.0, opts);
  CHECK(solver.reduced().size() == 26);
  CHECK(solver.eigenvalue(0.0, 0.0, 0) == doctest::Approx(2.0).epsilon(1e-10));

  opts.min_basis_size = 28;
  CHECK_THROWS_AS(RitzSolver(0.0, opts), Error);
}

TEST_CASE("spectrum sweep and CSV") {
  const std::vector<double> as{-1.0, 0.0, 1.0};
  const auto rows = spectrum_sweep(0.0, 0.0, as, 2, 16);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].W[0] == doctest::Approx(2.0));
  CHECK(rows[0].W[0] < rows[1].W[0]);
  CHECK(rows[1].W[0] < rows[2].W[0]);
  std::ostringstream csv;
  write_csv(csv, rows, 2);
  CHECK(csv.str().rfind("a,W_0,W_1,flag\n", 0) == 0);
  CHECK(csv.str().find(",ok\n") != std::string::npos);
}

TEST_CASE("invalid requests") {
  CHECK_THROWS_AS(solve(make_parameters(1.0, 0.0, 0.0), BasisSpec{0.5, 10}), Error);
  CHECK_THROWS_AS(RitzSolver(0.0).eigenvalue(0.0, 0.0, 30), Error);
  CHECK_THROWS_AS(hellmann_feynman_check(RitzSolver(0.0), 0.0, 0.0, 0, -1.0), Error);
  CHECK_THROWS_AS(spectrum_sweep(0.0, 0.0, std::vector<double>{0.0}, 0, 12), Error);
}
