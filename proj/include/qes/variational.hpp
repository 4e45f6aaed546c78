#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qes/model.hpp"

/// Rayleigh-Ritz solver over the non-orthogonal basis
/// phi_k(x) = x^{s+k} exp(-x^2/2), k = 0..N-1, s = |gamma|.
namespace qes {

/// M(p) = int_0^inf x^p exp(-x^2) dx = Gamma((p+1)/2) / 2, p > -1.
double moment(double p);

struct BasisSpec {
  double s = 0.0;
  int size = 30;
};

struct OperatorMatrices {
  Eigen::MatrixXd hamiltonian;
  Eigen::MatrixXd overlap;
};

/// H and S in double precision from the symmetric (weak) form of the
/// operator. Moments with an exactly zero prefactor are never evaluated.
OperatorMatrices assemble_matrices(const RadialParameters& params, const BasisSpec& basis);

struct RitzOptions {
  int basis_size = 30;
  int min_basis_size = 12;
  int retry_step = 4;
  /// Ceiling on the overlap condition number as seen by a double-precision
  /// reduction, i.e. cond(S) * eps_working / eps_double.
  double condition_ceiling = 1e12;
};

/// Overlap-orthonormalized operators for one (gamma^2, N). The Cholesky
/// reduction S = L L^T and the products L^{-1} X L^{-T} are carried out in
/// extended precision and rounded once; what is stored is
///   H(a, b) = kinetic + a * inverse_x + b * x_operator   (orthonormal basis)
/// together with the map back to phi-coefficients, v = L^{-T} y.
class ReducedBasis {
 public:
  ReducedBasis(double gamma_sq, int size, double condition_ceiling = RitzOptions{}.condition_ceiling);

  double gamma_sq() const { return gamma_sq_; }
  double s() const { return s_; }
  int size() const { return size_; }
  /// Frobenius-norm condition estimate of the diagonally scaled overlap.
  double condition_estimate() const { return condition_; }

  const Eigen::MatrixXd& kinetic() const { return kinetic_; }
  const Eigen::MatrixXd& inverse_x() const { return inverse_x_; }
  const Eigen::MatrixXd& x_operator() const { return x_operator_; }
  const Eigen::MatrixXd& to_primitive() const { return to_primitive_; }

  Eigen::MatrixXd hamiltonian(double a, double b) const;

 private:
  double gamma_sq_ = 0.0;
  double s_ = 0.0;
  int size_ = 0;
  double condition_ = 0.0;
  Eigen::MatrixXd kinetic_;
  Eigen::MatrixXd inverse_x_;
  Eigen::MatrixXd x_operator_;
  Eigen::MatrixXd to_primitive_;
};

struct SpectrumResult {
  RadialParameters params;
  BasisSpec basis;
  Eigen::VectorXd eigenvalues;       ///< ascending
  Eigen::MatrixXd eigenvectors;      ///< columns: phi-basis coefficients, v^T S v = 1
  Eigen::MatrixXd orthonormal_vectors;  ///< columns: coordinates in the reduced basis
  double condition_estimate = 0.0;
  std::shared_ptr<const ReducedBasis> reduced;
};

/// Reusable solver for fixed gamma^2: the extended-precision reduction is
/// done once, each solve(a, b) is a double-precision symmetric eigensolve.
/// Immutable after construction; safe to share between threads.
class RitzSolver {
 public:
  /// Builds the reduction at options.basis_size, stepping down by
  /// retry_step (not below min_basis_size) on IllConditioned.
  explicit RitzSolver(double gamma_sq, const RitzOptions& options = {});
  explicit RitzSolver(std::shared_ptr<const ReducedBasis> reduced);

  SpectrumResult solve(double a, double b) const;
  Eigen::VectorXd eigenvalues(double a, double b) const;
  double eigenvalue(double a, double b, int level) const;

  const ReducedBasis& reduced() const { return *reduced_; }
  BasisSpec basis() const { return {reduced_->s(), reduced_->size()}; }

 private:
  std::shared_ptr<const ReducedBasis> reduced_;
};

/// Generalized problem H v = W S v at exactly the given basis. Throws
/// IllConditioned instead of retrying.
SpectrumResult solve(const RadialParameters& params, const BasisSpec& basis);
/// Same with the step-down retry policy of RitzOptions.
SpectrumResult solve(const RadialParameters& params, const RitzOptions& options = {});

/// <1/x> = v^T M^{(-1)} v for the S-normalized eigenvector of `level`.
double expectation_inverse_x(const SpectrumResult& result, int level);
/// <x> = v^T M^{(1)} v.
double expectation_x(const SpectrumResult& result, int level);

struct HellmannFeynmanReport {
  double dW_da_fd = 0.0;
  double mean_inv_x = 0.0;
  double dW_db_fd = 0.0;
  double mean_x = 0.0;
  double defect_a = 0.0;
  double defect_b = 0.0;
  double step_a = 0.0;
  double step_b = 0.0;
};

/// Central differences of W_level in a and b against <1/x> and <x>. With no
/// step given, h = 1e-4 * max(1, |a|) (resp. |b|).
HellmannFeynmanReport hellmann_feynman_check(const RadialParameters& params, const BasisSpec& basis, int level,
                                             std::optional<double> step = std::nullopt);
HellmannFeynmanReport hellmann_feynman_check(const RitzSolver& solver, double a, double b, int level,
                                             std::optional<double> step = std::nullopt);

struct SpectrumRow {
  double a = 0.0;
  std::vector<double> W;
  bool ill_conditioned = false;
};

/// Lowest `levels` eigenvalues along an a-grid at fixed gamma^2, b.
std::vector<SpectrumRow> spectrum_sweep(double gamma_sq, double b, std::span<const double> a_grid, int levels,
                                        int basis_size = 30);
std::vector<SpectrumRow> spectrum_sweep(const RitzSolver& solver, double b, std::span<const double> a_grid,
                                        int levels);

/// CSV with header `a,W_0,...,W_{L-1},flag`.
void write_csv(std::ostream& out, std::span<const SpectrumRow> rows, int levels);

}  // namespace qes
