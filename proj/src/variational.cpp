#include "qes/variational.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "qes/format.hpp"

namespace qes {

namespace {

// 100 significant digits: enough headroom for the monomial Gram matrices up
// to N ~ 60, whose condition numbers grow roughly tenfold per added function.
using Extended = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<100>,
                                               boost::multiprecision::et_off>;
using ExtendedMatrix = std::vector<std::vector<Extended>>;

template <class T>
struct ElementBlocks {
  std::vector<std::vector<T>> kinetic, inverse_x, x_operator, overlap;

  explicit ElementBlocks(int n)
      : kinetic(n, std::vector<T>(n)), inverse_x(kinetic), x_operator(kinetic), overlap(kinetic) {}
};

// Matrix elements of the weak form in terms of moment(q) = M(2s + q):
//   S_kl      = M(2s+q+1)
//   K_kl      = [(s+k)(s+l) + gamma^2] M(2s+q-1) - (2s+q) M(2s+q+1) + 2 M(2s+q+3)
//   (1/x)_kl  = M(2s+q),   (x)_kl = M(2s+q+2),   q = k + l.
// The first kinetic term is skipped when its prefactor is exactly zero
// (s = 0, k = 0 or l = 0), which is the only way M(-1) could appear.
template <class T, class MomentAt>
ElementBlocks<T> fill_elements(const T& s, const T& gamma_sq, int n, MomentAt&& moment_at) {
  ElementBlocks<T> blocks(n);
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      const int q = k + l;
      const T centrifugal = (s + k) * (s + l) + gamma_sq;
      T kinetic = -(2 * s + q) * moment_at(q + 1) + 2 * moment_at(q + 3);
      if (centrifugal != 0) kinetic += centrifugal * moment_at(q - 1);
      blocks.kinetic[k][l] = blocks.kinetic[l][k] = kinetic;
      blocks.inverse_x[k][l] = blocks.inverse_x[l][k] = moment_at(q);
      blocks.x_operator[k][l] = blocks.x_operator[l][k] = moment_at(q + 2);
      blocks.overlap[k][l] = blocks.overlap[l][k] = moment_at(q + 1);
    }
  }
  return blocks;
}

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m[i][j];
  return out;
}

Eigen::MatrixXd to_eigen(const ExtendedMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = static_cast<double>(m[i][j]);
  return out;
}

// M(2s+q) for q = -1 .. q_max from the two base values and
// M(p+2) = (p+1)/2 M(p). M(2s-1) only exists for s > 0.
class ExtendedMoments {
 public:
  ExtendedMoments(const Extended& s, int q_max) : s_(s), values_(static_cast<std::size_t>(q_max) + 2) {
    values_[1] = boost::math::tgamma(s + Extended(0.5)) / 2;
    values_[2] = boost::math::tgamma(s + Extended(1)) / 2;
    for (int q = 2; q <= q_max; ++q) values_[q + 1] = values_[q - 1] * (2 * s + (q - 1)) / 2;
    if (s > 0) values_[0] = values_[2] / s;
  }

  const Extended& operator()(int q) const {
    if (q == -1 && s_ == 0) throw Error(ErrorKind::MomentDivergent, "M(-1) requested at s = 0");
    return values_[static_cast<std::size_t>(q + 1)];
  }

 private:
  Extended s_;
  std::vector<Extended> values_;
};

ExtendedMatrix multiply(const ExtendedMatrix& lhs, const ExtendedMatrix& rhs) {
  const std::size_t n = lhs.size();
  ExtendedMatrix out(n, std::vector<Extended>(n, Extended(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (lhs[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += lhs[i][k] * rhs[k][j];
    }
  return out;
}

ExtendedMatrix transpose(const ExtendedMatrix& m) {
  const std::size_t n = m.size();
  ExtendedMatrix out(n, std::vector<Extended>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = m[j][i];
  return out;
}

Extended frobenius(const ExtendedMatrix& m) {
  Extended sum = 0;
  for (const auto& row : m)
    for (const auto& x : row) sum += x * x;
  return sqrt(sum);
}

void check_level(const SpectrumResult& result, int level) {
  if (level < 0 || level >= result.eigenvalues.size()) {
    throw Error(ErrorKind::InvalidArgument, "level outside the computed spectrum");
  }
}

double quadratic_form(const Eigen::MatrixXd& m, const Eigen::VectorXd& y) { return y.dot(m * y); }

}  // namespace

double moment(double p) {
  if (!(p > -1.0)) {
    std::ostringstream msg;
    msg << "moment M(" << p << ") diverges (requires p > -1)";
    throw Error(ErrorKind::MomentDivergent, msg.str());
  }
  return 0.5 * std::tgamma(0.5 * (p + 1.0));
}

OperatorMatrices assemble_matrices(const RadialParameters& params, const BasisSpec& basis) {
  const RadialParameters p = validate(params);
  if (basis.size < 1) throw Error(ErrorKind::InvalidArgument, "basis size must be >= 1");
  if (basis.s != p.s) throw Error(ErrorKind::InvalidArgument, "basis exponent must equal |gamma|");
  auto blocks = fill_elements<double>(p.s, p.gamma_sq, basis.size, [&](int q) { return moment(2.0 * p.s + q); });
  OperatorMatrices out;
  out.overlap = to_eigen(blocks.overlap);
  out.hamiltonian = to_eigen(blocks.kinetic);
  if (p.a != 0.0) out.hamiltonian += p.a * to_eigen(blocks.inverse_x);
  if (p.b != 0.0) out.hamiltonian += p.b * to_eigen(blocks.x_operator);
  return out;
}

ReducedBasis::ReducedBasis(double gamma_sq, int size, double condition_ceiling) {
  const RadialParameters p = make_parameters(gamma_sq, 0.0, 0.0);
  if (size < 1) throw Error(ErrorKind::InvalidArgument, "basis size must be >= 1");
  gamma_sq_ = p.gamma_sq;
  s_ = p.s;
  size_ = size;

  const Extended g2(gamma_sq);
  const Extended s = sqrt(g2);
  const ExtendedMoments moments(s, 2 * size + 2);
  auto blocks = fill_elements<Extended>(s, g2, size, moments);
  const auto& S = blocks.overlap;
  const auto n = static_cast<std::size_t>(size);

  // Cholesky S = L L^T.
  ExtendedMatrix L(n, std::vector<Extended>(n, Extended(0)));
  for (std::size_t j = 0; j < n; ++j) {
    Extended pivot = S[j][j];
    for (std::size_t k = 0; k < j; ++k) pivot -= L[j][k] * L[j][k];
    if (!(pivot > 0)) {
      std::ostringstream msg;
      msg << "overlap factorization failed at column " << j << " for N=" << size;
      throw Error(ErrorKind::IllConditioned, msg.str());
    }
    L[j][j] = sqrt(pivot);
    for (std::size_t i = j + 1; i < n; ++i) {
      Extended t = S[i][j];
      for (std::size_t k = 0; k < j; ++k) t -= L[i][k] * L[j][k];
      L[i][j] = t / L[j][j];
    }
  }
  // L^{-1} by forward substitution on the identity.
  ExtendedMatrix Linv(n, std::vector<Extended>(n, Extended(0)));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = c; i < n; ++i) {
      Extended t = (i == c) ? Extended(1) : Extended(0);
      for (std::size_t k = c; k < i; ++k) t -= L[i][k] * Linv[k][c];
      Linv[i][c] = t / L[i][i];
    }
  }
  const ExtendedMatrix LinvT = transpose(Linv);

  // Condition of the diagonally scaled overlap D S D, D = diag(S)^{-1/2}:
  // ||DSD||_F * ||D^{-1} S^{-1} D^{-1}||_F.
  ExtendedMatrix scaled(n, std::vector<Extended>(n));
  const ExtendedMatrix S_inv = multiply(LinvT, Linv);
  ExtendedMatrix scaled_inv(n, std::vector<Extended>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Extended dij = sqrt(S[i][i] * S[j][j]);
      scaled[i][j] = S[i][j] / dij;
      scaled_inv[i][j] = S_inv[i][j] * dij;
    }
  const Extended condition = frobenius(scaled) * frobenius(scaled_inv);
  condition_ = static_cast<double>(condition);
  const Extended effective = condition * std::numeric_limits<Extended>::epsilon() /
                             Extended(std::numeric_limits<double>::epsilon());
  if (effective > Extended(condition_ceiling)) {
    std::ostringstream msg;
    msg << "overlap condition " << condition_ << " exceeds the ceiling for N=" << size;
    throw Error(ErrorKind::IllConditioned, msg.str());
  }

  auto reduce = [&](const ExtendedMatrix& X) {
    Eigen::MatrixXd out = to_eigen(multiply(multiply(Linv, X), LinvT));
    return Eigen::MatrixXd(0.5 * (out + out.transpose()));
  };
  kinetic_ = reduce(blocks.kinetic);
  inverse_x_ = reduce(blocks.inverse_x);
  x_operator_ = reduce(blocks.x_operator);
  to_primitive_ = to_eigen(LinvT);
}

Eigen::MatrixXd ReducedBasis::hamiltonian(double a, double b) const {
  Eigen::MatrixXd h = kinetic_;
  if (a != 0.0) h += a * inverse_x_;
  if (b != 0.0) h += b * x_operator_;
  return h;
}

RitzSolver::RitzSolver(double gamma_sq, const RitzOptions& options) {
  if (options.basis_size < 1 || options.min_basis_size < 1 || options.retry_step < 1) {
    throw Error(ErrorKind::InvalidArgument, "basis sizes and retry step must be positive");
  }
  int size = options.basis_size;
  while (true) {
    try {
      reduced_ = std::make_shared<const ReducedBasis>(gamma_sq, size, options.condition_ceiling);
      return;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::IllConditioned || size - options.retry_step < options.min_basis_size) throw;
      size -= options.retry_step;
    }
  }
}

RitzSolver::RitzSolver(std::shared_ptr<const ReducedBasis> reduced) : reduced_(std::move(reduced)) {
  if (!reduced_) throw Error(ErrorKind::InvalidArgument, "null reduced basis");
}

SpectrumResult RitzSolver::solve(double a, double b) const {
  SpectrumResult result;
  result.params = make_parameters(reduced_->gamma_sq(), a, b);
  result.basis = basis();
  result.condition_estimate = reduced_->condition_estimate();
  result.reduced = reduced_;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reduced_->hamiltonian(a, b));
  if (eig.info() != Eigen::Success) throw Error(ErrorKind::IllConditioned, "symmetric eigensolver did not converge");
  result.eigenvalues = eig.eigenvalues();
  Eigen::MatrixXd y = eig.eigenvectors();
  // Fix the arbitrary sign: largest-magnitude component positive.
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    Eigen::Index arg = 0;
    y.col(j).cwiseAbs().maxCoeff(&arg);
    if (y(arg, j) < 0) y.col(j) *= -1.0;
  }
  result.eigenvectors = reduced_->to_primitive() * y;
  result.orthonormal_vectors = std::move(y);
  return result;
}

Eigen::VectorXd RitzSolver::eigenvalues(double a, double b) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reduced_->hamiltonian(a, b), Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw Error(ErrorKind::IllConditioned, "symmetric eigensolver did not converge");
  return eig.eigenvalues();
}

double RitzSolver::eigenvalue(double a, double b, int level) const {
  if (level < 0 || level >= reduced_->size()) throw Error(ErrorKind::InvalidArgument, "level outside the basis");
  return eigenvalues(a, b)[level];
}

SpectrumResult solve(const RadialParameters& params, const BasisSpec& basis) {
  const RadialParameters p = validate(params);
  if (basis.s != p.s) throw Error(ErrorKind::InvalidArgument, "basis exponent must equal |gamma|");
  RitzSolver solver(std::make_shared<const ReducedBasis>(p.gamma_sq, basis.size));
  return solver.solve(p.a, p.b);
}

SpectrumResult solve(const RadialParameters& params, const RitzOptions& options) {
  const RadialParameters p = validate(params);
  return RitzSolver(p.gamma_sq, options).solve(p.a, p.b);
}

double expectation_inverse_x(const SpectrumResult& result, int level) {
  check_level(result, level);
  return quadratic_form(result.reduced->inverse_x(), result.orthonormal_vectors.col(level));
}

double expectation_x(const SpectrumResult& result, int level) {
  check_level(result, level);
  return quadratic_form(result.reduced->x_operator(), result.orthonormal_vectors.col(level));
}

HellmannFeynmanReport hellmann_feynman_check(const RitzSolver& solver, double a, double b, int level,
                                             std::optional<double> step) {
  if (step && !(*step > 0.0)) throw Error(ErrorKind::InvalidArgument, "finite-difference step must be positive");
  HellmannFeynmanReport report;
  report.step_a = step.value_or(1e-4 * std::max(1.0, std::abs(a)));
  report.step_b = step.value_or(1e-4 * std::max(1.0, std::abs(b)));
  report.dW_da_fd = (solver.eigenvalue(a + report.step_a, b, level) - solver.eigenvalue(a - report.step_a, b, level)) /
                    (2.0 * report.step_a);
  report.dW_db_fd = (solver.eigenvalue(a, b + report.step_b, level) - solver.eigenvalue(a, b - report.step_b, level)) /
                    (2.0 * report.step_b);
  const SpectrumResult at = solver.solve(a, b);
  report.mean_inv_x = expectation_inverse_x(at, level);
  report.mean_x = expectation_x(at, level);
  report.defect_a = std::abs(report.dW_da_fd - report.mean_inv_x);
  report.defect_b = std::abs(report.dW_db_fd - report.mean_x);
  return report;
}

HellmannFeynmanReport hellmann_feynman_check(const RadialParameters& params, const BasisSpec& basis, int level,
                                             std::optional<double> step) {
  const RadialParameters p = validate(params);
  if (basis.s != p.s) throw Error(ErrorKind::InvalidArgument, "basis exponent must equal |gamma|");
  RitzSolver solver(std::make_shared<const ReducedBasis>(p.gamma_sq, basis.size));
  return hellmann_feynman_check(solver, p.a, p.b, level, step);
}

std::vector<SpectrumRow> spectrum_sweep(const RitzSolver& solver, double b, std::span<const double> a_grid,
                                        int levels) {
  if (levels < 1 || levels > solver.reduced().size()) {
    throw Error(ErrorKind::InvalidArgument, "levels must lie in 1..basis size");
  }
  std::vector<SpectrumRow> rows;
  rows.reserve(a_grid.size());
  for (double a : a_grid) {
    SpectrumRow row;
    row.a = a;
    try {
      if (!std::isfinite(a)) throw Error(ErrorKind::NonFinite, "a must be finite");
      Eigen::VectorXd w = solver.eigenvalues(a, b);
      row.W.assign(w.data(), w.data() + levels);
    } catch (const Error&) {
      row.ill_conditioned = true;
      row.W.assign(static_cast<std::size_t>(levels), std::numeric_limits<double>::quiet_NaN());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SpectrumRow> spectrum_sweep(double gamma_sq, double b, std::span<const double> a_grid, int levels,
                                        int basis_size) {
  RitzOptions options;
  options.basis_size = basis_size;
  return spectrum_sweep(RitzSolver(gamma_sq, options), b, a_grid, levels);
}

void write_csv(std::ostream& out, std::span<const SpectrumRow> rows, int levels) {
  out << "a";
  for (int j = 0; j < levels; ++j) out << ",W_" << j;
  out << ",flag\n";
  for (const auto& row : rows) {
    out << format_number(row.a);
    for (int j = 0; j < levels; ++j) out << "," << format_number(row.W[static_cast<std::size_t>(j)]);
    out << "," << (row.ill_conditioned ? "ill_conditioned" : "ok") << "\n";
  }
}

}  // namespace qes
