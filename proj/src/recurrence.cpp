#include "qes/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "qes/format.hpp"
#include "qes/sturm.hpp"

namespace qes {

namespace {

void check_level(int n) {
  if (n < 0 || n > kMaxTruncationLevel) {
    std::ostringstream msg;
    msg << "truncation level n=" << n << " outside [0, " << kMaxTruncationLevel << "]";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

void check_exponent(double s) {
  if (!std::isfinite(s) || s < 0.0) throw Error(ErrorKind::InvalidArgument, "exponent s must be finite and >= 0");
}

Polynomial linear(const Rational& constant, const Rational& a_coeff, const Rational& b_coeff) {
  Polynomial p(constant);
  p += Polynomial(Monomial{1, 0, 0}, a_coeff);
  p += Polynomial(Monomial{0, 1, 0}, b_coeff);
  return p;
}

}  // namespace

RecurrenceStep recurrence_coefficients(int j, double s, double a, double b, double W) {
  if (j < -1) throw Error(ErrorKind::InvalidArgument, "recurrence index j must be >= -1");
  check_exponent(s);
  const double jd = j;
  const double denom = (jd + 2.0) * (jd + 2.0 * (s + 1.0));
  RecurrenceStep step;
  step.A = (2.0 * a + b * (2.0 * jd + 2.0 * s + 3.0)) / (2.0 * denom);
  step.B = (4.0 * (2.0 * jd + 2.0 * s - W + 2.0) - b * b) / (4.0 * denom);
  return step;
}

std::vector<double> series_coefficients(const RadialParameters& params, double W, std::size_t count) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "series_coefficients needs count >= 1");
  const RadialParameters p = validate(params);
  std::vector<double> c;
  c.reserve(count);
  c.push_back(1.0);
  double previous = 0.0;  // c_{j}, starting from c_{-1}
  for (int j = -1; c.size() < count; ++j) {
    const RecurrenceStep step = recurrence_coefficients(j, p.s, p.a, p.b, W);
    const double next = step.A * c.back() + step.B * previous;
    previous = c.back();
    c.push_back(next);
  }
  return c;
}

double truncation_energy(int n, double s, double b) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "truncation level must be >= 0");
  check_exponent(s);
  return 2.0 * (n + s + 1.0) - b * b / 4.0;
}

Polynomial truncation_coefficient(int n, const Rational& s) {
  check_level(n);
  if (sgn(s) < 0) throw Error(ErrorKind::InvalidArgument, "exponent s must be >= 0");
  // W = 2(n+s+1) - b^2/4 kept symbolic in b so that the b^2 terms of B_j
  // cancel exactly.
  Polynomial W(Rational(2 * (n + 1)) + 2 * s);
  W -= Polynomial(Monomial{0, 2, 0}, Rational(1, 4));
  const Polynomial b_squared(Monomial{0, 2, 0}, Rational(1));

  Polynomial previous;            // c_{-1}
  Polynomial current(Rational(1));  // c_0
  for (int j = -1; j < n; ++j) {
    const Rational denom = Rational(j + 2) * (Rational(j) + 2 * (s + 1));
    const Polynomial A = linear(Rational(0), Rational(2), Rational(2 * j + 3) + 2 * s) * Rational(1 / (2 * denom));
    Polynomial B_numerator(4 * (Rational(2 * j + 2) + 2 * s));
    B_numerator -= Rational(4) * W;
    B_numerator -= b_squared;
    const Polynomial B = B_numerator * Rational(1 / (4 * denom));
    Polynomial next = A * current + B * previous;
    previous = std::move(current);
    current = std::move(next);
  }
  return current;
}

Polynomial build_truncation_polynomial(int n, const Rational& s) { return canonicalize(truncation_coefficient(n, s)); }

Polynomial build_truncation_polynomial_symbolic(int n) {
  check_level(n);
  const Polynomial a_var = Polynomial::variable(Variable::A);
  const Polynomial b_var = Polynomial::variable(Variable::B);
  const Polynomial s_var = Polynomial::variable(Variable::S);

  Polynomial previous(Rational(1));                                             // P_0
  Polynomial current = Rational(2) * a_var + b_var * (Rational(2) * s_var + Polynomial(Rational(1)));  // P_1
  for (int j = 0; j < n; ++j) {
    Polynomial lead = Rational(2) * a_var + b_var * (Rational(2) * s_var + Polynomial(Rational(2 * j + 3)));
    Polynomial coupling = Polynomial(Rational(8 * (j - n) * (j + 1))) * (Rational(2) * s_var + Polynomial(Rational(j + 1)));
    Polynomial next = lead * current + coupling * previous;
    previous = std::move(current);
    current = std::move(next);
  }
  return canonicalize(current);
}

std::vector<double> truncation_roots(const Polynomial& canonical, int n, double b, double tolerance) {
  if (!std::isfinite(b)) throw Error(ErrorKind::NonFinite, "b must be finite");
  const auto in_a = UnivariatePolynomial::from(canonical.substitute(Variable::B, to_rational(b)), Variable::A);
  std::vector<double> roots = real_roots_with_multiplicity(in_a, tolerance);
  if (roots.size() != static_cast<std::size_t>(n + 1)) {
    std::ostringstream msg;
    msg << "c_" << n + 1 << "(a, b=" << b << ") has " << roots.size() << " certified real roots, expected " << n + 1;
    throw Error(ErrorKind::RootCountMismatch, msg.str());
  }
  return roots;
}

std::vector<double> truncation_roots(int n, double s, double b, double tolerance) {
  check_exponent(s);
  return truncation_roots(build_truncation_polynomial(n, to_rational(s)), n, b, tolerance);
}

RootCount certified_root_count(const Polynomial& canonical, double b) {
  const auto in_a = UnivariatePolynomial::from(canonical.substitute(Variable::B, to_rational(b)), Variable::A);
  RootCount count;
  count.distinct = SturmSequence(in_a).count_all();
  for (const auto& [factor, multiplicity] : square_free_decomposition(in_a)) {
    count.with_multiplicity += multiplicity * SturmSequence(factor).count_all();
  }
  return count;
}

RadialParameters TruncationSolution::params() const { return make_parameters(s * s, a_root, b); }

TruncationSolution assemble_polynomial_solution(int n, int i, double s, double b) {
  check_level(n);
  if (i < 1 || i > n + 1) throw Error(ErrorKind::InvalidArgument, "root index i must lie in 1..n+1");
  const std::vector<double> roots = truncation_roots(n, s, b);

  TruncationSolution sol;
  sol.n = n;
  sol.i = i;
  sol.s = s;
  sol.b = b;
  sol.a_root = roots[static_cast<std::size_t>(i - 1)];
  sol.W = truncation_energy(n, s, b);

  const RadialParameters params{s * s, sol.a_root, b, s};
  std::vector<double> c = series_coefficients(params, sol.W, static_cast<std::size_t>(n) + 3);
  double scale = 0.0;
  for (int j = 0; j <= n; ++j) scale = std::max(scale, std::abs(c[static_cast<std::size_t>(j)]));
  sol.tail = std::max(std::abs(c[n + 1]), std::abs(c[n + 2])) / scale;
  if (!(sol.tail <= kTailTolerance)) {
    std::ostringstream msg;
    msg << "tail coefficients of level " << n << " root " << i << " do not vanish (relative " << sol.tail << ")";
    throw Error(ErrorKind::CertificationFailed, msg.str());
  }
  c.resize(static_cast<std::size_t>(n) + 1);
  sol.coeffs = std::move(c);
  return sol;
}

bool CurveTable::any_crossing() const {
  return std::any_of(rows.begin(), rows.end(), [](const CurveRow& r) { return r.branch_crossing; });
}

CurveTable curve_sweep(int n, double s, std::span<const double> b_values, double crossing_tolerance) {
  if (b_values.empty()) throw Error(ErrorKind::InvalidArgument, "curve_sweep needs at least one b sample");
  check_exponent(s);
  const Polynomial canonical = build_truncation_polynomial(n, to_rational(s));
  CurveTable table;
  table.n = n;
  table.s = s;
  table.rows.reserve(b_values.size());
  for (double b : b_values) {
    CurveRow row;
    row.b = b;
    // All n+1 roots are real and returned sorted; on the line the matching
    // of two sorted lists in order is the one of least total displacement,
    // so branch k is simply the k-th root.
    row.roots = truncation_roots(canonical, n, b);
    for (std::size_t k = 1; k < row.roots.size(); ++k) {
      if (row.roots[k] - row.roots[k - 1] < crossing_tolerance) row.branch_crossing = true;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_csv(std::ostream& out, const CurveTable& table) {
  out << "b";
  for (int k = 1; k <= table.n + 1; ++k) out << ",a_" << k;
  out << "\n";
  for (const auto& row : table.rows) {
    out << format_number(row.b);
    for (double a : row.roots) out << "," << format_number(a);
    out << "\n";
  }
}

}  // namespace qes
