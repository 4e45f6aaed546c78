#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "qes/model.hpp"
#include "qes/polynomial.hpp"

/// Frobenius solutions psi = x^s exp(-b x/2 - x^2/2) sum_j c_j x^j and the
/// closed-form (truncated) members of that family.
namespace qes {

/// Largest truncation level the exact construction accepts.
inline constexpr int kMaxTruncationLevel = 24;

struct RecurrenceStep {
  double A = 0.0;
  double B = 0.0;
};

/// Coefficients of c_{j+2} = A_j c_{j+1} + B_j c_j for j >= -1, s >= 0.
RecurrenceStep recurrence_coefficients(int j, double s, double a, double b, double W);

/// c_0 .. c_{count-1} with c_{-1} = 0, c_0 = 1.
std::vector<double> series_coefficients(const RadialParameters& params, double W, std::size_t count);

/// W_s^{(n)} = 2(n + s + 1) - b^2/4, the only eigenvalue compatible with a
/// degree-n polynomial factor.
double truncation_energy(int n, double s, double b);

/// c_{n+1}(a, b) exactly as produced by the recurrence at W = W_s^{(n)},
/// before any rescaling.
Polynomial truncation_coefficient(int n, const Rational& s);

/// Canonical form (integer coefficients, content 1, positive leading
/// a-coefficient) of c_{n+1}(a, b) for a fixed rational s.
Polynomial build_truncation_polynomial(int n, const Rational& s);

/// Canonical c_{n+1}(a, b, s) with s kept symbolic. Built from the
/// denominator-free form of the recurrence
///   P_{j+2} = [2a + b(2j+2s+3)] P_{j+1} + 8(j-n)(j+1)(j+2s+1) P_j,
/// which is how the integer identities for small n are usually quoted.
Polynomial build_truncation_polynomial_symbolic(int n);

/// Ascending real roots a^{(n,i)}(b), i = 1..n+1, with multiplicity.
/// Throws RootCountMismatch if fewer than n+1 are certified.
std::vector<double> truncation_roots(int n, double s, double b, double tolerance = 1e-12);
/// Same, reusing a polynomial from build_truncation_polynomial(n, s).
std::vector<double> truncation_roots(const Polynomial& canonical, int n, double b, double tolerance = 1e-12);

/// Number of distinct real roots of c_{n+1}(., b) and the count with
/// multiplicity, both read off exact Sturm sequences.
struct RootCount {
  std::size_t distinct = 0;
  std::size_t with_multiplicity = 0;
};
RootCount certified_root_count(const Polynomial& canonical, double b);

struct TruncationSolution {
  int n = 0;
  int i = 1;  ///< 1-based index into the ascending roots
  double s = 0.0;
  double b = 0.0;
  double a_root = 0.0;
  double W = 0.0;
  std::vector<double> coeffs;  ///< c_0 .. c_n
  double tail = 0.0;           ///< max(|c_{n+1}|, |c_{n+2}|) / max_j |c_j|

  RadialParameters params() const;
};

/// Relative tolerance on the vanishing tail coefficients.
inline constexpr double kTailTolerance = 1e-10;

/// Builds and certifies the closed-form solution for root i of level n.
/// Throws RootCountMismatch or CertificationFailed.
TruncationSolution assemble_polynomial_solution(int n, int i, double s, double b);

struct CurveRow {
  double b = 0.0;
  std::vector<double> roots;  ///< branch k at index k
  bool branch_crossing = false;
};

struct CurveTable {
  int n = 0;
  double s = 0.0;
  std::vector<CurveRow> rows;

  bool any_crossing() const;
};

/// Branch tables a^{(n,i)}(b) over the given b samples. Rows are matched to
/// branches by minimal total displacement; rows where two branches come
/// within `crossing_tolerance` are flagged.
CurveTable curve_sweep(int n, double s, std::span<const double> b_values, double crossing_tolerance = 1e-6);

/// CSV with header `b,a_1,...,a_{n+1}`.
void write_csv(std::ostream& out, const CurveTable& table);

}  // namespace qes
