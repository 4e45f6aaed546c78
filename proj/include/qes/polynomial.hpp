#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace qes {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (GMP canonicalizes after every arithmetic operation).
using Rational = mpq_class;

/// Exact value of a finite double (every double is a dyadic rational).
Rational to_rational(double x);
double to_double(const Rational& q);

enum class Variable { A, B, S };

/// Exponents of a * b * s.
struct Monomial {
  unsigned a = 0;
  unsigned b = 0;
  unsigned s = 0;

  unsigned exponent(Variable v) const;
  auto operator<=>(const Monomial&) const = default;
};

/// Sparse polynomial in (a, b, s) with rational coefficients. Zero
/// coefficients are never stored, so structural equality is symbolic
/// equality.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(const Rational& constant);
  Polynomial(const Monomial& m, const Rational& coefficient);

  static Polynomial variable(Variable v);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  unsigned degree(Variable v) const;
  Rational coefficient(const Monomial& m) const;

  /// Term that is greatest in lexicographic (a, b, s) order, i.e. the
  /// leading term in a.
  std::pair<Monomial, Rational> leading_term() const;

  Polynomial substitute(Variable v, const Rational& value) const;
  Rational evaluate(const Rational& a, const Rational& b, const Rational& s) const;
  double evaluate(double a, double b, double s = 0.0) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& factor);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(Polynomial lhs, const Polynomial& rhs) { return lhs *= rhs; }
  friend Polynomial operator*(Polynomial lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Polynomial operator*(const Rational& lhs, Polynomial rhs) { return rhs *= lhs; }
  friend bool operator==(const Polynomial& lhs, const Polynomial& rhs) { return lhs.terms_ == rhs.terms_; }

  /// Human-readable expanded form, terms in descending lexicographic order.
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  Terms terms_;
};

/// Scales p by the positive rational that clears all denominators, makes
/// the integer content 1 and the leading a-coefficient positive. If `scale`
/// is given it receives the factor with p == scale * result.
Polynomial canonicalize(const Polynomial& p, Rational* scale = nullptr);

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first. The zero polynomial has no coefficients.
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<Rational> coefficients);

  /// Collapses p onto variable v; all other exponents must be zero.
  static UnivariatePolynomial from(const Polynomial& p, Variable v);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& leading() const { return coeffs_.back(); }

  Rational evaluate(const Rational& x) const;
  double evaluate(double x) const;
  int sign_at(const Rational& x) const;

  UnivariatePolynomial derivative() const;
  /// Divides by |leading coefficient|; keeps the sign pattern.
  UnivariatePolynomial normalized() const;
  UnivariatePolynomial operator-() const;
  friend UnivariatePolynomial operator+(const UnivariatePolynomial& lhs, const UnivariatePolynomial& rhs);
  friend UnivariatePolynomial operator-(const UnivariatePolynomial& lhs, const UnivariatePolynomial& rhs);

  /// Euclidean division; divisor must be nonzero.
  static void divide(const UnivariatePolynomial& dividend, const UnivariatePolynomial& divisor,
                     UnivariatePolynomial& quotient, UnivariatePolynomial& remainder);
  /// Monic greatest common divisor.
  static UnivariatePolynomial gcd(UnivariatePolynomial lhs, UnivariatePolynomial rhs);

  friend bool operator==(const UnivariatePolynomial&, const UnivariatePolynomial&) = default;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

}  // namespace qes
