#include "qes/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qes/error.hpp"

namespace qes {

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::NonFinite, "cannot convert non-finite double to rational");
  Rational q(x);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

unsigned Monomial::exponent(Variable v) const {
  switch (v) {
    case Variable::A: return a;
    case Variable::B: return b;
    case Variable::S: return s;
  }
  return 0;
}

namespace {

Monomial with_exponent(Monomial m, Variable v, unsigned e) {
  switch (v) {
    case Variable::A: m.a = e; break;
    case Variable::B: m.b = e; break;
    case Variable::S: m.s = e; break;
  }
  return m;
}

Rational power(const Rational& base, unsigned e) {
  Rational r(1);
  for (unsigned k = 0; k < e; ++k) r *= base;
  return r;
}

}  // namespace

Polynomial::Polynomial(const Rational& constant) { add_term(Monomial{}, constant); }

Polynomial::Polynomial(const Monomial& m, const Rational& coefficient) { add_term(m, coefficient); }

Polynomial Polynomial::variable(Variable v) { return Polynomial(with_exponent(Monomial{}, v, 1), Rational(1)); }

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

unsigned Polynomial::degree(Variable v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
  return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::pair<Monomial, Rational> Polynomial::leading_term() const {
  if (terms_.empty()) return {Monomial{}, Rational(0)};
  return *terms_.rbegin();
}

Polynomial Polynomial::substitute(Variable v, const Rational& value) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    out.add_term(with_exponent(m, v, 0), c * power(value, m.exponent(v)));
  }
  return out;
}

Rational Polynomial::evaluate(const Rational& a, const Rational& b, const Rational& s) const {
  Rational sum(0);
  for (const auto& [m, c] : terms_) sum += c * power(a, m.a) * power(b, m.b) * power(s, m.s);
  return sum;
}

double Polynomial::evaluate(double a, double b, double s) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    sum += c.get_d() * std::pow(a, m.a) * std::pow(b, m.b) * std::pow(s, m.s);
  }
  return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  Polynomial product;
  for (const auto& [ml, cl] : terms_) {
    for (const auto& [mr, cr] : rhs.terms_) {
      product.add_term(Monomial{ml.a + mr.a, ml.b + mr.b, ml.s + mr.s}, cl * cr);
    }
  }
  terms_ = std::move(product.terms_);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& factor) {
  if (sgn(factor) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= factor;
  return *this;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational magnitude = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = (m.a == 0 && m.b == 0 && m.s == 0);
    bool unit = (magnitude == 1);
    if (!unit || constant) out << magnitude.get_str();
    bool need_star = !unit || constant;
    auto factor = [&](const char* name, unsigned e) {
      if (e == 0) return;
      if (need_star) out << "*";
      out << name;
      if (e > 1) out << "^" << e;
      need_star = true;
    };
    factor("a", m.a);
    factor("b", m.b);
    factor("s", m.s);
  }
  return out.str();
}

Polynomial canonicalize(const Polynomial& p, Rational* scale) {
  if (p.is_zero()) {
    if (scale) *scale = 1;
    return p;
  }
  mpz_class denominator_lcm = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(denominator_lcm.get_mpz_t(), denominator_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  mpz_class content = 0;
  for (const auto& [m, c] : p.terms()) {
    mpz_class numerator = c.get_num() * (denominator_lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), numerator.get_mpz_t());
  }
  Rational factor(denominator_lcm, content);
  factor.canonicalize();
  if (sgn(p.leading_term().second) < 0) factor = -factor;
  if (scale) *scale = 1 / factor;
  return p * factor;
}

// --- UnivariatePolynomial ---------------------------------------------------

UnivariatePolynomial::UnivariatePolynomial(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

void UnivariatePolynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

UnivariatePolynomial UnivariatePolynomial::from(const Polynomial& p, Variable v) {
  std::vector<Rational> coeffs(p.degree(v) + 1, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    unsigned others = m.a + m.b + m.s - m.exponent(v);
    if (others != 0) {
      throw Error(ErrorKind::InvalidArgument, "polynomial depends on more than one variable");
    }
    coeffs[m.exponent(v)] += c;
  }
  return UnivariatePolynomial(std::move(coeffs));
}

Rational UnivariatePolynomial::evaluate(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double UnivariatePolynomial::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

int UnivariatePolynomial::sign_at(const Rational& x) const { return sgn(evaluate(x)); }

UnivariatePolynomial UnivariatePolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return UnivariatePolynomial(std::move(d));
}

UnivariatePolynomial UnivariatePolynomial::normalized() const {
  if (is_zero()) return *this;
  Rational lead = abs(leading());
  std::vector<Rational> c = coeffs_;
  for (auto& x : c) x /= lead;
  return UnivariatePolynomial(std::move(c));
}

UnivariatePolynomial UnivariatePolynomial::operator-() const {
  std::vector<Rational> c = coeffs_;
  for (auto& x : c) x = -x;
  return UnivariatePolynomial(std::move(c));
}

UnivariatePolynomial operator+(const UnivariatePolynomial& lhs, const UnivariatePolynomial& rhs) {
  std::vector<Rational> c(std::max(lhs.coeffs_.size(), rhs.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < lhs.coeffs_.size(); ++k) c[k] += lhs.coeffs_[k];
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) c[k] += rhs.coeffs_[k];
  return UnivariatePolynomial(std::move(c));
}

UnivariatePolynomial operator-(const UnivariatePolynomial& lhs, const UnivariatePolynomial& rhs) { return lhs + (-rhs); }

void UnivariatePolynomial::divide(const UnivariatePolynomial& dividend, const UnivariatePolynomial& divisor,
                                  UnivariatePolynomial& quotient, UnivariatePolynomial& remainder) {
  if (divisor.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  std::vector<Rational> rem = dividend.coeffs_;
  const int dd = divisor.degree();
  const int nd = dividend.degree();
  std::vector<Rational> quot(nd >= dd ? nd - dd + 1 : 0, Rational(0));
  for (int k = nd; k >= dd; --k) {
    if (sgn(rem[k]) == 0) continue;
    Rational factor = rem[k] / divisor.leading();
    quot[k - dd] = factor;
    for (int i = 0; i <= dd; ++i) rem[k - dd + i] -= factor * divisor.coeffs_[i];
  }
  quotient = UnivariatePolynomial(std::move(quot));
  remainder = UnivariatePolynomial(std::move(rem));
}

UnivariatePolynomial UnivariatePolynomial::gcd(UnivariatePolynomial lhs, UnivariatePolynomial rhs) {
  while (!rhs.is_zero()) {
    UnivariatePolynomial q, r;
    divide(lhs, rhs, q, r);
    lhs = std::move(rhs);
    rhs = std::move(r);
  }
  if (lhs.is_zero()) return lhs;
  Rational lead = lhs.leading();
  for (auto& c : lhs.coeffs_) c /= lead;
  return lhs;
}

}  // namespace qes
