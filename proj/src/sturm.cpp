#include "qes/sturm.hpp"

#include <algorithm>

#include "qes/error.hpp"

namespace qes {

namespace {

std::size_t sign_variations(const std::vector<int>& signs) {
  std::size_t changes = 0;
  int previous = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (previous != 0 && s != previous) ++changes;
    previous = s;
  }
  return changes;
}

// Cauchy bound 1 + max |c_k / c_n|, rounded up to an integer.
Rational root_bound(const UnivariatePolynomial& p) {
  Rational worst(0);
  for (int k = 0; k < p.degree(); ++k) {
    Rational ratio = abs(p.coefficients()[k] / p.leading());
    if (ratio > worst) worst = ratio;
  }
  mpz_class ceiling;
  mpz_cdiv_q(ceiling.get_mpz_t(), worst.get_num_mpz_t(), worst.get_den_mpz_t());
  return Rational(ceiling + 1);
}

}  // namespace

SturmSequence::SturmSequence(const UnivariatePolynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "Sturm sequence of the zero polynomial");
  chain_.push_back(p.normalized());
  if (p.degree() == 0) return;
  chain_.push_back(p.derivative().normalized());
  while (chain_.back().degree() > 0) {
    UnivariatePolynomial q, r;
    UnivariatePolynomial::divide(chain_[chain_.size() - 2], chain_.back(), q, r);
    if (r.is_zero()) break;
    chain_.push_back((-r).normalized());
  }
}

std::size_t SturmSequence::variations_at(const Rational& x) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& q : chain_) signs.push_back(q.sign_at(x));
  return sign_variations(signs);
}

std::size_t SturmSequence::variations_at_infinity(bool positive) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& q : chain_) {
    int s = sgn(q.leading());
    if (!positive && q.degree() % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return sign_variations(signs);
}

std::size_t SturmSequence::count(const Rational& lower, const Rational& upper) const {
  std::size_t lo = variations_at(lower);
  std::size_t hi = variations_at(upper);
  return lo > hi ? lo - hi : 0;
}

std::size_t SturmSequence::count_all() const {
  return variations_at_infinity(false) - variations_at_infinity(true);
}

std::vector<std::pair<UnivariatePolynomial, unsigned>> square_free_decomposition(const UnivariatePolynomial& p) {
  std::vector<std::pair<UnivariatePolynomial, unsigned>> factors;
  if (p.degree() < 1) return factors;
  UnivariatePolynomial dp = p.derivative();
  UnivariatePolynomial g = UnivariatePolynomial::gcd(p, dp);
  UnivariatePolynomial q, r;
  UnivariatePolynomial::divide(p, g, q, r);
  UnivariatePolynomial b = q;
  UnivariatePolynomial::divide(dp, g, q, r);
  UnivariatePolynomial c = q;
  UnivariatePolynomial d = c - b.derivative();
  unsigned k = 1;
  while (b.degree() > 0) {
    UnivariatePolynomial a = UnivariatePolynomial::gcd(b, d);
    if (a.degree() > 0) factors.emplace_back(a, k);
    UnivariatePolynomial::divide(b, a, q, r);
    b = q;
    UnivariatePolynomial::divide(d, a, q, r);
    c = q;
    d = c - b.derivative();
    ++k;
  }
  return factors;
}

namespace {

// Bisects (lower, upper] until every piece holds exactly one distinct root.
void isolate(const SturmSequence& sturm, const Rational& lower, const Rational& upper, std::size_t roots,
             std::vector<std::pair<Rational, Rational>>& out) {
  if (roots == 0) return;
  if (roots == 1) {
    out.emplace_back(lower, upper);
    return;
  }
  Rational mid = (lower + upper) / 2;
  std::size_t left = sturm.count(lower, mid);
  isolate(sturm, lower, mid, left, out);
  isolate(sturm, mid, upper, roots - left, out);
}

IsolatedRoot refine(const UnivariatePolynomial& f, Rational lower, Rational upper, double tolerance) {
  // f is square-free with exactly one root in (lower, upper].
  int sign_upper = f.sign_at(upper);
  if (sign_upper == 0) return {upper, upper, upper.get_d(), 1};
  // One simple root inside, so f takes the opposite sign just right of lower
  // (lower itself may be a root owned by the neighbouring interval).
  int sign_lower = -sign_upper;
  const Rational width_limit = to_rational(tolerance);
  while (upper - lower > width_limit) {
    Rational mid = (lower + upper) / 2;
    int s = f.sign_at(mid);
    if (s == 0) return {mid, mid, mid.get_d(), 1};
    if (s == sign_lower) {
      lower = mid;
    } else {
      upper = mid;
    }
  }
  Rational mid = (lower + upper) / 2;
  return {lower, upper, mid.get_d(), 1};
}

}  // namespace

std::vector<IsolatedRoot> isolate_real_roots(const UnivariatePolynomial& p, double tolerance) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "roots of the zero polynomial are undefined");
  if (!(tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "root tolerance must be positive");
  std::vector<IsolatedRoot> roots;
  for (const auto& [factor, multiplicity] : square_free_decomposition(p)) {
    SturmSequence sturm(factor);
    Rational bound = root_bound(factor);
    std::size_t total = sturm.count(-bound, bound);
    std::vector<std::pair<Rational, Rational>> intervals;
    isolate(sturm, -bound, bound, total, intervals);
    for (const auto& [lo, hi] : intervals) {
      IsolatedRoot root = refine(factor, lo, hi, tolerance);
      root.multiplicity = multiplicity;
      roots.push_back(root);
    }
  }
  std::sort(roots.begin(), roots.end(), [](const IsolatedRoot& l, const IsolatedRoot& r) { return l.lower < r.lower; });
  return roots;
}

std::vector<double> real_roots_with_multiplicity(const UnivariatePolynomial& p, double tolerance) {
  std::vector<double> flat;
  for (const auto& root : isolate_real_roots(p, tolerance)) {
    flat.insert(flat.end(), root.multiplicity, root.value);
  }
  return flat;
}

}  // namespace qes
