#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qes/polynomial.hpp"

namespace qes {

/// Sturm chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k). Members are
/// scaled by positive rationals only, which preserves every sign count.
class SturmSequence {
 public:
  explicit SturmSequence(const UnivariatePolynomial& p);

  /// Number of distinct real roots in (lower, upper].
  std::size_t count(const Rational& lower, const Rational& upper) const;
  /// Number of distinct real roots on the whole line.
  std::size_t count_all() const;

  const std::vector<UnivariatePolynomial>& chain() const { return chain_; }

 private:
  std::size_t variations_at(const Rational& x) const;
  std::size_t variations_at_infinity(bool positive) const;

  std::vector<UnivariatePolynomial> chain_;
};

/// Yun's square-free decomposition: p = lc * prod_k f_k^k with each f_k
/// square-free and pairwise coprime. Returns the (f_k, k) pairs with
/// nonconstant f_k.
std::vector<std::pair<UnivariatePolynomial, unsigned>> square_free_decomposition(const UnivariatePolynomial& p);

struct IsolatedRoot {
  Rational lower;  ///< the root lies in [lower, upper]
  Rational upper;
  double value = 0.0;
  unsigned multiplicity = 1;
};

/// All real roots of p, ascending, each refined by exact bisection until the
/// enclosing interval is narrower than `tolerance`.
std::vector<IsolatedRoot> isolate_real_roots(const UnivariatePolynomial& p, double tolerance = 1e-12);

/// Expands isolate_real_roots into a flat ascending list in which a root of
/// multiplicity k appears k times.
std::vector<double> real_roots_with_multiplicity(const UnivariatePolynomial& p, double tolerance = 1e-12);

}  // namespace qes
