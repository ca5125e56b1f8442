#pragma once

#include <optional>
#include <vector>

#include "plsf/polynomial.hpp"

namespace plsf {

/// Dense univariate polynomial over exact rationals. coeffs[i] is the
/// coefficient of x^i; no trailing zeros are stored (zero == empty).
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly constant(const Rational& a) { return UPoly({a}); }
  static UPoly x() { return UPoly({Rational(0), Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(i)] : Rational(0);
  }
  Rational lc() const { return is_zero() ? Rational(0) : c_.back(); }

  Rational eval(const Rational& x) const {
    Rational r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }
  double eval_double(double x) const {
    double r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->to_double();
    return r;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long long>(i));
    return UPoly(std::move(d));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;
  UPoly scaled(const Rational& k) const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder; divisor must be nonzero.
  static std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b);
  /// Exact division; throws if the remainder is nonzero.
  static UPoly div_exact(const UPoly& a, const UPoly& b);

  /// Monic gcd via the Euclidean algorithm (primitive rescaling per step).
  static UPoly gcd(UPoly a, UPoly b);

  /// Positive-scalar normalization to primitive integer coefficients
  /// (preserves signs and roots).
  UPoly primitive() const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Restrict a multivariate polynomial that depends on a single spatial
/// variable (and nothing else, eps included) to a univariate polynomial.
UPoly to_univariate(const Polynomial& p, int var);

/// Sturm sequence of f (f, f', then negated remainders, primitively rescaled).
std::vector<UPoly> sturm_chain(const UPoly& f);

/// Number of distinct real roots of f in the half-open interval (a, b];
/// requires f(a) != 0 and f(b) != 0 when used for isolation.
int sturm_count(const std::vector<UPoly>& chain, const Rational& a, const Rational& b);

/// Sign variation count of the chain at +inf minus at -inf (all distinct
/// real roots).
int sturm_count_all(const std::vector<UPoly>& chain);

/// All coefficients bound: every real root lies in [-B, B].
Rational cauchy_root_bound(const UPoly& f);

/// Yun squarefree decomposition: f = lc * prod factors[i]^{i+1} with each
/// factor monic squarefree and pairwise coprime (zero entries possible).
std::vector<UPoly> squarefree_decomposition(const UPoly& f);

/// One isolated real root. The isolating interval (lo, hi) contains exactly
/// one root of `factor` (a squarefree polynomial vanishing at the root and
/// at no other point of [lo, hi]); `exact` is set when the root is rational.
struct RealRoot {
  UPoly factor;
  Rational lo, hi;
  int multiplicity = 1;
  std::optional<Rational> exact;

  double approx() const {
    return exact ? exact->to_double() : (lo.to_double() + hi.to_double()) / 2.0;
  }
};

/// Isolates all real roots of a squarefree polynomial, sorted increasingly.
std::vector<RealRoot> isolate_squarefree(const UPoly& f);

/// Isolates all distinct real roots of f with multiplicities, sorted
/// increasingly, with pairwise disjoint isolating intervals.
std::vector<RealRoot> isolate_roots(const UPoly& f);

/// Shrinks the isolating interval until hi - lo <= width (or the root is
/// found to be rational).
void refine_root(RealRoot& r, const Rational& width);

/// Sign of q at the real algebraic number described by r (exactly 0 when the
/// root also annihilates q).
int sign_at_root(const UPoly& q, RealRoot r);

/// True when f has at least one real root.
bool has_real_root(const UPoly& f);

}  // namespace plsf
