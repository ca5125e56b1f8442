#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plsf/rational.hpp"

namespace plsf {

/// Exponent vector of one term: spatial exponents (Laurent exponents are
/// permitted internally, e.g. during chart substitution) plus a nonnegative
/// power of the singular parameter eps.
struct Monomial {
  std::vector<int> spatial;
  int eps = 0;

  int total_degree() const {
    int t = eps;
    for (int e : spatial) t += e;
    return t;
  }
  bool is_laurent() const {
    for (int e : spatial)
      if (e < 0) return true;
    return false;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.eps == b.eps && a.spatial == b.spatial;
  }
};

/// Graded-lexicographic, descending: higher total degree first, ties broken
/// lexicographically on (spatial exponents, eps exponent), larger first.
/// This is the canonical term order of every printed polynomial.
struct MonomialOrderDesc {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    if (a.spatial != b.spatial) return a.spatial > b.spatial;
    return a.eps > b.eps;
  }
};

/// Positive integer weights, one per spatial variable (fast variable first).
struct WeightVector {
  std::vector<int> w;

  WeightVector() = default;
  explicit WeightVector(std::vector<int> weights) : w(std::move(weights)) {
    for (int wi : w)
      if (wi < 1) throw std::invalid_argument("WeightVector: weights must be >= 1");
  }
  int dim() const { return static_cast<int>(w.size()); }
  int operator[](int i) const { return w.at(static_cast<size_t>(i)); }
};

/// Sparse multivariate polynomial over exact rationals in n spatial variables
/// and eps. No zero coefficients are stored; term iteration follows the
/// canonical graded-lex descending order.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrderDesc>;

  explicit Polynomial(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("Polynomial: dimension must be >= 1");
  }

  static Polynomial zero(int dim) { return Polynomial(dim); }
  static Polynomial constant(int dim, const Rational& c) {
    Polynomial p(dim);
    p.add_term(Monomial{std::vector<int>(static_cast<size_t>(dim), 0), 0}, c);
    return p;
  }
  static Polynomial variable(int dim, int i) {
    Polynomial p(dim);
    std::vector<int> e(static_cast<size_t>(dim), 0);
    e.at(static_cast<size_t>(i)) = 1;
    p.add_term(Monomial{std::move(e), 0}, Rational(1));
    return p;
  }
  static Polynomial eps(int dim) {
    Polynomial p(dim);
    p.add_term(Monomial{std::vector<int>(static_cast<size_t>(dim), 0), 1}, Rational(1));
    return p;
  }

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  bool is_laurent() const {
    for (const auto& [m, c] : terms_)
      if (m.is_laurent()) return true;
    return false;
  }

  /// Adds c * m, erasing the term if the coefficient cancels to zero.
  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(m.spatial.size()) != dim_)
      throw std::invalid_argument("Polynomial: monomial dimension mismatch");
    if (m.eps < 0) throw std::invalid_argument("Polynomial: negative eps exponent");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_dim(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_dim(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const {
    Polynomial r(dim_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_dim(b);
    Polynomial r(a.dim_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        m.spatial.resize(static_cast<size_t>(a.dim_));
        for (size_t i = 0; i < m.spatial.size(); ++i)
          m.spatial[i] = ma.spatial[i] + mb.spatial[i];
        m.eps = ma.eps + mb.eps;
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Rational& c) const {
    Polynomial r(dim_);
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// Formal partial derivative. var in [0, dim) names a spatial variable,
  /// var == dim names eps. Laurent exponents follow the power rule.
  Polynomial partial(int var) const {
    if (var < 0 || var > dim_) throw std::invalid_argument("partial: unknown variable");
    Polynomial r(dim_);
    for (const auto& [m, c] : terms_) {
      if (var == dim_) {
        if (m.eps == 0) continue;
        Monomial d = m;
        d.eps -= 1;
        r.add_term(d, c * Rational(m.eps));
      } else {
        int e = m.spatial[static_cast<size_t>(var)];
        if (e == 0) continue;
        Monomial d = m;
        d.spatial[static_cast<size_t>(var)] = e - 1;
        r.add_term(d, c * Rational(e));
      }
    }
    return r;
  }

  /// Exact evaluation at a rational point (n spatial values followed by eps).
  /// Throws on a negative exponent at a zero coordinate.
  Rational evaluate(std::span<const Rational> point) const {
    if (static_cast<int>(point.size()) != dim_ + 1)
      throw std::invalid_argument("evaluate: point must have n+1 coordinates");
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < dim_; ++i) {
        int e = m.spatial[static_cast<size_t>(i)];
        if (e != 0) t *= point[static_cast<size_t>(i)].pow(e);
      }
      if (m.eps != 0) t *= point[static_cast<size_t>(dim_)].pow(m.eps);
      acc += t;
    }
    return acc;
  }

  /// Floating-point evaluation (n spatial values followed by eps). The
  /// symbolic paths never use this; it exists for the numeric subsystem and
  /// float cross-checks.
  double evaluate_double(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != dim_ + 1)
      throw std::invalid_argument("evaluate_double: point must have n+1 coordinates");
    auto ipow = [](double b, int e) {
      if (e < 0) return 1.0 / ipow_pos(b, -e);
      return ipow_pos(b, e);
    };
    double acc = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = c.to_double();
      for (int i = 0; i < dim_; ++i) {
        int e = m.spatial[static_cast<size_t>(i)];
        if (e != 0) t *= ipow(point[static_cast<size_t>(i)], e);
      }
      if (m.eps != 0) t *= ipow(point[static_cast<size_t>(dim_)], m.eps);
      acc += t;
    }
    return acc;
  }

  /// Substitutes a rational constant for spatial variable i (value != 0
  /// required if Laurent exponents on i are present). The result keeps the
  /// same dimension with exponent 0 in slot i.
  Polynomial substitute_value(int i, const Rational& value) const {
    Polynomial r(dim_);
    for (const auto& [m, c] : terms_) {
      int e = m.spatial[static_cast<size_t>(i)];
      Monomial nm = m;
      nm.spatial[static_cast<size_t>(i)] = 0;
      r.add_term(nm, e == 0 ? c : c * value.pow(e));
    }
    return r;
  }

  Polynomial substitute_eps(const Rational& value) const {
    Polynomial r(dim_);
    for (const auto& [m, c] : terms_) {
      Monomial nm = m;
      nm.eps = 0;
      r.add_term(nm, m.eps == 0 ? c : c * value.pow(m.eps));
    }
    return r;
  }

  /// Simultaneous substitution x_i := coef_i * (monomial image_i) for every
  /// spatial variable. Used for the chart changes of coordinates, where the
  /// images are Laurent monomials over the chart variables.
  Polynomial substitute_simultaneous(const std::vector<std::pair<Rational, Monomial>>& images) const {
    if (static_cast<int>(images.size()) != dim_)
      throw std::invalid_argument("substitute_simultaneous: need one image per variable");
    for (const auto& [coef, img] : images)
      if (static_cast<int>(img.spatial.size()) != dim_)
        throw std::invalid_argument("substitute_simultaneous: image dimension mismatch");
    Polynomial r(dim_);
    for (const auto& [m, c] : terms_) {
      Monomial nm;
      nm.spatial.assign(static_cast<size_t>(dim_), 0);
      nm.eps = m.eps;
      Rational nc = c;
      for (int i = 0; i < dim_; ++i) {
        int e = m.spatial[static_cast<size_t>(i)];
        if (e == 0) continue;
        const auto& [coef, img] = images[static_cast<size_t>(i)];
        for (int j = 0; j < dim_; ++j)
          nm.spatial[static_cast<size_t>(j)] += e * img.spatial[static_cast<size_t>(j)];
        nm.eps += e * img.eps;
        nc *= coef.pow(e);
      }
      if (nm.eps < 0) throw std::invalid_argument("substitute_simultaneous: negative eps power");
      r.add_term(nm, nc);
    }
    return r;
  }

  /// Multiplies by spatial variable i raised to k (k may be negative).
  Polynomial shifted(int i, int k) const {
    Polynomial r(dim_);
    for (const auto& [m, c] : terms_) {
      Monomial nm = m;
      nm.spatial[static_cast<size_t>(i)] += k;
      r.terms_.emplace(nm, c);
    }
    return r;
  }

  /// True when every term carries at least exponent 1 on variable i.
  bool divisible_by_var(int i) const {
    for (const auto& [m, c] : terms_)
      if (m.spatial[static_cast<size_t>(i)] < 1) return false;
    return true;
  }

  int degree_in(int i) const {
    int d = 0;
    for (const auto& [m, c] : terms_)
      d = std::max(d, m.spatial[static_cast<size_t>(i)]);
    return d;
  }
  int eps_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.eps);
    return d;
  }

 private:
  void check_dim(const Polynomial& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("Polynomial: dimension mismatch");
  }

  static double ipow_pos(double b, int e) {
    double r = 1.0;
    while (e > 0) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  int dim_;
  TermMap terms_;
};

/// Weighted degree of a monomial: sum of w_i * a_i over the spatial
/// exponents only; the eps exponent never contributes.
inline long long quasi_degree(const Monomial& m, const WeightVector& w) {
  if (w.dim() != static_cast<int>(m.spatial.size()))
    throw std::invalid_argument("quasi_degree: weight dimension mismatch");
  long long q = 0;
  for (int i = 0; i < w.dim(); ++i) q += static_cast<long long>(w[i]) * m.spatial[static_cast<size_t>(i)];
  return q;
}

/// Highest weighted degree over the terms of p (deg_w p); nullopt for p == 0.
inline std::optional<long long> quasi_degree_max(const Polynomial& p, const WeightVector& w) {
  std::optional<long long> d;
  for (const auto& [m, c] : p.terms()) {
    long long q = quasi_degree(m, w);
    if (!d || q > *d) d = q;
  }
  return d;
}

struct Decomposition {
  /// d -> quasi-homogeneous component of weighted degree d + component_weight.
  std::map<long long, Polynomial> components;
  long long delta = 0;  // max key (only meaningful when components is nonempty)
};

/// Splits p into quasi-homogeneous components indexed by
/// d = quasi_degree(term) - component_weight. Laurent input is rejected.
inline Decomposition decompose(const Polynomial& p, const WeightVector& w, int component_weight) {
  if (p.is_laurent()) throw std::invalid_argument("decompose: Laurent input rejected");
  Decomposition out;
  for (const auto& [m, c] : p.terms()) {
    long long d = quasi_degree(m, w) - component_weight;
    auto it = out.components.find(d);
    if (it == out.components.end())
      it = out.components.emplace(d, Polynomial(p.dim())).first;
    it->second.add_term(m, c);
  }
  if (!out.components.empty()) out.delta = out.components.rbegin()->first;
  return out;
}

/// Canonical string form: graded-lex descending terms, "a" or "a/b"
/// coefficients in lowest terms, caret powers, eps factor printed first.
/// Example: "-2/3*x^2*y + eps*z". This exact normalization is the comparison
/// key for golden tests.
std::string to_string(const Polynomial& p, const std::vector<std::string>& names);

}  // namespace plsf
