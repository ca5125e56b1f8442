#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace plsf {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Exact rational number. Invariants: lowest terms, denominator > 0,
/// zero stored as 0/1 (all maintained by the underlying representation).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(const BigInt& n) : v_(n) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = BigRat(num, den);
  }
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return den() == 1; }

  int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

  Rational operator-() const { return Rational(BigRat(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  /// Integer power; negative exponents invert (throws on 0^negative).
  Rational pow(long long e) const {
    if (e == 0) return Rational(1);
    if (is_zero()) {
      if (e < 0) throw std::domain_error("Rational: zero raised to negative power");
      return Rational(0);
    }
    bool inv = e < 0;
    unsigned long long k = inv ? static_cast<unsigned long long>(-e)
                               : static_cast<unsigned long long>(e);
    BigInt n = boost::multiprecision::pow(num(), static_cast<unsigned>(k));
    BigInt d = boost::multiprecision::pow(den(), static_cast<unsigned>(k));
    return inv ? Rational(d, n) : Rational(n, d);
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const { return v_.convert_to<double>(); }

  /// "a" for integers, "a/b" otherwise.
  std::string to_string() const {
    std::string s = num().str();
    if (den() != 1) s += "/" + den().str();
    return s;
  }

 private:
  explicit Rational(BigRat v) : v_(std::move(v)) {}
  BigRat v_;
};

}  // namespace plsf
