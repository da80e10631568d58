#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "qlax/exact/errors.hpp"

namespace qlax {

/// Exact rational number in canonical form: gcd(|num|, den) = 1, den > 0,
/// zero is 0/1. Division by zero throws ZeroDenominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Builds num/den from arbitrary-precision integers.
  static Rational from_integers(const mpz_class& num, const mpz_class& den);

  /// Parses "p", "p/q" or "-p/q" (decimal). Throws ParseError or ZeroDenominator.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  /// Largest bit length of numerator and denominator.
  std::size_t bit_size() const;

  /// Canonical text: "p/q", or "p" when the denominator is 1.
  std::string str() const { return v_.get_str(); }

  double to_double() const { return v_.get_d(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw ZeroDenominator();
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

/// num/den in canonical form; throws ZeroDenominator when den == 0.
Rational rat(long num, long den);

Rational abs(const Rational& x);

/// x^n for any integer n; negative powers of zero throw ZeroDenominator.
Rational pow(const Rational& x, int n);

/// 1/x.
Rational inv(const Rational& x);

/// 10^-k, used for epsilon ladders.
Rational pow10_neg(unsigned k);

}  // namespace qlax
