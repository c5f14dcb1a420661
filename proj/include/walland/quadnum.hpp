#pragma once

#include <string>

#include "walland/rational.hpp"

namespace walland {

/// a + b*sqrt(delta) with rational a, b and delta >= 0.
///
/// Canonical form: when b == 0 or delta is a rational square the value is
/// folded to a plain rational (b = 0, delta = 0); otherwise delta is an
/// integer with its small square factors moved into b. Arithmetic between two
/// irrational values requires equal delta; anything else throws
/// PreconditionError. compare_mixed() is the one place where two different
/// radicals may meet.
class QuadNum {
 public:
  QuadNum() = default;
  QuadNum(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadNum(long a) : a_(a) {}                 // NOLINT(google-explicit-constructor)
  QuadNum(Rational a, Rational b, Rational delta);

  const Rational &a() const { return a_; }
  const Rational &b() const { return b_; }
  const Rational &delta() const { return delta_; }

  bool is_rational() const { return sgn(b_) == 0; }
  int sign() const;
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  QuadNum conjugate() const { return QuadNum(a_, -b_, delta_); }

  long double approx() const;
  std::string str() const;

  friend QuadNum operator+(const QuadNum &x, const QuadNum &y);
  friend QuadNum operator-(const QuadNum &x, const QuadNum &y);
  friend QuadNum operator-(const QuadNum &x);
  friend QuadNum operator*(const QuadNum &x, const QuadNum &y);
  friend QuadNum operator/(const QuadNum &x, const QuadNum &y);
  QuadNum &operator+=(const QuadNum &y) { return *this = *this + y; }
  QuadNum &operator-=(const QuadNum &y) { return *this = *this - y; }
  QuadNum &operator*=(const QuadNum &y) { return *this = *this * y; }

  /// Structural equality of canonical forms; equals numeric equality when
  /// both share a radical or are rational.
  friend bool operator==(const QuadNum &x, const QuadNum &y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.delta_ == y.delta_;
  }

 private:
  void normalize_radicand();

  Rational a_{0}, b_{0}, delta_{0};
};

/// Sign of x - y. Same-field (or rational) operands only.
int compare(const QuadNum &x, const QuadNum &y);

/// Sign of x - y for operands from possibly different quadratic fields.
int compare_mixed(const QuadNum &x, const QuadNum &y);

}  // namespace walland
