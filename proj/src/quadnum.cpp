#include "walland/quadnum.hpp"

#include <cmath>

#include "walland/error.hpp"

namespace walland {

namespace {

const Rational &common_delta(const QuadNum &x, const QuadNum &y) {
  if (x.is_rational()) return y.delta();
  if (y.is_rational() || x.delta() == y.delta()) return x.delta();
  throw PreconditionError("arithmetic between different quadratic fields (sqrt(" + format_rational(x.delta()) +
                          ") vs sqrt(" + format_rational(y.delta()) + "))");
}

// sign(u + c*sqrt(d)) where u lives in some other quadratic field.
int sign_with_extra_radical(const QuadNum &u, const Rational &c, const Rational &d) {
  const int su = u.sign();
  const int sc = sgn(c) == 0 || sgn(d) == 0 ? 0 : sgn(c);
  if (su == 0) return sc;
  if (sc == 0 || su == sc) return su;
  // Opposite signs: compare |u|^2 with c^2 d.
  QuadNum diff = u * u - QuadNum(c * c * d);
  const int s = diff.sign();
  if (s > 0) return su;
  if (s < 0) return sc;
  return 0;
}

}  // namespace

QuadNum::QuadNum(Rational a, Rational b, Rational delta) : a_(std::move(a)), b_(std::move(b)), delta_(std::move(delta)) {
  if (sgn(delta_) < 0) throw PreconditionError("negative radicand " + format_rational(delta_));
  if (sgn(b_) == 0 || sgn(delta_) == 0) {
    b_ = 0;
    delta_ = 0;
  } else if (is_rational_square(delta_)) {
    a_ += b_ * rational_sqrt(delta_);
    b_ = 0;
    delta_ = 0;
  } else {
    normalize_radicand();
  }
}

// sqrt(n/d) = sqrt(n d)/d, then square factors below 2^16 and a square
// cofactor move into b. Values sharing a field end up with one radicand
// unless n d has a repeated prime factor above that bound.
void QuadNum::normalize_radicand() {
  mpz_class n = delta_.get_num() * delta_.get_den();
  b_ /= Rational(delta_.get_den());
  mpz_class out = 1;
  for (unsigned long p = 2; p < (1UL << 16) && p * p <= n; ++p) {
    const mpz_class pp = p * p;
    while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
      n /= pp;
      out *= p;
    }
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    out *= root;
    n = 1;
  }
  b_ *= Rational(out);
  b_.canonicalize();
  delta_ = Rational(n);
}

int QuadNum::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const int cmp = ::cmp(a_ * a_, b_ * b_ * delta_);
  if (cmp > 0) return sa;
  if (cmp < 0) return sb;
  return 0;
}

long double QuadNum::approx() const {
  long double v = to_long_double(a_);
  if (sgn(b_) != 0) v += to_long_double(b_) * std::sqrt(to_long_double(delta_));
  return v;
}

std::string QuadNum::str() const {
  if (is_rational()) return format_rational(a_);
  return format_rational(a_) + (sgn(b_) < 0 ? " - " : " + ") + format_rational(abs(b_)) + "*sqrt(" +
         format_rational(delta_) + ")";
}

QuadNum operator+(const QuadNum &x, const QuadNum &y) {
  const Rational &d = common_delta(x, y);
  return QuadNum(x.a_ + y.a_, x.b_ + y.b_, d);
}

QuadNum operator-(const QuadNum &x, const QuadNum &y) {
  const Rational &d = common_delta(x, y);
  return QuadNum(x.a_ - y.a_, x.b_ - y.b_, d);
}

QuadNum operator-(const QuadNum &x) { return QuadNum(-x.a_, -x.b_, x.delta_); }

QuadNum operator*(const QuadNum &x, const QuadNum &y) {
  const Rational &d = common_delta(x, y);
  return QuadNum(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
}

QuadNum operator/(const QuadNum &x, const QuadNum &y) {
  if (y.is_zero()) throw PreconditionError("division by zero quadratic number");
  if (y.is_rational()) return QuadNum(x.a_ / y.a_, x.b_ / y.a_, x.delta_);
  const Rational &d = common_delta(x, y);
  Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * d;
  QuadNum num = x * y.conjugate();
  return QuadNum(num.a_ / norm, num.b_ / norm, d);
}

int compare(const QuadNum &x, const QuadNum &y) { return (x - y).sign(); }

int compare_mixed(const QuadNum &x, const QuadNum &y) {
  if (x.is_rational() || y.is_rational() || x.delta() == y.delta()) return compare(x, y);
  // x - y = (x.a - y.a + x.b sqrt(dx)) - y.b sqrt(dy)
  QuadNum u(x.a() - y.a(), x.b(), x.delta());
  return sign_with_extra_radical(u, -y.b(), y.delta());
}

}  // namespace walland
