#include "walland/rational.hpp"

#include <cmath>
#include <string>

#include "walland/error.hpp"

namespace walland {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw SchemaError("malformed rational '" + std::string(text) + "'");
  }
  std::string n(num[0] == '+' ? num.substr(1) : num);
  mpz_class zn(n, 10);
  mpz_class zd(std::string(den), 10);
  if (zd == 0) throw SchemaError("zero denominator in '" + std::string(text) + "'");
  Rational r(zn, zd);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational &value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str(10);
}

int sign(const Rational &value) { return sgn(value); }

bool is_integer(const Rational &value) { return value.get_den() == 1; }

bool is_rational_square(const Rational &value) {
  if (sgn(value) < 0) return false;
  return mpz_perfect_square_p(value.get_num_mpz_t()) != 0 && mpz_perfect_square_p(value.get_den_mpz_t()) != 0;
}

Rational rational_sqrt(const Rational &value) {
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), value.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), value.get_den_mpz_t());
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational floor(const Rational &value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(q);
}

Rational ceil(const Rational &value) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(q);
}

long double to_long_double(const Rational &value) {
  const mpz_class &n = value.get_num();
  const mpz_class &d = value.get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    return static_cast<long double>(n.get_si()) / static_cast<long double>(d.get_si());
  }
  // Large operands: mantissa/exponent split keeps the quotient in range.
  long en = 0, ed = 0;
  long double mn = mpz_get_d_2exp(&en, n.get_mpz_t());
  long double md = mpz_get_d_2exp(&ed, d.get_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

std::vector<Rational> parse_rational_list(std::string_view text, char sep) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(parse_rational(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace walland
