#include "walland/lattice.hpp"

#include <stdexcept>

#include "walland/error.hpp"

namespace walland {

namespace {

void require_same_size(const DivisorClass &a, const DivisorClass &b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("divisor classes have different lengths (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

}  // namespace

bool DivisorClass::is_zero() const {
  for (const auto &c : coords) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

DivisorClass operator+(const DivisorClass &a, const DivisorClass &b) {
  require_same_size(a, b);
  DivisorClass out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.coords[i] += b.coords[i];
  return out;
}

DivisorClass operator-(const DivisorClass &a, const DivisorClass &b) {
  require_same_size(a, b);
  DivisorClass out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.coords[i] -= b.coords[i];
  return out;
}

DivisorClass operator-(const DivisorClass &a) {
  DivisorClass out = a;
  for (auto &c : out.coords) c = -c;
  return out;
}

DivisorClass operator*(const Rational &k, const DivisorClass &a) {
  DivisorClass out = a;
  for (auto &c : out.coords) c *= k;
  return out;
}

CharVec operator+(const CharVec &a, const CharVec &b) { return {a.r + b.r, a.c1 + b.c1, a.e + b.e}; }
CharVec operator-(const CharVec &a, const CharVec &b) { return {a.r - b.r, a.c1 - b.c1, a.e - b.e}; }
CharVec operator-(const CharVec &a) { return {-a.r, -a.c1, -a.e}; }

SurfaceLattice::SurfaceLattice(std::vector<std::string> basis_labels, std::vector<std::vector<long>> gram,
                               DivisorClass H, DivisorClass D, DivisorClass K, long chiO)
    : labels_(std::move(basis_labels)),
      gram_(std::move(gram)),
      H_(std::move(H)),
      D_(std::move(D)),
      K_(std::move(K)),
      chiO_(chiO) {
  const std::size_t n = labels_.size();
  if (n == 0) throw SchemaError("surface lattice needs at least one basis class");
  if (gram_.size() != n) throw SchemaError("gram must be " + std::to_string(n) + "x" + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (gram_[i].size() != n) throw SchemaError("gram must be square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (gram_[i][j] != gram_[j][i]) throw SchemaError("gram must be symmetric");
    }
  }
  if (H_.size() != n || D_.size() != n || K_.size() != n) {
    throw SchemaError("H, D, K must have one coordinate per basis class");
  }
  if (sgn(H2()) <= 0) throw SchemaError("polarization must satisfy H.H > 0");
  if (sgn(intersect(H_, D_, *this)) != 0) throw SchemaError("twist divisor must satisfy H.D = 0");
}

bool SurfaceLattice::poisson_mode() const { return sgn(HK()) < 0; }

Rational SurfaceLattice::H2() const { return intersect(H_, H_, *this); }

Rational SurfaceLattice::HK() const { return intersect(H_, K_, *this); }

SurfaceLattice SurfaceLattice::with_negated_twist() const {
  SurfaceLattice out = *this;
  out.D_ = -D_;
  return out;
}

CharVec SurfaceLattice::make_char(Rational r, std::vector<Rational> c1, Rational e) const {
  if (c1.size() != rank()) {
    throw SchemaError("character has " + std::to_string(c1.size()) + " c1 coordinates, surface basis has " +
                      std::to_string(rank()));
  }
  return {std::move(r), DivisorClass(std::move(c1)), std::move(e)};
}

bool operator==(const SurfaceLattice &a, const SurfaceLattice &b) {
  return a.labels_ == b.labels_ && a.gram_ == b.gram_ && a.H_ == b.H_ && a.D_ == b.D_ && a.K_ == b.K_ &&
         a.chiO_ == b.chiO_;
}

Rational intersect(const DivisorClass &a, const DivisorClass &b, const SurfaceLattice &L) {
  const std::size_t n = L.rank();
  if (a.size() != n || b.size() != n) {
    throw std::invalid_argument("divisor class length does not match lattice rank " + std::to_string(n));
  }
  Rational total = 0;
  const auto &g = L.gram();
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a.coords[i]) == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (g[i][j] != 0) row += Rational(g[i][j]) * b.coords[j];
    }
    total += a.coords[i] * row;
  }
  return total;
}

CharVec twist_char(const CharVec &ch, const SurfaceLattice &L) {
  const DivisorClass &D = L.D();
  CharVec out;
  out.r = ch.r;
  out.c1 = ch.c1 - ch.r * D;
  out.e = ch.e - intersect(D, ch.c1, L) + ch.r * intersect(D, D, L) / 2;
  return out;
}

VTilde vtilde(const CharVec &ch, const SurfaceLattice &L) {
  CharVec t = twist_char(ch, L);
  return {L.H2() * t.r, intersect(L.H(), t.c1, L), t.e};
}

CharVec tensor_by_K(const CharVec &ch, const SurfaceLattice &L) {
  const DivisorClass &K = L.K();
  CharVec out;
  out.r = ch.r;
  out.c1 = ch.c1 + ch.r * K;
  out.e = ch.e + intersect(ch.c1, K, L) + ch.r * intersect(K, K, L) / 2;
  return out;
}

CharVec derived_dual(const CharVec &ch) { return {ch.r, -ch.c1, ch.e}; }

Rational euler_pairing(const CharVec &chE, const CharVec &chF, const SurfaceLattice &L) {
  DivisorClass mixed = chE.r * chF.c1 - chF.r * chE.c1;
  return chE.r * chF.r * Rational(L.chiO()) - intersect(L.K(), mixed, L) / 2 + chE.r * chF.e + chF.r * chE.e -
         intersect(chE.c1, chF.c1, L);
}

Rational discriminant(const VTilde &v) { return v.v1 * v.v1 - 2 * v.v0 * v.v2; }

bool proportional_to_H(const DivisorClass &x, const SurfaceLattice &L) {
  const auto &h = L.H().coords;
  // x is parallel to H iff every 2x2 minor of [x | H] vanishes.
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      if (x.coords[i] * h[j] != x.coords[j] * h[i]) return false;
    }
  }
  return true;
}

bool is_integral_char(const CharVec &ch, const SurfaceLattice &L) {
  if (!is_integer(ch.r)) return false;
  for (const auto &c : ch.c1.coords) {
    if (!is_integer(c)) return false;
  }
  return is_integer(ch.e - intersect(ch.c1, ch.c1, L) / 2);
}

}  // namespace walland
