#pragma once

#include <string>
#include <vector>

#include "walland/rational.hpp"

namespace walland {

/// A divisor class, as coordinates in the basis of a SurfaceLattice.
struct DivisorClass {
  std::vector<Rational> coords;

  DivisorClass() = default;
  explicit DivisorClass(std::vector<Rational> c) : coords(std::move(c)) {}
  static DivisorClass zero(std::size_t n) { return DivisorClass(std::vector<Rational>(n, Rational(0))); }

  std::size_t size() const { return coords.size(); }
  bool is_zero() const;

  friend DivisorClass operator+(const DivisorClass &a, const DivisorClass &b);
  friend DivisorClass operator-(const DivisorClass &a, const DivisorClass &b);
  friend DivisorClass operator-(const DivisorClass &a);
  friend DivisorClass operator*(const Rational &k, const DivisorClass &a);
  friend bool operator==(const DivisorClass &a, const DivisorClass &b) { return a.coords == b.coords; }
};

/// Chern character (ch0, ch1, ch2) = (r, c1, e).
struct CharVec {
  Rational r;
  DivisorClass c1;
  Rational e;

  friend CharVec operator+(const CharVec &a, const CharVec &b);
  friend CharVec operator-(const CharVec &a, const CharVec &b);
  friend CharVec operator-(const CharVec &a);
  friend bool operator==(const CharVec &a, const CharVec &b) {
    return a.r == b.r && a.c1 == b.c1 && a.e == b.e;
  }
};

/// (H^2 ch0^D, H ch1^D, ch2^D): the three numbers stability only sees.
struct VTilde {
  Rational v0, v1, v2;

  bool is_zero() const { return sgn(v0) == 0 && sgn(v1) == 0 && sgn(v2) == 0; }

  friend VTilde operator+(const VTilde &a, const VTilde &b) { return {a.v0 + b.v0, a.v1 + b.v1, a.v2 + b.v2}; }
  friend VTilde operator-(const VTilde &a, const VTilde &b) { return {a.v0 - b.v0, a.v1 - b.v1, a.v2 - b.v2}; }
  friend VTilde operator-(const VTilde &a) { return {-a.v0, -a.v1, -a.v2}; }
  friend VTilde operator*(const Rational &k, const VTilde &a) { return {k * a.v0, k * a.v1, k * a.v2}; }
  friend bool operator==(const VTilde &a, const VTilde &b) { return a.v0 == b.v0 && a.v1 == b.v1 && a.v2 == b.v2; }
};

/// Numerical data of a polarized surface.
///
/// Divisor classes live in a user-declared basis with an integer Gram matrix.
/// Construction validates: gram symmetric, H^2 > 0, H.D = 0.
class SurfaceLattice {
 public:
  SurfaceLattice(std::vector<std::string> basis_labels, std::vector<std::vector<long>> gram, DivisorClass H,
                 DivisorClass D, DivisorClass K, long chiO);

  const std::vector<std::string> &basis_labels() const { return labels_; }
  const std::vector<std::vector<long>> &gram() const { return gram_; }
  const DivisorClass &H() const { return H_; }
  const DivisorClass &D() const { return D_; }
  const DivisorClass &K() const { return K_; }
  long chiO() const { return chiO_; }
  std::size_t rank() const { return labels_.size(); }

  /// H.K < 0: the standing assumption for the Ext^2 certificate.
  bool poisson_mode() const;

  Rational H2() const;
  Rational HK() const;

  /// Same surface with the twist divisor negated (used by the derived dual).
  SurfaceLattice with_negated_twist() const;

  CharVec make_char(Rational r, std::vector<Rational> c1, Rational e) const;

  friend bool operator==(const SurfaceLattice &a, const SurfaceLattice &b);

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<long>> gram_;
  DivisorClass H_, D_, K_;
  long chiO_;
};

/// a^T gram b. Throws std::invalid_argument on dimension mismatch.
Rational intersect(const DivisorClass &a, const DivisorClass &b, const SurfaceLattice &L);

/// exp(-D) ch.
CharVec twist_char(const CharVec &ch, const SurfaceLattice &L);

VTilde vtilde(const CharVec &ch, const SurfaceLattice &L);

/// ch(E (x) K_X) = ch(E) exp(K).
CharVec tensor_by_K(const CharVec &ch, const SurfaceLattice &L);

/// ch(E^v[2]) = (r, -c1, e). The caller flips D and s separately.
CharVec derived_dual(const CharVec &ch);

/// chi(E, F) by Riemann-Roch on a surface.
Rational euler_pairing(const CharVec &chE, const CharVec &chF, const SurfaceLattice &L);

/// v1^2 - 2 v0 v2; nonnegative for Bogomolov-admissible characters.
Rational discriminant(const VTilde &v);

/// True when x is a rational multiple of H (coordinatewise).
bool proportional_to_H(const DivisorClass &x, const SurfaceLattice &L);

/// True when ch2 - c1^2/2 is an integer and r, c1 are integral.
bool is_integral_char(const CharVec &ch, const SurfaceLattice &L);

}  // namespace walland
