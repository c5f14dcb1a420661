#pragma once

#include <compare>
#include <optional>

#include "walland/lattice.hpp"
#include "walland/plane.hpp"
#include "walland/quadnum.hpp"
#include "walland/rational.hpp"

namespace walland {

/// Parameter point P = (1, s, q) of sigma_{s,q}; requires q > s^2/2.
class StabPoint {
 public:
  StabPoint(Rational s, Rational q);

  const Rational &s() const { return s_; }
  const Rational &q() const { return q_; }
  PlanePoint plane_point() const { return PlanePoint::affine(s_, q_); }

  friend bool operator==(const StabPoint &a, const StabPoint &b) { return a.s_ == b.s_ && a.q_ == b.q_; }

 private:
  Rational s_, q_;
};

/// Z = re + i*im.
struct ChargeValue {
  Rational re, im;
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  friend bool operator==(const ChargeValue &a, const ChargeValue &b) { return a.re == b.re && a.im == b.im; }
};

/// A central charge value whose components may carry one square root
/// (charges of line/parabola intersection points).
struct QuadCharge {
  QuadNum re, im;
  QuadCharge() = default;
  QuadCharge(QuadNum r, QuadNum i) : re(std::move(r)), im(std::move(i)) {}
  QuadCharge(const ChargeValue &z) : re(z.re), im(z.im) {}  // NOLINT(google-explicit-constructor)
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  QuadCharge negated() const { return {-re, -im}; }
};

enum class HeartSign { StrictUpper, NegativeRealAxis, Fails };

/// Phase of a heart character: the exact ray of Z plus a display float.
struct PhaseValue {
  ChargeValue exact_ray;  ///< scaled so |im| = 1, or (-1, 0) on the negative real axis
  double approx;          ///< (1/pi) Arg Z in (0, 1]; display only

  /// The phase as an exact rational when Z lies on a multiple of pi/4.
  std::optional<Rational> exact_fraction() const;
};

/// Real-valued phase n + phi, phi in (0, 1], represented exactly: sheet n and
/// a charge z with (-1)^n z in the closed upper half-plane minus [0, inf).
/// Transport along a parameter segment adds the (principal) rotation of Z.
class LiftedPhase {
 public:
  /// Phase of z with sheet chosen so the value lies in (-1, 1].
  static LiftedPhase base(const QuadCharge &z);
  LiftedPhase(long sheet, QuadCharge z);

  long sheet() const { return sheet_; }
  const QuadCharge &charge() const { return z_; }

  /// Continues this phase to the charge z_end reached by moving the
  /// parameter along a segment on which Z stays nonzero.
  LiftedPhase transported(const QuadCharge &z_end) const;

  /// Same phase value, represented by a positively rescaled charge. Used to
  /// hand a phase to a factor whose charge lies on the same ray.
  LiftedPhase with_charge(const QuadCharge &z) const;

  long double approx() const;

  friend int compare(const LiftedPhase &a, const LiftedPhase &b);

 private:
  long sheet_;
  QuadCharge z_;
};

/// True when z is in the heart half-plane {Im > 0} U {Im = 0, Re < 0}.
bool in_heart_half_plane(const QuadCharge &z);

/// Sign of the cross product u x v (positive when v is counterclockwise of u).
int cross_sign(const QuadCharge &u, const QuadCharge &v);

/// Sign of the dot product u . v.
int dot_sign(const QuadCharge &u, const QuadCharge &v);

ChargeValue central_charge(const StabPoint &P, const VTilde &v);

/// Central charge of a character with quadratic-number components.
QuadCharge central_charge(const StabPoint &P, const QuadNum &v0, const QuadNum &v1, const QuadNum &v2);

HeartSign heart_sign_check(const StabPoint &P, const VTilde &v);

/// Throws PreconditionError on a zero charge or a charge in the open lower
/// half-plane (the two cases are reported with different messages).
PhaseValue phase(const StabPoint &P, const VTilde &v);

/// Exact comparison of phi_P(v) and phi_P(w); both must pass heart_sign_check.
std::strong_ordering phase_compare(const StabPoint &P, const VTilde &v, const VTilde &w);

/// The potential wall of v and w: the line through their plane points.
PlaneLine wall_of(const VTilde &v, const VTilde &w);

struct WallPairWitness {
  bool disjoint_above_parabola;
  PlanePoint meet;  ///< common point of the two walls
};

/// Intersects the walls L(v, w1) and L(v, w2) and reports whether their
/// common point avoids the open region q > s^2/2. Requires discriminant(v) >= 0.
WallPairWitness walls_disjoint_above_parabola(const VTilde &v, const VTilde &w1, const VTilde &w2);

}  // namespace walland
