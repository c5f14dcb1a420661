#include "walland/stability.hpp"

#include <cmath>
#include <numbers>

#include "walland/error.hpp"

namespace walland {

namespace {

QuadCharge signed_by_sheet(const QuadCharge &z, long sheet) { return (sheet % 2 == 0) ? z : z.negated(); }

long double heart_angle_fraction(const QuadCharge &z) {
  return std::atan2(z.im.approx(), z.re.approx()) / std::numbers::pi_v<long double>;
}

}  // namespace

StabPoint::StabPoint(Rational s, Rational q) : s_(std::move(s)), q_(std::move(q)) {
  if (cmp(q_, s_ * s_ / 2) <= 0) {
    throw PreconditionError("stability parameter (s, q) = (" + format_rational(s_) + ", " + format_rational(q_) +
                            ") violates q > s^2/2");
  }
}

bool in_heart_half_plane(const QuadCharge &z) {
  const int si = z.im.sign();
  return si > 0 || (si == 0 && z.re.sign() < 0);
}

int cross_sign(const QuadCharge &u, const QuadCharge &v) { return (u.re * v.im - u.im * v.re).sign(); }

int dot_sign(const QuadCharge &u, const QuadCharge &v) { return (u.re * v.re + u.im * v.im).sign(); }

std::optional<Rational> PhaseValue::exact_fraction() const {
  const auto &[re, im] = exact_ray;
  if (sgn(im) == 0) return Rational(1);
  if (sgn(re) == 0) return Rational(1, 2);
  if (re == im) return Rational(1, 4);
  if (re == -im) return Rational(3, 4);
  return std::nullopt;
}

LiftedPhase LiftedPhase::base(const QuadCharge &z) {
  if (z.is_zero()) throw PreconditionError("phase of a zero central charge");
  return in_heart_half_plane(z) ? LiftedPhase(0, z) : LiftedPhase(-1, z);
}

LiftedPhase::LiftedPhase(long sheet, QuadCharge z) : sheet_(sheet), z_(std::move(z)) {
  if (!in_heart_half_plane(signed_by_sheet(z_, sheet_))) {
    throw PreconditionError("charge does not lie on the half-plane of its phase sheet");
  }
}

LiftedPhase LiftedPhase::transported(const QuadCharge &z_end) const {
  if (z_end.is_zero()) throw PreconditionError("phase transport reaches a zero central charge");
  QuadCharge from = signed_by_sheet(z_, sheet_);
  QuadCharge to = signed_by_sheet(z_end, sheet_);
  if (in_heart_half_plane(to)) return LiftedPhase(sheet_, z_end);
  const int turn = cross_sign(from, to);
  if (turn == 0) throw PreconditionError("phase transport passes through a zero central charge");
  return LiftedPhase(sheet_ + turn, z_end);
}

LiftedPhase LiftedPhase::with_charge(const QuadCharge &z) const {
  if (cross_sign(z_, z) != 0 || dot_sign(z_, z) <= 0) {
    throw PreconditionError("charge is not on the ray of the phase being handed over");
  }
  return LiftedPhase(sheet_, z);
}

long double LiftedPhase::approx() const {
  return static_cast<long double>(sheet_) + heart_angle_fraction(signed_by_sheet(z_, sheet_));
}

int compare(const LiftedPhase &a, const LiftedPhase &b) {
  if (a.sheet_ != b.sheet_) return a.sheet_ < b.sheet_ ? -1 : 1;
  QuadCharge za = signed_by_sheet(a.z_, a.sheet_);
  QuadCharge zb = signed_by_sheet(b.z_, b.sheet_);
  // Both rays lie in a half-plane of angular width pi, so the cross product
  // orders them.
  return cross_sign(zb, za);
}

ChargeValue central_charge(const StabPoint &P, const VTilde &v) {
  return {-v.v2 + P.q() * v.v0, v.v1 - P.s() * v.v0};
}

QuadCharge central_charge(const StabPoint &P, const QuadNum &v0, const QuadNum &v1, const QuadNum &v2) {
  return {-v2 + QuadNum(P.q()) * v0, v1 - QuadNum(P.s()) * v0};
}

HeartSign heart_sign_check(const StabPoint &P, const VTilde &v) {
  ChargeValue z = central_charge(P, v);
  if (sgn(z.im) > 0) return HeartSign::StrictUpper;
  if (sgn(z.im) == 0 && sgn(z.re) < 0) return HeartSign::NegativeRealAxis;
  return HeartSign::Fails;
}

PhaseValue phase(const StabPoint &P, const VTilde &v) {
  ChargeValue z = central_charge(P, v);
  if (z.is_zero()) throw PreconditionError("character lies in the kernel of Z at this parameter point");
  if (heart_sign_check(P, v) == HeartSign::Fails) {
    throw PreconditionError("central charge lies in the open lower half-plane or on the positive real axis");
  }
  ChargeValue ray = z;
  Rational scale = sgn(z.im) != 0 ? Rational(abs(z.im)) : Rational(abs(z.re));
  ray.re /= scale;
  ray.im /= scale;
  long double a = heart_angle_fraction(QuadCharge(z));
  return {ray, static_cast<double>(a)};
}

std::strong_ordering phase_compare(const StabPoint &P, const VTilde &v, const VTilde &w) {
  // phase() validates both characters.
  phase(P, v);
  phase(P, w);
  const int c = cross_sign(central_charge(P, w), central_charge(P, v));
  if (c > 0) return std::strong_ordering::greater;
  if (c < 0) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

PlaneLine wall_of(const VTilde &v, const VTilde &w) {
  if (v.is_zero() || w.is_zero()) throw PreconditionError("potential wall of a zero character");
  PlanePoint pv = PlanePoint::of(v);
  PlanePoint pw = PlanePoint::of(w);
  if (pv == pw) throw PreconditionError("characters have the same plane point; no potential wall");
  return line_through(pv, pw);
}

WallPairWitness walls_disjoint_above_parabola(const VTilde &v, const VTilde &w1, const VTilde &w2) {
  if (sgn(discriminant(v)) < 0) throw PreconditionError("character violates the Bogomolov inequality");
  PlaneLine l1 = wall_of(v, w1);
  PlaneLine l2 = wall_of(v, w2);
  if (l1 == l2) throw PreconditionError("the two walls are identical");
  PlanePoint meet = line_intersection(l1, l2);
  const bool inside = meet.is_affine() && sgn(height_above_parabola(meet)) > 0;
  return {!inside, meet};
}

}  // namespace walland
