#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "walland/lattice.hpp"
#include "walland/quadnum.hpp"
#include "walland/rational.hpp"

namespace walland {

/// A point [v0 : v1 : v2] of the projective plane whose affine chart v0 = 1
/// has coordinates (x, y) = (v1/v0, v2/v0). Stored with the first nonzero
/// coordinate scaled to 1, so structural equality is projective equality.
class PlanePoint {
 public:
  PlanePoint(Rational v0, Rational v1, Rational v2);
  static PlanePoint affine(Rational x, Rational y) { return PlanePoint(1, std::move(x), std::move(y)); }
  static PlanePoint of(const VTilde &v) { return PlanePoint(v.v0, v.v1, v.v2); }

  const std::array<Rational, 3> &homog() const { return h_; }
  bool is_affine() const { return sgn(h_[0]) != 0; }
  /// Throws PreconditionError at infinity.
  const Rational &x() const;
  const Rational &y() const;

  friend bool operator==(const PlanePoint &a, const PlanePoint &b) { return a.h_ == b.h_; }

 private:
  std::array<Rational, 3> h_;
};

/// a*v0 + b*v1 + c*v2 = 0, scaled so the first nonzero coefficient is 1.
/// Affine form: a + b*x + c*y = 0.
class PlaneLine {
 public:
  PlaneLine(Rational a, Rational b, Rational c);

  const std::array<Rational, 3> &coeffs() const { return c_; }
  bool is_vertical() const { return sgn(c_[2]) == 0 && sgn(c_[1]) != 0; }
  bool is_at_infinity() const { return sgn(c_[1]) == 0 && sgn(c_[2]) == 0; }

  Rational eval(const PlanePoint &p) const;
  bool contains(const PlanePoint &p) const { return sgn(eval(p)) == 0; }

  friend bool operator==(const PlaneLine &a, const PlaneLine &b) { return a.c_ == b.c_; }
  friend bool operator<(const PlaneLine &a, const PlaneLine &b) { return a.c_ < b.c_; }

 private:
  std::array<Rational, 3> c_;
};

/// An affine point whose coordinates may involve one square root.
struct QuadPoint {
  QuadNum x, y;

  static QuadPoint of(const PlanePoint &p) { return {QuadNum(p.x()), QuadNum(p.y())}; }
  friend bool operator==(const QuadPoint &a, const QuadPoint &b) { return a.x == b.x && a.y == b.y; }
};

/// The curve y = x^2/2 + C.
struct ParabolaShift {
  Rational C{0};
};

PlaneLine line_through(const PlanePoint &p, const PlanePoint &q);

/// Common point of two distinct lines (possibly at infinity).
PlanePoint line_intersection(const PlaneLine &a, const PlaneLine &b);

bool collinear(const PlanePoint &p, const PlanePoint &q, const PlanePoint &r);

/// Sign of (q - p) x (r - p): +1 when r is left of p -> q (counterclockwise).
int orientation(const PlanePoint &p, const PlanePoint &q, const PlanePoint &r);
int orientation(const QuadPoint &p, const QuadPoint &q, const QuadPoint &r);

/// Intersections ordered by increasing x: two points (secant), one
/// (tangent, or a vertical line), or none.
std::vector<QuadPoint> line_parabola_intersect(const PlaneLine &L, const ParabolaShift &P);

/// Moves p by delta along its own parabola y - x^2/2 = const.
PlanePoint parabola_translate(const PlanePoint &p, const Rational &delta);

using QuadSegment = std::pair<QuadPoint, QuadPoint>;

/// Closed-segment intersection. All coordinates must share one radical.
bool segments_intersect(const QuadSegment &s1, const QuadSegment &s2);

/// Closed intersection test for two chords of one parabola y = x^2/2 + C,
/// given only the x-coordinates of their endpoints. Works across different
/// radicals: two chords of a strictly convex curve meet iff their x-ranges
/// interleave or share an endpoint.
bool parabola_chords_intersect(const std::pair<QuadNum, QuadNum> &xs1, const std::pair<QuadNum, QuadNum> &xs2);

/// y - x^2/2 at an affine point: >0 above the parabola C = 0.
Rational height_above_parabola(const PlanePoint &p);

}  // namespace walland
