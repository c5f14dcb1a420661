#include "walland/plane.hpp"

#include <algorithm>

#include "walland/error.hpp"

namespace walland {

namespace {

template <typename T>
void normalize_first_nonzero(std::array<T, 3> &h, const char *what) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (sgn(h[i]) != 0) {
      T lead = h[i];
      for (auto &c : h) c /= lead;
      return;
    }
  }
  throw PreconditionError(std::string(what) + " with all coordinates zero");
}

std::array<Rational, 3> cross(const std::array<Rational, 3> &u, const std::array<Rational, 3> &v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

Rational det3(const std::array<Rational, 3> &a, const std::array<Rational, 3> &b, const std::array<Rational, 3> &c) {
  auto bc = cross(b, c);
  return a[0] * bc[0] + a[1] * bc[1] + a[2] * bc[2];
}

// Closed 1-D overlap of [a0, a1] and [b0, b1] (endpoints in any order).
bool ranges_overlap(const QuadNum &a0, const QuadNum &a1, const QuadNum &b0, const QuadNum &b1) {
  const QuadNum &alo = compare(a0, a1) <= 0 ? a0 : a1;
  const QuadNum &ahi = compare(a0, a1) <= 0 ? a1 : a0;
  const QuadNum &blo = compare(b0, b1) <= 0 ? b0 : b1;
  const QuadNum &bhi = compare(b0, b1) <= 0 ? b1 : b0;
  return compare(alo, bhi) <= 0 && compare(blo, ahi) <= 0;
}

}  // namespace

PlanePoint::PlanePoint(Rational v0, Rational v1, Rational v2) : h_{std::move(v0), std::move(v1), std::move(v2)} {
  normalize_first_nonzero(h_, "plane point");
}

const Rational &PlanePoint::x() const {
  if (!is_affine()) throw PreconditionError("plane point is at infinity");
  return h_[1];
}

const Rational &PlanePoint::y() const {
  if (!is_affine()) throw PreconditionError("plane point is at infinity");
  return h_[2];
}

PlaneLine::PlaneLine(Rational a, Rational b, Rational c) : c_{std::move(a), std::move(b), std::move(c)} {
  normalize_first_nonzero(c_, "plane line");
}

Rational PlaneLine::eval(const PlanePoint &p) const {
  const auto &h = p.homog();
  return c_[0] * h[0] + c_[1] * h[1] + c_[2] * h[2];
}

PlaneLine line_through(const PlanePoint &p, const PlanePoint &q) {
  if (p == q) throw PreconditionError("line through two identical points");
  auto c = cross(p.homog(), q.homog());
  return PlaneLine(c[0], c[1], c[2]);
}

PlanePoint line_intersection(const PlaneLine &a, const PlaneLine &b) {
  if (a == b) throw PreconditionError("intersection of identical lines");
  auto c = cross(a.coeffs(), b.coeffs());
  return PlanePoint(c[0], c[1], c[2]);
}

bool collinear(const PlanePoint &p, const PlanePoint &q, const PlanePoint &r) {
  return sgn(det3(p.homog(), q.homog(), r.homog())) == 0;
}

int orientation(const PlanePoint &p, const PlanePoint &q, const PlanePoint &r) {
  if (!p.is_affine() || !q.is_affine() || !r.is_affine()) {
    throw PreconditionError("orientation needs affine points");
  }
  Rational d = (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
  return sgn(d);
}

int orientation(const QuadPoint &p, const QuadPoint &q, const QuadPoint &r) {
  QuadNum d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return d.sign();
}

std::vector<QuadPoint> line_parabola_intersect(const PlaneLine &L, const ParabolaShift &P) {
  const auto &[a, b, c] = L.coeffs();
  if (L.is_at_infinity()) throw PreconditionError("line at infinity has no affine intersection");
  if (sgn(c) == 0) {
    Rational x = -a / b;
    return {QuadPoint{QuadNum(x), QuadNum(x * x / 2 + P.C)}};
  }
  // y = -(a + b x)/c  and  y = x^2/2 + C  =>  x^2 + 2(b/c) x + 2(C + a/c) = 0.
  Rational half_p = b / c;
  Rational disc = half_p * half_p - 2 * (P.C + a / c);
  auto y_on_line = [&](const QuadNum &x) { return QuadNum(-a / c) - QuadNum(b / c) * x; };
  if (sgn(disc) < 0) return {};
  if (sgn(disc) == 0) {
    QuadNum x(-half_p);
    return {QuadPoint{x, y_on_line(x)}};
  }
  QuadNum xa(-half_p, -1, disc);
  QuadNum xb(-half_p, 1, disc);
  return {QuadPoint{xa, y_on_line(xa)}, QuadPoint{xb, y_on_line(xb)}};
}

PlanePoint parabola_translate(const PlanePoint &p, const Rational &delta) {
  Rational C = p.y() - p.x() * p.x() / 2;
  Rational x = p.x() + delta;
  return PlanePoint::affine(x, x * x / 2 + C);
}

bool segments_intersect(const QuadSegment &s1, const QuadSegment &s2) {
  const auto &[p1, p2] = s1;
  const auto &[q1, q2] = s2;
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
    // Collinear (or degenerate) segments: overlap of both projections.
    return ranges_overlap(p1.x, p2.x, q1.x, q2.x) && ranges_overlap(p1.y, p2.y, q1.y, q2.y);
  }
  if (o1 * o2 > 0 || o3 * o4 > 0) return false;
  // A zero orientation with the other pair straddling means an endpoint lies
  // on the other carrier line; it is on the segment iff the boxes overlap.
  return ranges_overlap(p1.x, p2.x, q1.x, q2.x) && ranges_overlap(p1.y, p2.y, q1.y, q2.y);
}

bool parabola_chords_intersect(const std::pair<QuadNum, QuadNum> &xs1, const std::pair<QuadNum, QuadNum> &xs2) {
  auto ordered = [](const std::pair<QuadNum, QuadNum> &xs) {
    return compare_mixed(xs.first, xs.second) <= 0 ? xs : std::pair{xs.second, xs.first};
  };
  auto [a1, b1] = ordered(xs1);
  auto [a2, b2] = ordered(xs2);
  auto le = [](const QuadNum &u, const QuadNum &v) { return compare_mixed(u, v) <= 0; };
  auto eq = [](const QuadNum &u, const QuadNum &v) { return compare_mixed(u, v) == 0; };
  if (eq(a1, a2) || eq(a1, b2) || eq(b1, a2) || eq(b1, b2)) return true;
  // Interleaving a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1. Nested or disjoint
  // chords do not meet.
  return (le(a1, a2) && le(a2, b1) && le(b1, b2)) || (le(a2, a1) && le(a1, b2) && le(b2, b1));
}

Rational height_above_parabola(const PlanePoint &p) { return p.y() - p.x() * p.x() / 2; }

}  // namespace walland
