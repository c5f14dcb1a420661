#include "walland/wall_crossing.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "walland/error.hpp"

namespace walland {

namespace {

QuadCharge charge_of_point(const StabPoint &X, const BoundaryPoint &b) {
  if (b.at_infinity) return central_charge(X, QuadNum(0), QuadNum(0), QuadNum(1));
  return central_charge(X, QuadNum(1), b.point.x, b.point.y);
}

QuadCharge scaled(const QuadCharge &z, int s) { return s > 0 ? z : z.negated(); }

// [lo, hi] of q*w0 + t*(q*v0 - v2) for q in [q_lo, q_hi], t in [t_lo, t_hi].
// The expression is bilinear in (q, t), so the extremes sit at corners.
std::pair<Rational, Rational> w2_range(const Rational &w0, const VTilde &v, const Rational &q_lo, const Rational &q_hi,
                                       const Rational &t_lo, const Rational &t_hi) {
  std::optional<Rational> lo, hi;
  for (const Rational *q : {&q_lo, &q_hi}) {
    for (const Rational *t : {&t_lo, &t_hi}) {
      Rational val = *q * w0 + *t * (*q * v.v0 - v.v2);
      if (!lo || val < *lo) lo = val;
      if (!hi || val > *hi) hi = val;
    }
  }
  return {*lo, *hi};
}

// Calls visit(w, v(w)) for every integral character within the bounds whose
// twisted ch2 lies in the window produced by w2_window(w0).
template <typename Window, typename Visit>
void for_each_bounded_char(const SurfaceLattice &L, const SearchBounds &bounds, Window w2_window, Visit visit) {
  if (bounds.rank_bound < 0 || bounds.c1_bound < 0) throw PreconditionError("search bounds must be nonnegative");
  // (0, 0) switches the search off; otherwise it would still scan the
  // characters (0, 0, k).
  if (bounds.rank_bound == 0 && bounds.c1_bound == 0) return;
  const std::size_t n = L.rank();
  const Rational H2 = L.H2();
  const Rational D2 = intersect(L.D(), L.D(), L);
  std::vector<long> c(n, -bounds.c1_bound);
  while (true) {
    DivisorClass c1(std::vector<Rational>(c.begin(), c.end()));
    const Rational Hc = intersect(L.H(), c1, L);
    const Rational Dc = intersect(L.D(), c1, L);
    const Rational half_c2 = intersect(c1, c1, L) / 2;
    for (long r = -bounds.rank_bound; r <= bounds.rank_bound; ++r) {
      const Rational w0 = H2 * r;
      const Rational w1 = Hc;  // H.D = 0, so H.(c1 - rD) = H.c1
      auto [w2_lo, w2_hi] = w2_window(w0);
      // w2 = e - D.c1 + r D^2/2 and e = c1^2/2 + k with k integral.
      const Rational shift = Dc - Rational(r) * D2 / 2 - half_c2;
      const Rational k_lo = ceil(w2_lo + shift);
      const Rational k_hi = floor(w2_hi + shift);
      for (Rational k = k_lo; k <= k_hi; k += 1) {
        CharVec w{Rational(r), c1, half_c2 + k};
        VTilde vw{w0, w1, w.e - Dc + Rational(r) * D2 / 2};
        visit(w, vw);
      }
    }
    std::size_t i = 0;
    while (i < n && c[i] == bounds.c1_bound) {
      c[i] = -bounds.c1_bound;
      ++i;
    }
    if (i == n) break;
    ++c[i];
  }
}

bool line_meets_box_above_parabola(const PlaneLine &line, const Box &box) {
  const auto &[a, b, c] = line.coeffs();
  if (line.is_at_infinity()) return false;
  if (sgn(c) == 0) {
    Rational x = -a / b;
    return box.smin <= x && x <= box.smax && box.qmax > x * x / 2;
  }
  // y = m x + k on [xl, xr] where the line stays inside the box.
  Rational m = -b / c;
  Rational k = -a / c;
  Rational xl = box.smin, xr = box.smax;
  if (sgn(m) != 0) {
    Rational x1 = (box.qmin - k) / m, x2 = (box.qmax - k) / m;
    if (x1 > x2) std::swap(x1, x2);
    xl = std::max(xl, x1);
    xr = std::min(xr, x2);
  } else if (k < box.qmin || k > box.qmax) {
    return false;
  }
  if (xl > xr) return false;
  // g(x) = m x + k - x^2/2 is concave with vertex at x = m.
  Rational x = m < xl ? xl : (m > xr ? xr : m);
  return m * x + k - x * x / 2 > 0;
}

bool line_meets_segment(const PlaneLine &line, const Segment &seg) {
  return sgn(line.eval(seg.from.plane_point())) * sgn(line.eval(seg.to.plane_point())) <= 0;
}

std::pair<Rational, Rational> q_range(const Region &region) {
  if (const auto *seg = std::get_if<Segment>(&region)) {
    return {std::min(seg->from.q(), seg->to.q()), std::max(seg->from.q(), seg->to.q())};
  }
  const auto &box = std::get<Box>(region);
  return {box.qmin, box.qmax};
}

bool boundary_segments_intersect(const BoundaryPoint &A, const BoundaryPoint &B, const BoundaryPoint &A2,
                                 const BoundaryPoint &B2) {
  const bool ray1 = B.at_infinity, ray2 = B2.at_infinity;
  if (!ray1 && !ray2) return parabola_chords_intersect({A.point.x, B.point.x}, {A2.point.x, B2.point.x});
  if (ray1 && ray2) return compare_mixed(A.point.x, A2.point.x) == 0;
  // A vertical ray up from the parabola meets a chord iff its foot lies in
  // the chord's x-range (the chord is above the parabola there).
  const QuadNum &x0 = ray1 ? A.point.x : A2.point.x;
  const QuadNum &c0 = ray1 ? A2.point.x : A.point.x;
  const QuadNum &c1 = ray1 ? B2.point.x : B.point.x;
  const bool ordered = compare_mixed(c0, c1) <= 0;
  const QuadNum &lo = ordered ? c0 : c1;
  const QuadNum &hi = ordered ? c1 : c0;
  return compare_mixed(lo, x0) <= 0 && compare_mixed(x0, hi) <= 0;
}

struct Simulator {
  const StabPoint &Q;
  const SurfaceLattice &L;
  const SimulationOptions &options;
  std::size_t node_count = 0;
  bool truncated = false;

  PathNode make_node(CharVec ch, VTilde v, StabPoint start, LiftedPhase phase_at_start, int depth) {
    ++node_count;
    LiftedPhase at_Q = phase_at_start.transported(central_charge(Q, v));
    PathNode node{std::move(ch), v, std::move(start), std::move(phase_at_start), std::move(at_Q), depth, false, {}};
    expand(node);
    return node;
  }

  void expand(PathNode &node) {
    if (node.start == Q) return;
    if (node.depth >= options.max_depth) {
      node.depth_limited = true;
      truncated = true;
      return;
    }
    const StabPoint &X = node.start;
    const Rational q_lo = std::min(X.q(), Q.q()), q_hi = std::max(X.q(), Q.q());
    const VTilde &u = node.v;
    const PlanePoint pu = PlanePoint::of(u);

    struct Split {
      Rational lambda;
      CharVec first, second;
      VTilde v_first, v_second;
      PlaneLine wall;
    };
    std::vector<Split> splits;
    std::set<std::tuple<Rational, std::vector<Rational>>> seen;

    auto key_of = [](const Rational &lambda, const CharVec &w) {
      std::vector<Rational> k{w.r};
      k.insert(k.end(), w.c1.coords.begin(), w.c1.coords.end());
      k.push_back(w.e);
      return std::tuple<Rational, std::vector<Rational>>{lambda, std::move(k)};
    };

    for_each_bounded_char(
        L, options.bounds, [&](const Rational &w0) { return w2_range(w0, u, q_lo, q_hi, Rational(0), Rational(1)); },
        [&](const CharVec &w, const VTilde &vw) {
          if (vw.is_zero()) return;
          PlanePoint pw = PlanePoint::of(vw);
          if (pw == pu) return;
          if (sgn(discriminant(vw)) < 0) return;
          VTilde rest = u - vw;
          if (sgn(discriminant(rest)) < 0) return;
          PlaneLine wall = line_through(pu, pw);
          Rational fX = wall.eval(X.plane_point());
          Rational fQ = wall.eval(Q.plane_point());
          if (sgn(fX) * sgn(fQ) >= 0) return;  // no transversal crossing of the open segment
          Rational lambda = fX / (fX - fQ);
          StabPoint R(X.s() + lambda * (Q.s() - X.s()), X.q() + lambda * (Q.q() - X.q()));
          ChargeValue zu = central_charge(R, u);
          ChargeValue zw = central_charge(R, vw);
          ChargeValue zr = central_charge(R, rest);
          if (dot_sign(zw, zu) <= 0 || dot_sign(zr, zu) <= 0) return;
          CharVec other = node.ch - w;
          const bool w_first = !char_less(other, w);
          const CharVec &first = w_first ? w : other;
          if (!seen.insert(key_of(lambda, first)).second) return;
          splits.push_back({lambda, first, w_first ? other : w, w_first ? vw : rest, w_first ? rest : vw, wall});
        });

    std::sort(splits.begin(), splits.end(), [](const Split &a, const Split &b) {
      if (a.lambda != b.lambda) return a.lambda < b.lambda;
      return char_less(a.first, b.first);
    });

    for (auto &split : splits) {
      if (node_count + 2 > options.max_nodes) {  // an event adds two nodes
        truncated = true;
        return;
      }
      StabPoint R(X.s() + split.lambda * (Q.s() - X.s()), X.q() + split.lambda * (Q.q() - X.q()));
      LiftedPhase u_at_R = node.phase_at_start.transported(central_charge(R, u));
      PathEvent event{R, split.lambda, split.wall, {}};
      event.factors.push_back(make_node(split.first, split.v_first, R,
                                        u_at_R.with_charge(central_charge(R, split.v_first)), node.depth + 1));
      event.factors.push_back(make_node(split.second, split.v_second, R,
                                        u_at_R.with_charge(central_charge(R, split.v_second)), node.depth + 1));
      node.events.push_back(std::move(event));
    }
  }
};

void collect_nodes(const PathNode &node, std::vector<const PathNode *> &out) {
  out.push_back(&node);
  for (const auto &event : node.events) {
    for (const auto &child : event.factors) collect_nodes(child, out);
  }
}

Ext2Certificate failed(Ext2Certificate cert, std::string why) {
  cert.verified = false;
  cert.failure = std::move(why);
  return cert;
}

Rational nearby_step(const StabPoint &P) {
  // (s +- eps)^2 < 2q holds whenever eps (1 + 2|s|) <= 2q - s^2 and eps <= 1.
  Rational gap = 2 * P.q() - P.s() * P.s();
  Rational eps = gap / (2 * abs(P.s()) + 2);
  return std::min(eps, Rational(1));
}

}  // namespace

std::pair<BoundaryPoint, BoundaryPoint> boundary_points(const PlaneLine &line) {
  auto pts = line_parabola_intersect(line, ParabolaShift{0});
  if (line.is_vertical()) return {BoundaryPoint{false, pts.at(0)}, BoundaryPoint{true, {}}};
  if (pts.size() != 2) {
    throw PreconditionError(pts.empty() ? "line misses the boundary parabola" : "line is tangent to the boundary parabola");
  }
  return {BoundaryPoint{false, pts[0]}, BoundaryPoint{false, pts[1]}};
}

bool PhaseInterval::contains(const LiftedPhase &phase) const {
  return compare(lo(), phase) <= 0 && compare(phase, hi()) <= 0;
}

PhaseInterval phase_bound_interval(const StabPoint &P, const StabPoint &Q, const VTilde &v) {
  if (v.is_zero()) throw PreconditionError("phase bounds of a zero character");
  const PlanePoint pv = PlanePoint::of(v);
  if (pv == P.plane_point()) throw PreconditionError("character's plane point coincides with P");
  const PlaneLine line = line_through(pv, P.plane_point());
  auto [A, B] = boundary_points(line);

  const QuadCharge zE = central_charge(P, v);
  const LiftedPhase base = LiftedPhase::base(zE);
  auto endpoint_phase = [&](const BoundaryPoint &X) {
    QuadCharge zP = charge_of_point(P, X);
    const int orient = dot_sign(zP, zE) > 0 ? 1 : -1;
    LiftedPhase at_P = base.with_charge(scaled(zP, orient));
    return at_P.transported(scaled(charge_of_point(Q, X), orient));
  };

  PhaseInterval out{A, B, base, endpoint_phase(A), endpoint_phase(B), std::nullopt};
  if (pv.is_affine()) {
    QuadPoint qv = QuadPoint::of(pv);
    if (!A.at_infinity && A.point == qv) out.endpoint_at_character = 'A';
    if (!B.at_infinity && B.point == qv) out.endpoint_at_character = 'B';
  } else if (B.at_infinity && pv == PlanePoint(0, 0, 1)) {
    out.endpoint_at_character = 'B';
  }
  return out;
}

std::vector<CandidateWall> enumerate_candidate_walls(const CharVec &ch, const SurfaceLattice &L, const Region &region,
                                                     const SearchBounds &bounds) {
  const VTilde v = vtilde(ch, L);
  if (v.is_zero()) throw PreconditionError("candidate walls of a zero character");
  if (!is_integral_char(ch, L)) throw PreconditionError("candidate-wall search needs an integral character");
  const PlanePoint pv = PlanePoint::of(v);
  auto [q_lo, q_hi] = q_range(region);
  std::map<PlaneLine, std::vector<Witness>> walls;

  for_each_bounded_char(
      L, bounds, [&](const Rational &w0) { return w2_range(w0, v, q_lo, q_hi, Rational(-1), Rational(1)); },
      [&](const CharVec &w, const VTilde &vw) {
        if (vw.is_zero()) return;
        PlanePoint pw = PlanePoint::of(vw);
        if (pw == pv) return;
        if (sgn(discriminant(vw)) < 0 || sgn(discriminant(v - vw)) < 0) return;
        PlaneLine wall = line_through(pv, pw);
        const bool meets = std::visit(
            [&](const auto &r) {
              using T = std::decay_t<decltype(r)>;
              if constexpr (std::is_same_v<T, Segment>) {
                return line_meets_segment(wall, r);
              } else {
                return line_meets_box_above_parabola(wall, r);
              }
            },
            region);
        if (meets) walls[wall].push_back({w, vw});
      });

  std::vector<CandidateWall> out;
  out.reserve(walls.size());
  for (auto &[wall, witnesses] : walls) {
    std::sort(witnesses.begin(), witnesses.end(),
              [](const Witness &a, const Witness &b) { return char_less(a.ch, b.ch); });
    out.push_back({wall, std::move(witnesses)});
  }
  return out;
}

std::vector<const PathNode *> PathTree::nodes() const {
  std::vector<const PathNode *> out;
  collect_nodes(root, out);
  return out;
}

PathTree simulate_destabilization_paths(const StabPoint &P, const StabPoint &Q, const CharVec &ch,
                                        const SurfaceLattice &L, const SimulationOptions &options) {
  if (options.bounds.rank_bound < 0 || options.bounds.c1_bound < 0) {
    throw PreconditionError("path simulation needs nonnegative rank and c1 bounds");
  }
  if (!is_integral_char(ch, L)) throw PreconditionError("path simulation needs an integral character");
  const VTilde v = vtilde(ch, L);
  if (v.is_zero()) throw PreconditionError("path simulation of a zero character");
  Simulator sim{Q, L, options};
  LiftedPhase at_P = LiftedPhase::base(central_charge(P, v));
  PathNode root = sim.make_node(ch, v, P, at_P, 0);
  return PathTree{P, Q, std::move(root), sim.node_count, sim.truncated};
}

const char *to_string(Ext2Branch branch) {
  switch (branch) {
    case Ext2Branch::SegmentsIntersect:
      return "SegmentsIntersect";
    case Ext2Branch::PhaseDominance:
      return "PhaseDominance";
    case Ext2Branch::DualReduction:
      return "DualReduction";
    case Ext2Branch::NearbyStability:
      return "NearbyStability";
  }
  return "?";
}

DualData dual_reduction(const CharVec &ch, const SurfaceLattice &L, const StabPoint &P) {
  return {-derived_dual(ch), L.with_negated_twist(), StabPoint(-P.s(), P.q())};
}

Ext2Certificate ext2_vanishing_certificate(const StabPoint &P, const CharVec &ch, const SurfaceLattice &L) {
  if (!L.poisson_mode()) throw PreconditionError("Ext^2 certificate needs H.K < 0");
  const VTilde v = vtilde(ch, L);
  if (v.is_zero()) throw PreconditionError("Ext^2 certificate of a zero character");
  if (heart_sign_check(P, v) == HeartSign::Fails) {
    throw PreconditionError("character is not in the heart at P (central charge fails the sign check)");
  }
  if (sgn(discriminant(v)) < 0) throw PreconditionError("character violates the Bogomolov inequality");

  Ext2Certificate cert{Ext2Branch::PhaseDominance, false, {}, P, ch, v, false, std::nullopt, std::nullopt, {}};
  const bool at_infinity = sgn(v.v0) == 0;
  const int side = at_infinity ? -1 : cmp(P.s(), v.v1 / v.v0);

  if (side > 0) {
    cert.branch = Ext2Branch::DualReduction;
    DualData dual = dual_reduction(ch, L, P);
    cert.inner.push_back(ext2_vanishing_certificate(dual.P, dual.ch, dual.lattice));
    cert.inner.back().twist_negated = !cert.twist_negated;
    cert.verified = cert.inner.back().verified;
    if (!cert.verified) cert.failure = "dual certificate failed";
    return cert;
  }
  if (side == 0) {
    cert.branch = Ext2Branch::NearbyStability;
    const Rational eps = nearby_step(P);
    StabPoint right(P.s() + eps, P.q());
    StabPoint left(P.s() - eps, P.q());
    StabPoint nearby = heart_sign_check(right, v) != HeartSign::Fails ? right : left;
    cert.perturbed_P = nearby;
    cert.inner.push_back(ext2_vanishing_certificate(nearby, ch, L));
    cert.inner.back().twist_negated = cert.twist_negated;
    cert.verified = cert.inner.back().verified;
    if (!cert.verified) cert.failure = "certificate at the perturbed point failed";
    return cert;
  }

  // P is left of v(E) (or v(E) is at infinity).
  const CharVec ch_EK = tensor_by_K(ch, L);
  const VTilde v_EK = vtilde(ch_EK, L);
  const Rational shift = L.HK() / L.H2();
  const PlanePoint q_point = parabola_translate(P.plane_point(), shift);
  const StabPoint Q(q_point.x(), q_point.y());

  const PlanePoint pv = PlanePoint::of(v);
  const PlanePoint pEK = PlanePoint::of(v_EK);
  const PlaneLine line_P = line_through(pv, P.plane_point());
  const PlaneLine line_Q = line_through(pEK, Q.plane_point());
  auto [A, B] = boundary_points(line_P);
  auto [A2, B2] = boundary_points(line_Q);
  PhaseInterval interval = phase_bound_interval(P, Q, v);
  const QuadCharge z_EK = central_charge(Q, v_EK);
  LiftedPhase phase_EK = LiftedPhase::base(z_EK);

  std::optional<bool> crosscheck;
  if (!at_infinity && proportional_to_H(twist_char(ch, L).c1, L) && proportional_to_H(L.K(), L)) {
    crosscheck = pEK == parabola_translate(pv, shift);
  }
  cert.geometry = Ext2Geometry{ch_EK, v_EK, Q, A, B, A2, B2, interval, phase_EK, std::nullopt, crosscheck};

  auto dominance = [&]() -> std::optional<std::string> {
    if (heart_sign_check(Q, v_EK) == HeartSign::Fails) return "E (x) K is not in the heart at Q";
    if (compare(phase_EK, interval.lo()) >= 0) return "phi_Q(E (x) K) is not below both phi_Q(A) and phi_Q(B)";
    return std::nullopt;
  };

  if (boundary_segments_intersect(A, B, A2, B2)) {
    cert.branch = Ext2Branch::SegmentsIntersect;
    std::optional<StabPoint> R;
    if (line_P == line_Q) {
      R = P;
    } else {
      PlanePoint meet = line_intersection(line_P, line_Q);
      if (meet.is_affine() && sgn(height_above_parabola(meet)) > 0) R = StabPoint(meet.x(), meet.y());
    }
    if (!R) {
      // The segments only touch on the boundary parabola: no stability
      // condition sits at the meeting point, so fall back to dominance.
      if (auto why = dominance()) return failed(std::move(cert), "segments touch on the parabola and " + *why);
      cert.branch = Ext2Branch::PhaseDominance;
      cert.verified = true;
      return cert;
    }
    cert.geometry->R = R;
    if (heart_sign_check(*R, v) == HeartSign::Fails || heart_sign_check(*R, v_EK) == HeartSign::Fails) {
      return failed(std::move(cert), "E or E (x) K is not in the heart at R");
    }
    if (phase_compare(*R, v, v_EK) != std::strong_ordering::greater) {
      return failed(std::move(cert), "phi_R(E) > phi_R(E (x) K) does not hold");
    }
    cert.verified = true;
    return cert;
  }

  cert.branch = Ext2Branch::PhaseDominance;
  if (auto why = dominance()) return failed(std::move(cert), *why);
  cert.verified = true;
  return cert;
}

Rational expected_moduli_dim(const CharVec &ch, const SurfaceLattice &L) { return 1 - euler_pairing(ch, ch, L); }

bool char_less(const CharVec &a, const CharVec &b) {
  if (a.r != b.r) return a.r < b.r;
  if (a.c1.coords != b.c1.coords) return a.c1.coords < b.c1.coords;
  return a.e < b.e;
}

}  // namespace walland
