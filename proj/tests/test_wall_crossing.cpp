#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "walland/error.hpp"
#include "walland/wall_crossing.hpp"

using namespace walland;

namespace {

SurfaceLattice p2() { return SurfaceLattice({"h"}, {{1}}, DivisorClass({1}), DivisorClass({0}), DivisorClass({-3}), 1); }

CharVec ch(const Rational &r, const Rational &c, const Rational &e) { return {r, DivisorClass({c}), e}; }

QuadPoint qp(const Rational &x, const Rational &y) { return {QuadNum(x), QuadNum(y)}; }

// Integral P^2 character with nonnegative discriminant in the heart at P.
std::optional<CharVec> random_heart_char(std::mt19937_64 &rng, const StabPoint &P, long rank_max = 3) {
  auto L = p2();
  for (int attempt = 0; attempt < 200; ++attempt) {
    long r = std::uniform_int_distribution<long>(-1, rank_max)(rng);
    long c = std::uniform_int_distribution<long>(-5, 5)(rng);
    long k = std::uniform_int_distribution<long>(-4, 2)(rng);
    CharVec x = ch(r, c, frac(c * c, 2) + k);
    VTilde v = vtilde(x, L);
    if (v.is_zero() || sgn(discriminant(v)) < 0) continue;
    if (heart_sign_check(P, v) == HeartSign::Fails) continue;
    return x;
  }
  return std::nullopt;
}

bool same_ray_split(const StabPoint &R, const VTilde &v, const VTilde &w) {
  auto zv = central_charge(R, v), zw = central_charge(R, w), zr = central_charge(R, v - w);
  return cross_sign(zv, zw) == 0 && dot_sign(zw, zv) > 0 && dot_sign(zr, zv) > 0;
}

}  // namespace

TEST(PhaseBounds, BoundaryPoints) {
  auto [A, B] = boundary_points(PlaneLine(0, 1, 0));
  EXPECT_FALSE(A.at_infinity);
  EXPECT_EQ(A.point, qp(0, 0));
  EXPECT_TRUE(B.at_infinity);
  EXPECT_THROW(boundary_points(PlaneLine(1, 0, 1)), PreconditionError);  // y = -1
}

TEST(PhaseBounds, DegenerateBAtCharacter) {
  StabPoint P(-1, 1);
  auto iv = phase_bound_interval(P, P, VTilde{1, 0, 0});
  EXPECT_EQ(iv.A.point, qp(-2, 2));
  EXPECT_EQ(iv.B.point, qp(0, 0));
  ASSERT_TRUE(iv.endpoint_at_character);
  EXPECT_EQ(*iv.endpoint_at_character, 'B');
  EXPECT_TRUE(iv.contains(iv.phase_v_at_P));
}

TEST(PhaseBounds, IrrationalEndpoints) {
  StabPoint P(0, 1), Q(1, 2);
  VTilde v{1, -1, -1};
  auto iv = phase_bound_interval(P, Q, v);
  auto want = oracle::solve_line_parabola(2, 1, 0);
  ASSERT_EQ(want.xs.size(), 2u);
  EXPECT_EQ(iv.A.point.x, want.xs[0]);
  EXPECT_EQ(iv.A.point.y, want.ys[0]);
  EXPECT_EQ(iv.B.point.x, want.xs[1]);
  EXPECT_EQ(iv.B.point.y, want.ys[1]);
  EXPECT_EQ(iv.A.point.x, QuadNum(2, -1, 6));
  EXPECT_EQ(iv.B.point.y, QuadNum(5, 2, 6));
  // v is not in the heart at P: its base phase sits on sheet -1.
  EXPECT_EQ(iv.phase_v_at_P.sheet(), -1);
  EXPECT_LE(compare(iv.lo(), iv.hi()), 0);
}

TEST(PhaseBounds, ZeroDeformationContainsOwnPhase) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    auto P = oracle::random_stab_point(rng);
    auto c = random_heart_char(rng, P);
    if (!c) continue;
    VTilde v = vtilde(*c, p2());
    if (PlanePoint::of(v) == P.plane_point()) continue;
    auto iv = phase_bound_interval(P, P, v);
    ASSERT_EQ(compare(iv.phase_A, iv.phase_v_at_P), 0);
    ASSERT_EQ(compare(iv.phase_B, iv.phase_v_at_P), 0);
  }
}

TEST(CandidateWalls, ZeroBoundsEmpty) {
  Box box{-2, 2, 0, 4};
  EXPECT_TRUE(enumerate_candidate_walls(ch(1, 0, 0), p2(), box, {0, 0}).empty());
}

TEST(CandidateWalls, ContainsHalfSlopeWall) {
  Box box{0, 1, 0, 1};
  auto walls = enumerate_candidate_walls(ch(1, 0, 0), p2(), box, {1, 1});
  PlaneLine want = line_through(PlanePoint::affine(0, 0), PlanePoint::affine(1, Rational(1, 2)));
  bool found = false;
  for (const auto &w : walls) {
    if (w.wall == want) {
      for (const auto &wit : w.witnesses) found |= wit.ch == ch(1, 1, Rational(1, 2));
    }
    for (const auto &wit : w.witnesses) {
      EXPECT_TRUE(w.wall.contains(PlanePoint::of(wit.v)));
      EXPECT_GE(sgn(discriminant(wit.v)), 0);
      EXPECT_GE(sgn(discriminant(VTilde{1, 0, 0} - wit.v)), 0);
    }
  }
  EXPECT_TRUE(found);
}

TEST(CandidateWalls, SkyscraperWallsAreVertical) {
  Box box{-2, 2, 0, 4};
  auto walls = enumerate_candidate_walls(ch(0, 0, 1), p2(), box, {1, 1});
  EXPECT_FALSE(walls.empty());
  for (const auto &w : walls) {
    EXPECT_TRUE(w.wall.is_vertical());
    EXPECT_TRUE(w.wall.contains(PlanePoint(0, 0, 1)));
  }
}

TEST(CandidateWalls, CompleteAgainstBruteForce) {
  // Every split that is on v's ray where the wall crosses the segment must be
  // enumerated, whatever its ch2.
  std::mt19937_64 rng(42);
  auto L = p2();
  const long R = 2, C = 3;
  for (int trial = 0; trial < 25; ++trial) {
    auto P = oracle::random_stab_point(rng, 2), Q = oracle::random_stab_point(rng, 2);
    if (P == Q) continue;
    auto c = random_heart_char(rng, P, 2);
    if (!c) continue;
    VTilde v = vtilde(*c, L);
    auto walls = enumerate_candidate_walls(*c, L, Segment{P, Q}, {R, C});
    std::set<std::vector<Rational>> found;
    for (const auto &w : walls) {
      for (const auto &wit : w.witnesses) found.insert({wit.ch.r, wit.ch.c1.coords[0], wit.ch.e});
    }
    for (long r = -R; r <= R; ++r) {
      for (long cc = -C; cc <= C; ++cc) {
        for (long k = -80; k <= 80; ++k) {
          CharVec w = ch(r, cc, frac(cc * cc, 2) + k);
          VTilde vw = vtilde(w, L);
          if (vw.is_zero() || PlanePoint::of(vw) == PlanePoint::of(v)) continue;
          if (sgn(discriminant(vw)) < 0 || sgn(discriminant(v - vw)) < 0) continue;
          PlaneLine wall = line_through(PlanePoint::of(v), PlanePoint::of(vw));
          Rational fP = wall.eval(P.plane_point()), fQ = wall.eval(Q.plane_point());
          if (sgn(fP) * sgn(fQ) >= 0 || fP == fQ) continue;
          Rational lambda = fP / (fP - fQ);
          StabPoint Rpt(P.s() + lambda * (Q.s() - P.s()), P.q() + lambda * (Q.q() - P.q()));
          if (!same_ray_split(Rpt, v, vw)) continue;
          ASSERT_TRUE(found.count({w.r, w.c1.coords[0], w.e}))
              << "missing witness r=" << r << " c=" << cc << " k=" << k;
        }
      }
    }
  }
}

TEST(Simulation, NoWallsSingleLeaf) {
  auto L = p2();
  StabPoint P(-1, 1);
  auto tree = simulate_destabilization_paths(P, P, ch(1, 0, 0), L, {{3, 5}, 2, 1000});
  EXPECT_EQ(tree.node_count, 1u);
  EXPECT_TRUE(tree.root.events.empty());
  auto none = simulate_destabilization_paths(P, StabPoint(-1, 2), ch(1, 0, 0), L, {{0, 0}, 2, 1000});
  EXPECT_TRUE(none.root.events.empty());
}

TEST(Simulation, SegmentAlongWallIsNotCrossed) {
  // P and Q both on the vertical wall s = 0 of O.
  auto L = p2();
  auto tree = simulate_destabilization_paths(StabPoint(0, 1), StabPoint(0, 3), ch(1, 0, 0), L, {{2, 3}, 2, 1000});
  for (const auto &e : tree.root.events) EXPECT_FALSE(e.wall.is_vertical());
}

TEST(Simulation, IdealSheafExample) {
  // The wall of O(-1) is y = -3x/2 - 1, above the parabola for -2 < x < -1.
  auto L = p2();
  StabPoint P(Rational(-3, 2), 3), Q(Rational(-3, 2), Rational(19, 16));
  CharVec v = ch(1, 0, -1);
  auto tree = simulate_destabilization_paths(P, Q, v, L, {{3, 5}, 2, 20000});
  EXPECT_FALSE(tree.root.events.empty());
  auto iv = phase_bound_interval(P, Q, vtilde(v, L));
  for (const auto *node : tree.nodes()) {
    EXPECT_TRUE(iv.contains(node->phase_at_Q));
    for (const auto &e : node->events) {
      ASSERT_EQ(e.factors.size(), 2u);
      EXPECT_EQ(e.factors[0].ch + e.factors[1].ch, node->ch);
      EXPECT_GT(e.lambda, 0);
      EXPECT_LT(e.lambda, 1);
      EXPECT_TRUE(same_ray_split(e.R, node->v, e.factors[0].v));
    }
  }
}

TEST(Simulation, LeafPhasesInsideInterval) {
  std::mt19937_64 rng(43);
  auto L = p2();
  int trees = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto P = oracle::random_stab_point(rng, 2), Q = oracle::random_stab_point(rng, 2);
    auto c = random_heart_char(rng, P);
    if (!c) continue;
    VTilde v = vtilde(*c, L);
    if (PlanePoint::of(v) == P.plane_point()) continue;
    auto tree = simulate_destabilization_paths(P, Q, *c, L, {{2, 3}, 2, 5000});
    auto iv = phase_bound_interval(P, Q, v);
    for (const auto *node : tree.nodes()) {
      ASSERT_TRUE(iv.contains(node->phase_at_Q)) << "trial " << trial;
    }
    ++trees;
  }
  EXPECT_GT(trees, 20);
}

TEST(Simulation, NodeCapTruncates) {
  auto L = p2();
  StabPoint P(Rational(-3, 2), 3), Q(Rational(-3, 2), Rational(19, 16));
  auto tree = simulate_destabilization_paths(P, Q, ch(1, 0, -1), L, {{3, 5}, 4, 2});
  EXPECT_LE(tree.node_count, 2u);
  EXPECT_TRUE(tree.truncated);
  EXPECT_THROW(simulate_destabilization_paths(P, Q, ch(1, 0, 0), L, {{-1, 2}, 2, 10}), PreconditionError);
}

TEST(Ext2, ProjectivePlaneStructureSheaf) {
  auto L = p2();
  auto cert = ext2_vanishing_certificate(StabPoint(-1, 1), ch(1, 0, 0), L);
  ASSERT_TRUE(cert.verified) << cert.failure;
  EXPECT_EQ(cert.branch, Ext2Branch::PhaseDominance);
  ASSERT_TRUE(cert.geometry);
  const auto &g = *cert.geometry;
  EXPECT_EQ(g.Q, StabPoint(-4, Rational(17, 2)));
  EXPECT_EQ(PlanePoint::of(g.v_EK), PlanePoint::affine(-3, Rational(9, 2)));
  // Lines y = -x through v(E), P and y = -4x - 15/2 through v(E (x) K), Q.
  auto lineP = oracle::solve_line_parabola(-1, 0, 0);
  auto lineQ = oracle::solve_line_parabola(-4, Rational(-15, 2), 0);
  ASSERT_EQ(lineP.xs.size(), 2u);
  ASSERT_EQ(lineQ.xs.size(), 2u);
  EXPECT_EQ(g.A.point, (QuadPoint{lineP.xs[0], lineP.ys[0]}));
  EXPECT_EQ(g.B.point, (QuadPoint{lineP.xs[1], lineP.ys[1]}));
  EXPECT_EQ(g.A_prime.point, (QuadPoint{lineQ.xs[0], lineQ.ys[0]}));
  EXPECT_EQ(g.B_prime.point, (QuadPoint{lineQ.xs[1], lineQ.ys[1]}));
  EXPECT_EQ(g.A.point, qp(-2, 2));
  EXPECT_EQ(g.B.point, qp(0, 0));
  EXPECT_EQ(g.A_prime.point, qp(-5, Rational(25, 2)));
  EXPECT_EQ(g.B_prime.point, qp(-3, Rational(9, 2)));
  EXPECT_EQ(compare(g.phase_EK_at_Q, g.interval.lo()), -1);
  ASSERT_TRUE(g.translation_crosscheck);
  EXPECT_TRUE(*g.translation_crosscheck);
}

TEST(Ext2, RequiresPoissonMode) {
  SurfaceLattice k3({"h"}, {{2}}, DivisorClass({1}), DivisorClass({0}), DivisorClass({0}), 2);
  EXPECT_THROW(ext2_vanishing_certificate(StabPoint(-1, 1), ch(1, 0, 0), k3), PreconditionError);
}

TEST(Ext2, RightSideUsesDualReduction) {
  auto L = p2();
  // O[1] seen from the right of its plane point.
  auto cert = ext2_vanishing_certificate(StabPoint(1, 1), ch(-1, 0, 0), L);
  EXPECT_EQ(cert.branch, Ext2Branch::DualReduction);
  ASSERT_EQ(cert.inner.size(), 1u);
  EXPECT_NE(cert.inner[0].branch, Ext2Branch::DualReduction);
  EXPECT_TRUE(cert.inner[0].geometry);
  EXPECT_TRUE(cert.verified) << cert.inner[0].failure;
}

TEST(Ext2, EqualAbscissaUsesNearbyPoint) {
  auto L = p2();
  // Shifted ideal sheaf: charge on the negative real axis.
  auto cert = ext2_vanishing_certificate(StabPoint(0, 1), ch(-1, 0, 1), L);
  EXPECT_EQ(cert.branch, Ext2Branch::NearbyStability);
  ASSERT_TRUE(cert.perturbed_P);
  EXPECT_NE(cert.perturbed_P->s(), 0);
  EXPECT_TRUE(cert.verified) << cert.inner[0].failure;
}

TEST(Ext2, DualReductionIsInvolution) {
  std::mt19937_64 rng(44);
  SurfaceLattice L({"h", "e"}, {{1, 0}, {0, -1}}, DivisorClass({1, 0}), DivisorClass({0, Rational(1, 3)}),
                   DivisorClass({-3, 1}), 1);
  for (int i = 0; i < 100; ++i) {
    auto P = oracle::random_stab_point(rng);
    CharVec c{oracle::random_rational(rng, 4, 2),
              DivisorClass({oracle::random_rational(rng, 6, 2), oracle::random_rational(rng, 6, 2)}),
              oracle::random_rational(rng, 8, 4)};
    auto once = dual_reduction(c, L, P);
    auto twice = dual_reduction(once.ch, once.lattice, once.P);
    ASSERT_EQ(twice.ch, c);
    ASSERT_TRUE(twice.lattice == L);
    ASSERT_EQ(twice.P, P);
  }
}

TEST(Ext2, NeverFailsForPositiveRankOnProjectivePlane) {
  std::mt19937_64 rng(45);
  auto L = p2();
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    auto P = oracle::random_stab_point(rng);
    auto c = random_heart_char(rng, P);
    if (!c || sgn(c->r) == 0) continue;
    auto cert = ext2_vanishing_certificate(P, *c, L);
    ASSERT_TRUE(cert.verified) << "r=" << c->r << " c=" << c->c1.coords[0] << " e=" << c->e << " P=(" << P.s()
                               << "," << P.q() << "): " << cert.failure;
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(Ext2, SkyscraperGivesFailurePayload) {
  // Hom(k(x), k(x) (x) K) is nonzero, so no certificate can exist.
  auto cert = ext2_vanishing_certificate(StabPoint(-1, 1), ch(0, 0, 1), p2());
  EXPECT_FALSE(cert.verified);
  EXPECT_FALSE(cert.failure.empty());
}
