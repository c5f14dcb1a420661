#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "walland/error.hpp"
#include "walland/stability.hpp"

using namespace walland;

namespace {

VTilde random_v(std::mt19937_64 &rng) {
  return {oracle::random_rational(rng, 4, 2), oracle::random_rational(rng, 8, 2), oracle::random_rational(rng, 8, 4)};
}

}  // namespace

TEST(Stability, StabPointRegion) {
  EXPECT_NO_THROW(StabPoint(-1, 1));
  EXPECT_THROW(StabPoint(2, 2), PreconditionError);
  EXPECT_THROW(StabPoint(0, 0), PreconditionError);
}

TEST(Stability, CentralCharge) {
  EXPECT_EQ(central_charge(StabPoint(-1, 1), VTilde{1, 0, 0}), (ChargeValue{1, 1}));
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    auto P = oracle::random_stab_point(rng);
    EXPECT_EQ(central_charge(P, VTilde{0, 0, 1}), (ChargeValue{-1, 0}));
    EXPECT_TRUE(central_charge(P, VTilde{3, 3 * P.s(), 3 * P.q()}).is_zero());
  }
}

TEST(Stability, CentralChargeLinear) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 200; ++i) {
    auto P = oracle::random_stab_point(rng);
    VTilde v = random_v(rng), w = random_v(rng);
    Rational a = oracle::random_rational(rng, 5, 3), b = oracle::random_rational(rng, 5, 3);
    ChargeValue z = central_charge(P, a * v + b * w);
    ChargeValue zv = central_charge(P, v), zw = central_charge(P, w);
    ASSERT_EQ(z.re, a * zv.re + b * zw.re);
    ASSERT_EQ(z.im, a * zv.im + b * zw.im);
  }
}

TEST(Stability, Phase) {
  StabPoint P(-1, 1);
  EXPECT_EQ(*phase(P, VTilde{0, 0, 1}).exact_fraction(), 1);
  auto p = phase(P, VTilde{1, 0, 0});
  EXPECT_EQ(*p.exact_fraction(), Rational(1, 4));
  EXPECT_DOUBLE_EQ(p.approx, 0.25);
  // re = 0, im > 0: v2 = q v0, v1 > s v0.
  EXPECT_EQ(*phase(P, VTilde{1, 0, 1}).exact_fraction(), Rational(1, 2));
  EXPECT_THROW(phase(P, VTilde{1, -1, 1}), PreconditionError);
  EXPECT_THROW(phase(StabPoint(1, 1), VTilde{1, 0, 0}), PreconditionError);
}

TEST(Stability, HeartSign) {
  EXPECT_EQ(heart_sign_check(StabPoint(5, 20), VTilde{0, 0, 1}), HeartSign::NegativeRealAxis);
  EXPECT_EQ(heart_sign_check(StabPoint(-1, 1), VTilde{1, 0, 0}), HeartSign::StrictUpper);
  EXPECT_EQ(heart_sign_check(StabPoint(1, 1), VTilde{1, 0, 0}), HeartSign::Fails);
}

TEST(Stability, PhaseCompareExamples) {
  StabPoint P(-1, 1);
  EXPECT_EQ(phase_compare(P, VTilde{1, 0, 0}, VTilde{2, 0, 0}), std::strong_ordering::equal);
  EXPECT_EQ(phase_compare(P, VTilde{0, 0, 1}, VTilde{1, 0, 0}), std::strong_ordering::greater);
  // Phase-comparison figure: v(E) = (-3, -2) with v0 = -1, v(F) = (3, -1).
  StabPoint F(Rational(1, 2), Rational(3, 2));
  VTilde vE{-1, 3, 2}, vF{1, 3, -1};
  EXPECT_EQ(phase_compare(F, vE, vF), std::strong_ordering::greater);
  EXPECT_EQ(*phase(F, vE).exact_fraction(), Rational(3, 4));
  EXPECT_EQ(*phase(F, vF).exact_fraction(), Rational(1, 4));
}

TEST(Stability, PhaseCompareAgreesWithFloat) {
  std::mt19937_64 rng(33);
  int compared = 0;
  for (int i = 0; i < 4000; ++i) {
    auto P = oracle::random_stab_point(rng);
    VTilde v = random_v(rng), w = random_v(rng);
    if (v.is_zero() || w.is_zero() || heart_sign_check(P, v) == HeartSign::Fails ||
        heart_sign_check(P, w) == HeartSign::Fails) {
      continue;
    }
    auto zv = central_charge(P, v), zw = central_charge(P, w);
    if (zv.is_zero() || zw.is_zero()) continue;
    long double pv = oracle::float_phase(to_long_double(zv.re), to_long_double(zv.im));
    long double pw = oracle::float_phase(to_long_double(zw.re), to_long_double(zw.im));
    ASSERT_GT(phase(P, v).approx, 0.0);
    ASSERT_LE(phase(P, v).approx, 1.0);
    auto c = phase_compare(P, v, w);
    if (pv - pw > 1e-9L) {
      ASSERT_EQ(c, std::strong_ordering::greater);
      ++compared;
    } else if (pw - pv > 1e-9L) {
      ASSERT_EQ(c, std::strong_ordering::less);
      ++compared;
    }
  }
  EXPECT_GT(compared, 500);
}

TEST(Stability, WallOf) {
  EXPECT_TRUE(wall_of(VTilde{1, 0, 0}, VTilde{0, 0, 1}).is_vertical());
  PlaneLine l = wall_of(VTilde{1, 0, 0}, VTilde{1, 1, Rational(1, 2)});
  EXPECT_TRUE(l.contains(PlanePoint::affine(4, 2)));
  EXPECT_THROW(wall_of(VTilde{2, 0, 0}, VTilde{1, 0, 0}), PreconditionError);
}

TEST(Stability, WallContainsPIffSamePhase) {
  std::mt19937_64 rng(34);
  int on_wall = 0;
  for (int i = 0; i < 1000; ++i) {
    auto P = oracle::random_stab_point(rng, 2);
    VTilde v = random_v(rng);
    VTilde w;
    if (i % 2 == 0) {
      // Force collinearity with P: w = a v + b (1, s, q).
      Rational a = oracle::random_rational(rng, 3, 2), b = oracle::random_rational(rng, 3, 2);
      w = a * v + b * VTilde{1, P.s(), P.q()};
    } else {
      w = random_v(rng);
    }
    if (v.is_zero() || w.is_zero() || PlanePoint::of(v) == PlanePoint::of(w)) continue;
    if (heart_sign_check(P, v) == HeartSign::Fails || heart_sign_check(P, w) == HeartSign::Fails) continue;
    PlaneLine l = wall_of(v, w);
    ASSERT_TRUE(l.contains(PlanePoint::of(v)));
    ASSERT_TRUE(l.contains(PlanePoint::of(w)));
    const bool same = phase_compare(P, v, w) == std::strong_ordering::equal;
    ASSERT_EQ(l.contains(P.plane_point()), same);
    on_wall += same;
  }
  EXPECT_GT(on_wall, 50);
}

TEST(Stability, WallsDisjointExamples) {
  auto r = walls_disjoint_above_parabola(VTilde{1, 0, 0}, VTilde{1, 1, 3}, VTilde{0, 1, 0});
  EXPECT_TRUE(r.disjoint_above_parabola);
  EXPECT_EQ(r.meet, PlanePoint::affine(0, 0));
  auto s = walls_disjoint_above_parabola(VTilde{1, -3, Rational(9, 2)}, VTilde{0, 0, 1}, VTilde{1, 0, 5});
  EXPECT_TRUE(s.disjoint_above_parabola);
  EXPECT_EQ(s.meet, PlanePoint::affine(-3, Rational(9, 2)));
  EXPECT_THROW(walls_disjoint_above_parabola(VTilde{1, 0, 1}, VTilde{0, 0, 1}, VTilde{1, 1, 0}), PreconditionError);
}

TEST(Stability, LiftedPhaseTransport) {
  // Rotating (1, 0+) counterclockwise past the negative real axis moves to sheet 1.
  LiftedPhase p = LiftedPhase::base(QuadCharge(ChargeValue{1, 1}));
  EXPECT_EQ(p.sheet(), 0);
  LiftedPhase q = p.transported(QuadCharge(ChargeValue{-1, 1})).transported(QuadCharge(ChargeValue{-1, -1}));
  EXPECT_EQ(q.sheet(), 1);
  EXPECT_NEAR(static_cast<double>(q.approx()), 1.25, 1e-12);
  EXPECT_EQ(compare(p, q), -1);
  LiftedPhase r = LiftedPhase::base(QuadCharge(ChargeValue{1, -1}));
  EXPECT_EQ(r.sheet(), -1);
  EXPECT_NEAR(static_cast<double>(r.approx()), -0.25, 1e-12);
}
