#include <gtest/gtest.h>

#include "sculi/curve.hpp"
#include "sculi/scalar.hpp"

using namespace sculi;
using namespace sculi::curve;
using field::Gf16;
using field::Gf233;

namespace {

Scalar scalar_of(const BigInt& v) { return Scalar(v); }

}  // namespace

TEST(B233, BasePointIsOnCurve) {
  const auto& c = b233();
  EXPECT_TRUE(is_on_curve(c.base_point, c));
  EXPECT_TRUE(is_on_curve(AffinePoint<Gf233>::at_infinity(), c));
  auto bad = c.base_point;
  bad.y = bad.y + Gf233::one();
  EXPECT_FALSE(is_on_curve(bad, c));
}

TEST(B233, OrderAnnihilatesBasePoint) {
  const auto& c = b233();
  const Scalar n(c.order);
  EXPECT_TRUE(double_and_add_kp(n, c.base_point, c).infinity);
  EXPECT_TRUE(ladder_kp(n, c.base_point, c).infinity);
}

TEST(B233, SmallMultiples) {
  const auto& c = b233();
  const auto& g = c.base_point;
  EXPECT_EQ(ladder_kp(Scalar::from_uint(1), g, c), g);
  EXPECT_EQ(double_and_add_kp(Scalar::from_uint(1), g, c), g);
  EXPECT_EQ(ladder_kp(Scalar::from_uint(2), g, c), affine_double(g, c));
  EXPECT_EQ(ladder_kp(Scalar::from_uint(3), g, c), affine_add(affine_double(g, c), g, c));
  EXPECT_TRUE(ladder_kp(Scalar{}, g, c).infinity);
}

TEST(B233, ComplementaryScalarsGiveNegatedPoints) {
  const auto& c = b233();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scalar k = Scalar::random_below(c.order, seed);
    const Scalar k2(c.order - k.value());
    const auto p = double_and_add_kp(k, c.base_point, c);
    const auto q = double_and_add_kp(k2, c.base_point, c);
    EXPECT_EQ(p.x, q.x);
    EXPECT_EQ(q.y, p.x + p.y);
    EXPECT_EQ(ladder_kp(k2, c.base_point, c), q);
  }
}

TEST(B233, OrderMinusOneGivesNegation) {
  const auto& c = b233();
  const Scalar k(c.order - 1);
  EXPECT_EQ(ladder_kp(k, c.base_point, c), negate(c.base_point));
}

TEST(B233, LadderMatchesDoubleAndAdd) {
  const auto& c = b233();
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    const Scalar k = Scalar::random_below(c.order, seed);
    const auto p = ladder_kp(k, c.base_point, c);
    ASSERT_EQ(p, double_and_add_kp(k, c.base_point, c)) << k.to_hex();
    ASSERT_TRUE(is_on_curve(p, c));
  }
}

TEST(B233, ZeroXBaseIsDegenerate) {
  const auto& c = b233();
  // (0, sqrt(b)) is the point of order 2.
  Gf233 s = c.b;
  for (int i = 0; i < 232; ++i) s = sqr(s);
  const AffinePoint<Gf233> t{Gf233::zero(), s, false};
  ASSERT_TRUE(is_on_curve(t, c));
  EXPECT_THROW(ladder_kp(Scalar::from_uint(5), t, c), DegenerateInput);
}

TEST(LadderStep, OpKindsDoNotDependOnTheBit) {
  const auto& c = b233();
  const auto s = ladder_init(c.base_point.x, c.b);
  std::vector<FieldOp> ops0, ops1;
  ladder_step(s, 0, c.base_point.x, c.b, &ops0);
  ladder_step(s, 1, c.base_point.x, c.b, &ops1);
  EXPECT_EQ(ops0, ops1);
  EXPECT_EQ(std::count(ops0.begin(), ops0.end(), FieldOp::Mul), 6);
}

TEST(LadderStep, BitsAreMirrorImages) {
  const auto& c = b233();
  const Gf233 u = Gf233::from_hex("1234567"), v = Gf233::from_hex("abcdef");
  const LDPair<Gf233> sym{u, v, u, v};
  const auto r0 = ladder_step(sym, 0, c.base_point.x, c.b);
  const auto r1 = ladder_step(sym, 1, c.base_point.x, c.b);
  EXPECT_EQ(r0.x1, r1.x2);
  EXPECT_EQ(r0.z1, r1.z2);
  EXPECT_EQ(r0.x2, r1.x1);
  EXPECT_EQ(r0.z2, r1.z1);
}

TEST(LadderStep, StepwiseRunMatchesInstrumentedLadder) {
  const auto& c = b233();
  const Scalar k = Scalar::random_with_length(233, 9);
  std::vector<LDPair<Gf233>> states;
  ladder_kp(k, c.base_point, c, &states);
  ASSERT_EQ(states.size(), 232u);
  auto s = ladder_init(c.base_point.x, c.b);
  const auto bits = k.processed_bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    s = ladder_step(s, bits[i], c.base_point.x, c.b);
    ASSERT_EQ(s, states[i]) << "bit " << i;
  }
}

TEST(ToyCurve, LadderMatchesDoubleAndAddExhaustively) {
  const auto& c = toy_curve();
  ASSERT_TRUE(is_on_curve(c.base_point, c));
  const auto points = enumerate_points(c.a, c.b);
  EXPECT_EQ(BigInt(points.size() + 1), c.order * c.cofactor);
  for (const auto& p : points) {
    if (p.x.is_zero()) continue;
    const BigInt ord = point_order(p, c);
    for (BigInt k = 1; k <= ord; ++k) {
      const auto expect = double_and_add_kp(scalar_of(k), p, c);
      ASSERT_EQ(ladder_kp(scalar_of(k), p, c), expect) << to_string(p) << " k=" << k;
    }
    EXPECT_TRUE(ladder_kp(scalar_of(ord), p, c).infinity);
  }
}

TEST(ToyCurve, BasePointHasMaximalOrder) {
  const auto& c = toy_curve();
  for (const auto& p : enumerate_points(c.a, c.b)) EXPECT_LE(point_order(p, c), c.order);
}

TEST(PointText, RoundTrip) {
  const auto& g = b233().base_point;
  EXPECT_EQ(point_from_string<Gf233>(to_string(g)), g);
  EXPECT_TRUE(point_from_string<Gf233>("INF").infinity);
  EXPECT_THROW(point_from_string<Gf233>("12"), std::invalid_argument);
}

TEST(Scalar, ProcessedLengthOf233BitScalar) {
  const Scalar k = Scalar::random_with_length(233, 42);
  EXPECT_EQ(k.bit_length(), 233u);
  EXPECT_EQ(k.processed_length(), 232u);
  EXPECT_EQ(k.bits()[0], 1);
}

TEST(Scalar, HexAndBitsRoundTrip) {
  const Scalar k = Scalar::from_hex("0x00b5");
  EXPECT_EQ(k.to_hex(), "b5");
  EXPECT_EQ(k.bit_length(), 8u);
  EXPECT_EQ(Scalar::from_bits(k.bits()), k);
  EXPECT_EQ(Scalar{}.to_hex(), "0");
  EXPECT_THROW(Scalar::from_hex("zz"), std::invalid_argument);
}

TEST(Scalar, RandomBelowStaysInRange) {
  const BigInt bound = 1000;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto v = Scalar::random_below(bound, s).value();
    EXPECT_GE(v, 1);
    EXPECT_LT(v, bound);
  }
  EXPECT_EQ(Scalar::random_with_length(233, 3), Scalar::random_with_length(233, 3));
}
