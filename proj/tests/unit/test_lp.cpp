#include <gtest/gtest.h>

#include "polyescape/lp.hpp"
#include "support.hpp"

using namespace polyescape;

namespace {

ConjunctiveSystem<Rational> rsys(std::size_t n) {
  ConjunctiveSystem<Rational> s;
  s.variables = n;
  return s;
}

}  // namespace

TEST(Feasible, Contradiction) {
  auto s = rsys(1);
  s.add({1}, Relation::Greater);
  s.add({1}, Relation::Equal);
  EXPECT_FALSE(feasible(s).feasible);
  EXPECT_FALSE(fm_eliminate(s).feasible);
}

TEST(Feasible, Interval) {
  auto s = rsys(1);
  s.add({1}, Relation::GreaterEqual, 1);
  s.add({-1}, Relation::GreaterEqual, -2);
  for (const auto& r : {feasible(s), fm_eliminate(s)}) {
    ASSERT_TRUE(r.feasible);
    EXPECT_TRUE(satisfies(s, r.point));
    EXPECT_GE(r.point[0], 1);
    EXPECT_LE(r.point[0], 2);
  }
}

TEST(Feasible, AlgebraicCoefficient) {
  ConjunctiveSystem<AlgebraicNumber> s;
  s.variables = 1;
  AlgebraicNumber s2 = isolate_roots(P({-2, 0, 1})).back();
  s.add({s2}, Relation::Greater, AlgebraicNumber(1));
  s.add({AlgebraicNumber(-1)}, Relation::Greater, AlgebraicNumber(-1));
  for (const auto& r : {feasible(s), fm_eliminate(s)}) {
    ASSERT_TRUE(r.feasible);
    EXPECT_TRUE(satisfies(s, r.point));
  }
  std::vector<AlgebraicNumber> three_quarters{AlgebraicNumber(Q("3/4"))};
  EXPECT_TRUE(satisfies(s, three_quarters));
}

TEST(Feasible, Substitution) {
  auto s = rsys(2);
  s.add({1, 1}, Relation::Equal, 1);
  s.add({1, 0}, Relation::GreaterEqual);
  s.add({0, 1}, Relation::GreaterEqual);
  s.add({1, 0}, Relation::Greater, 1);
  EXPECT_FALSE(feasible(s).feasible);
  EXPECT_FALSE(fm_eliminate(s).feasible);
}

TEST(Feasible, Empty) {
  auto s = rsys(3);
  auto r = fm_eliminate(s);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.point.size(), 3u);
  EXPECT_TRUE(feasible(s).feasible);
}

TEST(Feasible, StrictUnbounded) {
  auto s = rsys(2);
  s.add({1, -1}, Relation::Greater);
  s.add({0, 1}, Relation::Greater, 5);
  auto r = feasible(s);
  ASSERT_TRUE(r.feasible);
  EXPECT_TRUE(satisfies(s, r.point));
}

TEST(Feasible, OpenTriangleIsNonempty) {
  auto s = rsys(2);
  s.add({1, 0}, Relation::Greater);
  s.add({0, 1}, Relation::Greater);
  s.add({-1, -1}, Relation::Greater, -1);
  EXPECT_TRUE(feasible(s).feasible);
  s.add({1, 1}, Relation::GreaterEqual, 1);
  EXPECT_FALSE(feasible(s).feasible);
  EXPECT_FALSE(fm_eliminate(s).feasible);
}

TEST(FmEliminate, ScaleLimit) {
  auto s = rsys(7);
  EXPECT_THROW(fm_eliminate(s), ScaleLimit);
  EXPECT_NO_THROW(fm_eliminate(s, FmLimits{8, 20, 20000}));
}

TEST(Feasible, AlgebraicCoefficientsAcrossFields) {
  AlgebraicNumber s2 = isolate_roots(P({-2, 0, 1})).back();
  AlgebraicNumber s3 = isolate_roots(P({-3, 0, 1})).back();
  AlgebraicNumber c2 = isolate_roots(P({-2, 0, 0, 1})).front();
  ASSERT_TRUE(c2.is_real());
  ConjunctiveSystem<AlgebraicNumber> s;
  s.variables = 2;
  // sqrt2 x + sqrt3 y > cbrt2, x - y >= -sqrt3, -x >= -1
  s.add({s2, s3}, Relation::Greater, c2);
  s.add({1, -1}, Relation::GreaterEqual, -s3);
  s.add({-1, 0}, Relation::GreaterEqual, -1);
  auto a = feasible(s);
  ASSERT_TRUE(a.feasible);
  EXPECT_TRUE(satisfies(s, a.point));
  auto b = fm_eliminate(s);
  ASSERT_TRUE(b.feasible);
  EXPECT_TRUE(satisfies(s, b.point));
  // sqrt2 x = sqrt3 with x <= 1 is empty
  s.add({s2, 0}, Relation::Equal, s3);
  EXPECT_FALSE(feasible(s).feasible);
  EXPECT_FALSE(fm_eliminate(s).feasible);
}

TEST(FieldNumber, SignAndArithmetic) {
  AlgebraicNumber s2 = isolate_roots(P({-2, 0, 1})).back();
  AlgebraicNumber s3 = isolate_roots(P({-3, 0, 1})).back();
  auto f = common_field({s2, s3});
  ASSERT_TRUE(f);
  EXPECT_EQ(f->field().degree(), 4u);
  FieldNumber a(f, *s2.element_in(*f)), b(f, *s3.element_in(*f));
  EXPECT_EQ((a * a).rational_value(), 2);
  EXPECT_TRUE((a * a).is_rational());
  EXPECT_EQ((a - b).sign(), -1);
  // 5 - 2 sqrt6 = (sqrt3 - sqrt2)^2 > 0, about 0.101
  FieldNumber d = FieldNumber(5) - FieldNumber(2) * a * b;
  EXPECT_EQ(d.sign(), 1);
  auto [lo, hi] = d.interval(Rational(1, 1000000));
  EXPECT_LE(lo, hi);
  EXPECT_NEAR(to_double(lo), 5 - 2 * std::sqrt(6.0), 1e-6);
  EXPECT_EQ((a / b * b - a).is_zero(), true);
  EXPECT_EQ(d.value(), AlgebraicNumber(5) - AlgebraicNumber(2) * s2 * s3);
}
