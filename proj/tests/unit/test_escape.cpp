#include <gtest/gtest.h>

#include "polyescape/escape.hpp"
#include "support.hpp"

using namespace polyescape;

namespace {

EscapeInstance growth() { return nonstrict(M({{1}}), M({{1}}), V({1})); }
EscapeInstance rotation_x1_ge_1() { return nonstrict(M({{0, 1}, {-1, 0}}), M({{1, 0}}), V({1})); }

}  // namespace

TEST(Homogenize, AffineStrict) {
  EscapeInstance inst;
  inst.dimension = 1;
  inst.A = M({{2}});
  inst.a = V({1});
  inst.strict_B = M({{1}});
  inst.strict_b = V({3});
  inst.nonstrict_B = RationalMatrix(0, 1);
  auto h = homogenize(inst);
  EXPECT_EQ(h.A, M({{2, 1}, {0, 0}}));
  EXPECT_EQ(h.strict_B, M({{1, -3}, {0, 1}}));
  EXPECT_EQ(h.nonstrict_B.rows(), 0u);
}

TEST(Homogenize, LinearEmbeds) {
  auto h = homogenize(EscapeInstance::linear(M({{1, 2}, {3, 4}}), M({{1, 0}}), V({0}), RationalMatrix(0, 2), {}));
  EXPECT_EQ(h.A, M({{1, 2, 0}, {3, 4, 0}, {0, 0, 0}}));
  EXPECT_EQ(h.strict_B, M({{1, 0, 0}, {0, 0, 1}}));
}

TEST(Homogenize, RotationRow) {
  auto h = homogenize(rotation_x1_ge_1());
  EXPECT_EQ(h.nonstrict_B, M({{1, 0, -1}}));
  EXPECT_EQ(h.relation(h.row_count() - 1), Relation::GreaterEqual);
}

TEST(Members, GrowthRows) {
  EscapeContext ctx(growth());
  // row 0 is y > 0, row 1 is x - y >= 0
  auto y = per_constraint_members(ctx, 0);
  ASSERT_EQ(y.members.size(), 1u);
  EXPECT_EQ(y.complex_equalities, 0u);
  ASSERT_TRUE(y.members[0].dominant);
  EXPECT_EQ(y.members[0].dominant->eta, AlgebraicNumber(0));

  auto x = per_constraint_members(ctx, 1);
  ASSERT_EQ(x.members.size(), 3u);
  EXPECT_EQ(x.members[0].dominant->eta, AlgebraicNumber(1));
  EXPECT_TRUE(x.members[0].zeroed.empty());
  EXPECT_EQ(x.members[1].dominant->eta, AlgebraicNumber(0));
  ASSERT_EQ(x.members[1].zeroed.size(), 1u);
  EXPECT_TRUE(x.members[2].all_zero);
  EXPECT_EQ(x.members[2].zeroed.size(), 2u);
}

TEST(Members, RotationRow) {
  EscapeContext ctx(rotation_x1_ge_1());
  auto m = per_constraint_members(ctx, 1);
  EXPECT_GE(m.complex_equalities, 2u);
  ASSERT_EQ(m.members.size(), 2u);
  EXPECT_EQ(m.members[0].dominant->eta, AlgebraicNumber(0));
  EXPECT_TRUE(m.members[1].all_zero);
  // both members force x1 = x2 = 0
  std::vector<AlgebraicNumber> p{AlgebraicNumber(0), AlgebraicNumber(0), AlgebraicNumber(-1)};
  EXPECT_TRUE(satisfies(m.members[0].system, p));
  std::vector<AlgebraicNumber> q{AlgebraicNumber(1), AlgebraicNumber(0), AlgebraicNumber(-1)};
  EXPECT_FALSE(satisfies(m.members[0].system, q));
}

TEST(Decide, Growth) {
  auto v = decide_escape(growth());
  EXPECT_EQ(v.outcome, Outcome::TrappedExists);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->point[0], AlgebraicNumber(1));
  EXPECT_TRUE(verify_witness(v.witness->point, growth()).accepted);
}

TEST(Decide, Rotation) {
  EXPECT_EQ(decide_escape(rotation_x1_ge_1()).outcome, Outcome::AllEscape);
}

TEST(Decide, ZeroDynamics) {
  auto inst = nonstrict(M({{0}}), M({{1}}), V({0}));
  auto v = decide_escape(inst);
  EXPECT_EQ(v.outcome, Outcome::TrappedExists);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(verify_witness(v.witness->point, inst).accepted);
  EXPECT_TRUE(verify_witness(V({0}), inst).accepted);
}

TEST(Decide, Decay) {
  EXPECT_EQ(decide_escape(nonstrict(M({{-1}}), M({{1}}), V({1}))).outcome, Outcome::AllEscape);
}

TEST(Decide, AffineStrict) {
  EscapeInstance inst;
  inst.dimension = 1;
  inst.A = M({{2}});
  inst.a = V({1});
  inst.strict_B = M({{1}});
  inst.strict_b = V({3});
  inst.nonstrict_B = RationalMatrix(0, 1);
  auto v = decide_escape(inst);
  EXPECT_EQ(v.outcome, Outcome::TrappedExists);
  EXPECT_TRUE(verify_witness(v.witness->point, inst).accepted);
}

TEST(Decide, ResourceLimit) {
  DecideOptions opt;
  opt.max_branches = 1;
  auto inst = nonstrict(M({{1, 0}, {0, -1}}), M({{1, 0}, {0, 1}}), V({1, 0}));
  EXPECT_THROW(decide_escape(inst, opt), ResourceLimitExceeded);
}

TEST(VerifyWitness, Examples) {
  EXPECT_TRUE(verify_witness(V({1}), growth()).accepted);
  EXPECT_FALSE(verify_witness(V({5}), nonstrict(M({{-1}}), M({{1}}), V({1}))).accepted);
  auto r = verify_witness(V({1, 0}), rotation_x1_ge_1());
  EXPECT_FALSE(r.accepted);
  EXPECT_FALSE(r.reason.empty());
  auto origin = nonstrict(M({{0, 1}, {-1, 0}}), M({{1, 0}}), V({0}));
  EXPECT_TRUE(verify_witness(V({0, 0}), origin).accepted);
}

TEST(Instance, Validation) {
  EscapeInstance bad = growth();
  bad.nonstrict_b = V({1, 2});
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}
