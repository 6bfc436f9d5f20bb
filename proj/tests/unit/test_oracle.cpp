#include <gtest/gtest.h>

#include <cmath>

#include "polyescape/oracle.hpp"
#include "support.hpp"

using namespace polyescape;

namespace {

EscapeInstance rotation_x1_ge_1() { return nonstrict(M({{0, 1}, {-1, 0}}), M({{1, 0}}), V({1})); }

}  // namespace

TEST(Simulate, Flows) {
  auto r = flow(M({{0, 1}, {-1, 0}}), {1, 0}, M_PI / 2);
  EXPECT_NEAR(r[0], 0, 1e-9);
  EXPECT_NEAR(r[1], -1, 1e-9);
  auto e = flow(M({{1}}), {1}, 1);
  EXPECT_NEAR(e[0], std::exp(1.0), 1e-9);
  auto t = simulate(M({{0, 0}, {0, 0}}), {3, -2}, 5, 11);
  ASSERT_EQ(t.times.size(), 11u);
  EXPECT_EQ(t.times.front(), 0);
  for (const auto& p : t.points) {
    EXPECT_DOUBLE_EQ(p[0], 3);
    EXPECT_DOUBLE_EQ(p[1], -2);
  }
}

TEST(Simulate, Overflow) {
  EXPECT_THROW(simulate(M({{1000}}), {1}, 100, 3), std::overflow_error);
}

TEST(Simulate, SpectralTracksUnstableEquilibrium) {
  // x' = -x - 1, y' = x + y + 1 has the saddle point (-1, 0).
  EscapeInstance inst = EscapeInstance::linear(M({{-1, 0}, {1, 1}}), RationalMatrix(0, 2), {}, M({{-2, -2}}), V({1}));
  inst.a = V({-1, 1});
  std::vector<AlgebraicNumber> x0{AlgebraicNumber(-1), AlgebraicNumber(0)};
  auto dense = simulate(inst, {-1.0, 0.0}, 50, 11);
  auto exact = simulate_spectral(inst, x0, 50, 11);
  EXPECT_TRUE(dense.escape_time.has_value());
  EXPECT_FALSE(exact.escape_time.has_value());
  for (const auto& p : exact.points) {
    EXPECT_NEAR(p[0], -1, 1e-12);
    EXPECT_NEAR(p[1], 0, 1e-12);
  }
  // Off the equilibrium both agree on early samples.
  auto a = simulate(inst, {0.5, 0.25}, 2, 5);
  auto b = simulate_spectral(inst, {AlgebraicNumber(Rational(1, 2)), AlgebraicNumber(Rational(1, 4))}, 2, 5);
  for (std::size_t k = 0; k < 5; ++k)
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(a.points[k][i], b.points[k][i], 1e-9 * (1 + std::abs(a.points[k][i])));
}

TEST(EscapeScan, Examples) {
  auto r = escape_scan(rotation_x1_ge_1(), {2, 0}, 10, 1e-9);
  ASSERT_TRUE(r.escapes);
  EXPECT_NEAR(r.time, std::acos(0.5), 1e-5);
  EXPECT_FALSE(escape_scan(nonstrict(M({{1}}), M({{1}}), V({1})), {1}, 20, 1e-9).escapes);
  EXPECT_FALSE(escape_scan(nonstrict(M({{0}}), M({{1}}), V({0})), {2}, 20, 1e-9).escapes);
}

TEST(Kronecker, Examples) {
  auto n = kronecker_scan({std::sqrt(2.0)}, {0.5}, 0.05, 100);
  ASSERT_TRUE(n);
  EXPECT_LE(*n, 76u);
  double f = std::fmod(*n * std::sqrt(2.0), 1.0);
  EXPECT_LT(std::abs(f - 0.5), 0.05);
  EXPECT_NEAR(std::fmod(76 * std::sqrt(2.0), 1.0), 0.4802, 1e-4);
  auto loose = kronecker_scan({std::sqrt(2.0)}, {0}, 0.5, 10);
  ASSERT_TRUE(loose);
  EXPECT_EQ(*loose, 1u);
  EXPECT_FALSE(kronecker_scan({0.5}, {1.0 / 3}, 0.01, 100000));
}

TEST(Liminf, Examples) {
  LaurentSpec empty;
  EXPECT_TRUE(empty.is_identically_zero());
  EXPECT_TRUE(liminf_scan(empty, 100).identically_zero);

  // z + 1/z on the orbit n -> exp(i n), i.e. 2 cos(n)
  LaurentSpec cosine;
  cosine.terms = {{{1, 0}, 0, 1}};
  cosine.theta = {1 / (2 * M_PI)};
  EXPECT_NEAR(cosine.evaluate(1), 2 * std::cos(1.0), 1e-12);
  auto r = liminf_scan(cosine, 10000);
  EXPECT_FALSE(r.identically_zero);
  EXPECT_LT(r.min_value, 0);

  LaurentSpec cancel;
  cancel.terms = {{{1, 1}, 0, 2}, {{-1, -1}, 0, 2}};
  cancel.theta = {std::sqrt(2.0)};
  EXPECT_TRUE(cancel.is_identically_zero());
}

TEST(ClosedForm, Examples) {
  auto grow = nonstrict(M({{1}}), M({{1}}), V({1}));
  EXPECT_EQ(closed_form_decide(grow).outcome, Outcome::TrappedExists);
  EXPECT_EQ(closed_form_decide(nonstrict(M({{-1}}), M({{1}}), V({1}))).outcome, Outcome::AllEscape);
  auto saddle = nonstrict(M({{1, 0}, {0, -1}}), M({{1, 0}, {0, 1}}), V({0, 0}));
  auto v = closed_form_decide(saddle);
  EXPECT_EQ(v.outcome, Outcome::TrappedExists);
  EXPECT_TRUE(verify_witness(V({1, 1}), saddle).accepted);
  EXPECT_THROW(closed_form_decide(rotation_x1_ge_1()), PreconditionViolation);
  EXPECT_FALSE(closed_form_applicable(nonstrict(M({{1, 1}, {0, 1}}), M({{1, 0}}), V({1}))));
}
