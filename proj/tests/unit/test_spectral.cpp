#include <gtest/gtest.h>

#include "polyescape/spectral.hpp"
#include "support.hpp"

using namespace polyescape;

namespace {

AlgebraicVector alg(const RationalVector& v) { return AlgebraicVector(v.begin(), v.end()); }

AlgebraicMatrix alg(const RationalMatrix& m) {
  AlgebraicMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

AlgebraicNumber imag_unit() { return isolate_roots(P({1, 0, 1})).back(); }

}  // namespace

TEST(EigenStructure, Diagonal) {
  auto s = eigen_structure(M({{1, 0}, {0, 2}}));
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  auto one = s.find(AlgebraicNumber(1)), two = s.find(AlgebraicNumber(2));
  ASSERT_TRUE(one && two);
  EXPECT_EQ(s.eigenvalues[*one].index, 1u);
  EXPECT_EQ(s.eigenvalues[*two].index, 1u);
  EXPECT_EQ(s.projection(*one), alg(M({{1, 0}, {0, 0}})));
  EXPECT_EQ(s.projection(*two), alg(M({{0, 0}, {0, 1}})));
  EXPECT_EQ(s.nu_max, 1u);
}

TEST(EigenStructure, JordanBlock) {
  auto s = eigen_structure(M({{1, 1}, {0, 1}}));
  ASSERT_EQ(s.eigenvalues.size(), 1u);
  EXPECT_EQ(s.eigenvalues[0].value, AlgebraicNumber(1));
  EXPECT_EQ(s.eigenvalues[0].index, 2u);
  EXPECT_EQ(s.projection(0), alg(RationalMatrix::identity(2)));
  EXPECT_EQ(s.nu_max, 2u);
}

TEST(EigenStructure, Rotation) {
  auto s = eigen_structure(M({{0, 1}, {-1, 0}}));
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  for (const auto& e : s.eigenvalues) {
    EXPECT_FALSE(e.real);
    EXPECT_EQ(e.index, 1u);
  }
  EXPECT_TRUE(s.find(imag_unit()).has_value());
  EXPECT_TRUE(s.find(imag_unit().conj()).has_value());
}

TEST(CoefficientTable, Diagonal) {
  auto t = coefficient_table(V({1, 1}), M({{1, 0}, {0, 2}}));
  const auto& s = t.spectral();
  EXPECT_EQ(t.vector(*s.find(AlgebraicNumber(1)), 0), alg(V({1, 0})));
  EXPECT_EQ(t.vector(*s.find(AlgebraicNumber(2)), 0), alg(V({0, 1})));
}

TEST(CoefficientTable, JordanBlock) {
  // b^T exp(At) = (e^t, t e^t)
  auto t = coefficient_table(V({1, 0}), M({{1, 1}, {0, 1}}));
  EXPECT_EQ(t.vector(0, 0), alg(V({1, 0})));
  EXPECT_EQ(t.vector(0, 1), alg(V({0, 1})));
}

TEST(CoefficientTable, RotationConjugates) {
  auto t = coefficient_table(V({1, 0}), M({{0, 1}, {-1, 0}}));
  const auto& s = t.spectral();
  auto pi = *s.find(imag_unit()), mi = *s.find(imag_unit().conj());
  auto u = t.vector(pi, 0), w = t.vector(mi, 0);
  ASSERT_EQ(u.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(u[k].conj(), w[k]);
  EXPECT_EQ(u[0], AlgebraicNumber(Q("1/2")));
  EXPECT_EQ(u[1], -imag_unit() * AlgebraicNumber(Q("1/2")));
}

TEST(Decompose, Examples) {
  auto d = eigen_structure(M({{1, 0}, {0, 2}}));
  auto parts = decompose_real_vector(V({1, 0}), d);
  EXPECT_EQ(parts[*d.find(AlgebraicNumber(1))], alg(V({1, 0})));
  EXPECT_EQ(parts[*d.find(AlgebraicNumber(2))], alg(V({0, 0})));

  auto r = eigen_structure(M({{0, 1}, {-1, 0}}));
  auto rp = decompose_real_vector(V({1, 0}), r);
  auto i = imag_unit();
  auto vi = rp[*r.find(i)], vmi = rp[*r.find(i.conj())];
  EXPECT_EQ(vi[0], AlgebraicNumber(Q("1/2")));
  // right eigenvector (1, i) for i, so P_i (1,0) = (1/2, i/2)
  EXPECT_EQ(vi[1], i * AlgebraicNumber(Q("1/2")));
  EXPECT_EQ(vmi[1], -i * AlgebraicNumber(Q("1/2")));

  for (const auto& part : decompose_real_vector(V({0, 0}), r))
    for (const auto& x : part) EXPECT_TRUE(x.is_zero());
}

TEST(Dominance, Examples) {
  auto s2 = isolate_roots(P({-2, 0, 1})).back();
  EXPECT_EQ(dominance_order({AlgebraicNumber(1), 0}, {AlgebraicNumber(2), 0}), Ordering::Less);
  EXPECT_EQ(dominance_order({s2, 3}, {s2, 1}), Ordering::Greater);
  EXPECT_EQ(dominance_order({s2, 0}, {AlgebraicNumber(Q("3/2")), 5}), Ordering::Less);
}

TEST(Identities, MixedSpectra) {
  std::vector<RationalMatrix> cases = {
      M({{1, 0}, {0, 2}}),
      M({{1, 1}, {0, 1}}),
      M({{0, 1}, {-1, 0}}),
      M({{0, 1, 0}, {0, 0, 1}, {2, 0, 0}}),
      M({{1, 1, 0, 0}, {-1, 1, 0, 0}, {0, 0, 2, 1}, {0, 0, 0, 2}}),
      M({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}),
  };
  for (const auto& a : cases) {
    auto s = std::make_shared<const SpectralData>(eigen_structure(a));
    EXPECT_TRUE(check_projections(*s).all()) << to_string(a);
    RationalVector b(a.rows(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = Rational(static_cast<long>(i) + 1);
    EXPECT_TRUE(check_moment_identity(coefficient_table(b, s), 2 * a.rows())) << to_string(a);
  }
}
