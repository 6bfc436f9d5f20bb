#include "polyescape/matrix.hpp"

#include <sstream>

#include "polyescape/factor.hpp"

namespace polyescape {

RationalMatrix rref(const RationalMatrix& a, std::vector<std::size_t>* pivots) {
  RationalMatrix m = a;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

std::vector<RationalVector> kernel_basis(const RationalMatrix& a) {
  std::vector<std::size_t> piv;
  RationalMatrix m = rref(a, &piv);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const RationalMatrix& a) {
  std::vector<std::size_t> piv;
  rref(a, &piv);
  return piv.size();
}

RationalMatrix inverse(const RationalMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = a.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> piv;
  RationalMatrix r = rref(aug, &piv);
  if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

RationalPolynomial char_poly(const RationalMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("char_poly: matrix is not square");
  const std::size_t n = a.rows();
  // Faddeev-LeVerrier: exact over Q.
  std::vector<Rational> c(n + 1, 0);
  c[n] = 1;
  RationalMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix am = mat_mul(a, m);
    for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
    m = std::move(am);
    RationalMatrix prod = mat_mul(a, m);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += prod(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return RationalPolynomial(std::move(c));
}

RationalMatrix evaluate(const RationalPolynomial& p, const RationalMatrix& a) {
  const std::size_t n = a.rows();
  RationalMatrix acc(n, n);
  for (int i = p.degree(); i >= 0; --i) {
    acc = mat_mul(acc, a);
    const Rational& ci = p.coefficients()[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < n; ++j) acc(j, j) += ci;
  }
  return acc;
}

std::vector<RationalMatrix> powers(const RationalMatrix& a, std::size_t count) {
  std::vector<RationalMatrix> out;
  if (count == 0) return out;
  out.push_back(RationalMatrix::identity(a.rows()));
  for (std::size_t k = 1; k < count; ++k) out.push_back(mat_mul(out.back(), a));
  return out;
}

RationalPolynomial min_poly(const RationalMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("min_poly: matrix is not square");
  if (a.rows() == 0) return RationalPolynomial::constant(1);
  auto factors = factor_poly(char_poly(a));
  std::vector<unsigned> exps;
  for (const auto& f : factors) exps.push_back(f.multiplicity);
  auto assemble = [&](const std::vector<unsigned>& e) {
    RationalPolynomial m = RationalPolynomial::constant(1);
    for (std::size_t i = 0; i < factors.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) m *= factors[i].factor;
    return m;
  };
  for (std::size_t i = 0; i < factors.size(); ++i) {
    while (exps[i] > 1) {
      --exps[i];
      if (!evaluate(assemble(exps), a).is_zero()) {
        ++exps[i];
        break;
      }
    }
  }
  return assemble(exps);
}

std::string to_string(const RationalMatrix& a) {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < a.rows(); ++r) {
    out << (r ? ", [" : "[");
    for (std::size_t c = 0; c < a.cols(); ++c) out << (c ? ", " : "") << to_string(a(r, c));
    out << "]";
  }
  out << "]";
  return out.str();
}

}  // namespace polyescape
