#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyescape/rational.hpp"

namespace polyescape {

/// Dense univariate polynomial, coefficients in ascending degree order.
/// Trailing zeros are stripped so the leading coefficient is nonzero unless
/// the polynomial is zero (empty coefficient list).
template <class F>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<F> coefficients) : c_(std::move(coefficients)) { trim(); }
  Polynomial(std::initializer_list<F> coefficients) : c_(coefficients) { trim(); }

  static Polynomial constant(const F& value) { return Polynomial(std::vector<F>{value}); }
  static Polynomial x() { return Polynomial(std::vector<F>{F(0), F(1)}); }
  /// x^n
  static Polynomial monomial(std::size_t n, const F& coefficient = F(1)) {
    std::vector<F> c(n + 1, F(0));
    c[n] = coefficient;
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<F>& coefficients() const { return c_; }

  F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
  const F& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  template <class X>
  X evaluate(const X& x) const {
    X acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * x;
      acc = acc + X(c_[i]);
    }
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<F> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * F(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  Polynomial operator-() const {
    std::vector<F> c(c_);
    for (auto& v : c) v = -v;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<F> c(std::max(a.c_.size(), b.c_.size()), F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<F> c(std::max(a.c_.size(), b.c_.size()), F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> c(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const F& s, const Polynomial& p) {
    if (s == 0) return {};
    std::vector<F> c(p.c_);
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Deterministic total order: by degree, then coefficients from the top.
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;) {
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    }
    return false;
  }

  /// Euclidean division over a field: a = q*b + r, deg r < deg b.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial(), a};
    std::vector<F> r(a.c_);
    std::vector<F> q(a.c_.size() - b.c_.size() + 1, F(0));
    const F& lb = b.c_.back();
    for (std::size_t k = q.size(); k-- > 0;) {
      const F& top = r[k + b.c_.size() - 1];
      if (top == 0) continue;
      F f = top / lb;
      q[k] = f;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[k + j] -= f * b.c_[j];
    }
    r.resize(b.c_.size() - 1);
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }
  friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

  Polynomial monic() const {
    if (is_zero()) return {};
    F inv = F(1) / c_.back();
    return inv * *this;
  }

  /// p(x + shift)
  Polynomial taylor_shift(const F& shift) const {
    std::vector<F> c(c_);
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = n - 1; j > i; --j) c[j - 1] += shift * c[j];
    }
    return Polynomial(std::move(c));
  }

  /// p(s * x)
  Polynomial scale_argument(const F& s) const {
    std::vector<F> c(c_);
    F pw(1);
    for (auto& v : c) {
      v *= pw;
      pw *= s;
    }
    return Polynomial(std::move(c));
  }

  /// x^deg * p(1/x)
  Polynomial reversed() const {
    std::vector<F> c(c_.rbegin(), c_.rend());
    return Polynomial(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<F> c_;
};

using RationalPolynomial = Polynomial<Rational>;
using IntegerPolynomial = Polynomial<Integer>;

/// Monic gcd over a field.
template <class F>
Polynomial<F> gcd(Polynomial<F> a, Polynomial<F> b) {
  while (!b.is_zero()) {
    Polynomial<F> r = a % b;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

/// Extended Euclid over a field: returns (g, s, t) with s*a + t*b = g monic.
template <class F>
struct XgcdResult {
  Polynomial<F> g, s, t;
};

template <class F>
XgcdResult<F> xgcd(const Polynomial<F>& a, const Polynomial<F>& b) {
  Polynomial<F> r0 = a, r1 = b;
  Polynomial<F> s0 = Polynomial<F>::constant(F(1)), s1;
  Polynomial<F> t0, t1 = Polynomial<F>::constant(F(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial<F> s2 = s0 - q * s1;
    Polynomial<F> t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  F inv = F(1) / r0.leading();
  return {inv * r0, inv * s0, inv * t0};
}

/// Squarefree part p / gcd(p, p'), monic.
RationalPolynomial squarefree_part(const RationalPolynomial& p);

/// Clears denominators and content: the primitive integer polynomial with
/// positive leading coefficient that is a rational multiple of p.
IntegerPolynomial primitive_integer(const RationalPolynomial& p);
RationalPolynomial to_rational(const IntegerPolynomial& p);

/// Maximum absolute value of the coefficients.
Integer height(const IntegerPolynomial& p);

/// Resultant of two polynomials over Q (Sylvester determinant).
Rational resultant(const RationalPolynomial& a, const RationalPolynomial& b);

/// Standard Sturm sequence p, p', -rem(...), ...
std::vector<RationalPolynomial> sturm_sequence(const RationalPolynomial& p);
/// Number of sign variations of the sequence evaluated at x.
int sign_variations(const std::vector<RationalPolynomial>& seq, const Rational& x);

/// Cauchy bound: every complex root has modulus < the returned value.
Rational root_bound(const RationalPolynomial& p);

std::string to_string(const RationalPolynomial& p, const std::string& var = "x");

}  // namespace polyescape
