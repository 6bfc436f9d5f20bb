#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyescape/polynomial.hpp"
#include "polyescape/rational.hpp"

namespace polyescape {

/// a1 + a2*i with rational parts.
struct ComplexRational {
  Rational re = 0;
  Rational im = 0;

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(int r) : re(r) {}                  // NOLINT(google-explicit-constructor)
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  Rational norm2() const { return re * re + im * im; }
  ComplexRational conj() const { return {re, -im}; }
  bool is_real() const { return im == 0; }

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
    Rational n = b.norm2();
    ComplexRational t = a * b.conj();
    return {t.re / n, t.im / n};
  }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Upper bound on |z| (within 2^-64 absolute).
Rational abs_upper(const ComplexRational& z);

class EmbeddedField;

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };
enum class Ordering { Less = -1, Equal = 0, Greater = 1 };

/// Positive rational strictly below sqrt(6) / (d^((d+1)/2) * H^(d-1)) for an
/// integer polynomial of degree d >= 2 and height H: any two distinct roots
/// are farther apart than the returned value. Throws std::invalid_argument
/// when d < 2.
Rational mignotte_bound(const IntegerPolynomial& f);
/// Same bound for the primitive integer multiple of a rational polynomial.
Rational mignotte_bound(const RationalPolynomial& p);

/// An algebraic number in canonical form: its monic irreducible minimal
/// polynomial over Q, a rational complex approximation, and an isolation
/// radius such that the number is the only root of the minimal polynomial
/// within that distance of the approximation. Real irrational numbers also
/// keep an isolating interval (the disk's real diameter) refined by
/// bisection. Values are immutable; refinement of the internal cache is
/// invisible to callers and thread-safe.
class AlgebraicNumber {
 public:
  AlgebraicNumber();  // zero
  AlgebraicNumber(const Rational& value);  // NOLINT(google-explicit-constructor)
  AlgebraicNumber(int value);              // NOLINT(google-explicit-constructor)

  /// Certifies that `approx` is within `radius` of exactly one root of `p`
  /// (p must be irreducible; it is made monic). Refines until the canonical
  /// radius bound holds, or throws std::invalid_argument if the disk does
  /// not isolate a single root.
  static AlgebraicNumber from_isolation(const RationalPolynomial& p, const ComplexRational& approx,
                                        const Rational& radius);

  /// Root of irreducible `p` that lies within `error` of `approx`, where the
  /// caller guarantees such a root exists. Refinement is driven through
  /// `improve(target)` which must return a new (approx, error) pair with
  /// error <= target.
  template <class Improve>
  static AlgebraicNumber from_approximation(const RationalPolynomial& p, ComplexRational approx, Rational error,
                                            std::optional<bool> known_real, Improve&& improve);

  const RationalPolynomial& minpoly() const;
  int degree() const { return minpoly().degree(); }
  bool is_real() const;
  bool is_rational() const;
  /// Exact value; throws std::logic_error unless is_rational().
  const Rational& rational_value() const;

  /// Current canonical approximation and radius.
  ComplexRational approx() const;
  Rational radius() const;

  /// Same number with isolation radius <= target.
  AlgebraicNumber refine(const Rational& target) const;
  /// (center, error) with |value - center| <= error <= target. Error is 0
  /// for rationals.
  std::pair<ComplexRational, Rational> approximate(const Rational& target) const;
  /// Isolating interval [lo, hi] of width <= target (real numbers only).
  std::pair<Rational, Rational> interval(const Rational& target) const;

  double to_double() const;
  std::complex<double> to_complex() const;

  AlgebraicNumber conj() const;
  AlgebraicNumber real_part() const;
  AlgebraicNumber imag_part() const;
  AlgebraicNumber inverse() const;

  /// Separation bound of the minimal polynomial (0 for rationals).
  const Rational& separation() const;

  friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator-(const AlgebraicNumber& a);
  AlgebraicNumber& operator+=(const AlgebraicNumber& o) { return *this = *this + o; }
  AlgebraicNumber& operator-=(const AlgebraicNumber& o) { return *this = *this - o; }
  AlgebraicNumber& operator*=(const AlgebraicNumber& o) { return *this = *this * o; }
  AlgebraicNumber& operator/=(const AlgebraicNumber& o) { return *this = *this / o; }

  /// Structural equality: identical minimal polynomial and the same root.
  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend bool operator!=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(a == b); }
  friend bool operator==(const AlgebraicNumber& a, int b) { return a.is_rational() && a.rational_value() == b; }
  friend bool operator!=(const AlgebraicNumber& a, int b) { return !(a == b); }

  bool is_zero() const { return is_rational() && rational_value() == 0; }

  std::string to_string() const;

  /// Records that this number is `element` (a polynomial in the generator)
  /// of `field`. Arithmetic between numbers tagged with the same live field
  /// is done in that field instead of through resultants.
  void attach(const std::shared_ptr<const EmbeddedField>& field, const RationalPolynomial& element) const;
  /// The element of `field` this number was tagged with, if any.
  std::optional<RationalPolynomial> element_in(const EmbeddedField& field) const;

  struct Node;

 private:
  explicit AlgebraicNumber(std::shared_ptr<Node> node) : node_(std::move(node)) {}
  static AlgebraicNumber make_real(const RationalPolynomial& monic_irreducible, Rational lo, Rational hi);
  static AlgebraicNumber make_complex(const RationalPolynomial& monic_irreducible, ComplexRational center,
                                      Rational radius);
  static AlgebraicNumber identify(const RationalPolynomial& p, ComplexRational approx, Rational error,
                                  std::optional<bool> known_real,
                                  const std::function<std::pair<ComplexRational, Rational>(const Rational&)>& improve);
  static AlgebraicNumber combine(const AlgebraicNumber& a, const AlgebraicNumber& b, bool multiply);

  friend class AlgebraicAccess;
  std::shared_ptr<Node> node_;
};

template <class Improve>
AlgebraicNumber AlgebraicNumber::from_approximation(const RationalPolynomial& p, ComplexRational approx,
                                                    Rational error, std::optional<bool> known_real,
                                                    Improve&& improve) {
  return identify(p, std::move(approx), std::move(error), known_real,
                  std::function<std::pair<ComplexRational, Rational>(const Rational&)>(std::forward<Improve>(improve)));
}

Sign sign_real(const AlgebraicNumber& a);
Ordering compare_real(const AlgebraicNumber& a, const AlgebraicNumber& b);

inline bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  return compare_real(a, b) == Ordering::Less;
}

/// One canonical number per distinct complex root of p (real roots first,
/// ascending; then non-real roots ordered by real part, then imaginary
/// part). Throws std::invalid_argument on the zero polynomial.
std::vector<AlgebraicNumber> isolate_roots(const RationalPolynomial& p);

/// Certified-free numerical approximations of all roots of p (Aberth
/// iteration at `bits` of working precision). Used as starting points only.
std::vector<std::complex<double>> approximate_roots(const RationalPolynomial& p, unsigned bits = 128);

/// Minimal polynomial candidates: resultant of p(y) and q(x - y) / y^m q(x/y).
RationalPolynomial sum_resultant(const RationalPolynomial& p, const RationalPolynomial& q);
RationalPolynomial product_resultant(const RationalPolynomial& p, const RationalPolynomial& q);

/// True if no root of p lies in the closed disk |z - center| <= radius
/// (sufficient test via Taylor coefficients at the center).
bool excludes_roots(const RationalPolynomial& p, const ComplexRational& center, const Rational& radius);

}  // namespace polyescape
