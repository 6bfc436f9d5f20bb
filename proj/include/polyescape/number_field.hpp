#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "polyescape/algebraic.hpp"
#include "polyescape/matrix.hpp"
#include "polyescape/polynomial.hpp"

namespace polyescape {

/// Q[t]/(p) for a monic irreducible p. Elements are polynomials of degree
/// below deg p. Linear-algebra objects over the field are stored as one
/// rational object per power of t.
class NumberField {
 public:
  using Element = RationalPolynomial;

  NumberField() = default;
  explicit NumberField(RationalPolynomial modulus);

  const RationalPolynomial& modulus() const { return p_; }
  std::size_t degree() const { return n_; }

  Element generator() const;
  Element reduce(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  /// Trace over Q: sum of a over all embeddings.
  Rational trace(const Element& a) const;
  /// Matrix of multiplication by a on the power basis.
  RationalMatrix multiplication_matrix(const Element& a) const;
  /// Minimal polynomial over Q of a.
  RationalPolynomial minimal_polynomial(const Element& a) const;
  /// Value of a at the given root of the modulus.
  AlgebraicNumber embed(const Element& a, const AlgebraicNumber& root) const;

  /// t^k reduced, as a coefficient vector of length deg p (k < 2 deg p).
  const RationalVector& power(std::size_t k) const { return powers_.at(k); }

 private:
  RationalPolynomial p_;
  std::size_t n_ = 0;
  std::vector<RationalVector> powers_;
  RationalVector power_sums_;
};

/// A number field together with a chosen embedding: `generator` is the
/// root of the modulus that t maps to.
class EmbeddedField : public std::enable_shared_from_this<EmbeddedField> {
 public:
  EmbeddedField(NumberField field, AlgebraicNumber generator)
      : field_(std::move(field)), generator_(std::move(generator)) {}

  const NumberField& field() const { return field_; }
  const AlgebraicNumber& generator() const { return generator_; }
  /// The embedded value of an element, tagged with this field.
  AlgebraicNumber value(const NumberField::Element& element) const;

 private:
  NumberField field_;
  AlgebraicNumber generator_;
};

/// A field containing every number in xs (primitive element construction),
/// with each irrational x tagged by its element. Returns nullptr when the
/// degree would exceed max_degree. Recently built fields are cached.
std::shared_ptr<const EmbeddedField> common_field(const std::vector<AlgebraicNumber>& xs,
                                                  std::size_t max_degree = 64);

/// An element of an embedded real field, or a bare rational when the field
/// is null. Signs come from interval evaluation at the generator, so no
/// minimal polynomial is ever computed.
class FieldNumber {
 public:
  FieldNumber() = default;
  FieldNumber(long v) : e_(RationalPolynomial::constant(Rational(v))) {}
  FieldNumber(const Rational& v) : e_(RationalPolynomial::constant(v)) {}
  FieldNumber(std::shared_ptr<const EmbeddedField> field, NumberField::Element e);

  const std::shared_ptr<const EmbeddedField>& field() const { return f_; }
  const NumberField::Element& element() const { return e_; }
  bool is_rational() const { return e_.degree() <= 0; }
  Rational rational_value() const { return e_.coeff(0); }
  bool is_zero() const { return e_.is_zero(); }
  int sign() const;
  /// Interval of width at most `width` containing the value.
  std::pair<Rational, Rational> interval(const Rational& width) const;
  AlgebraicNumber value() const;

  friend FieldNumber operator+(const FieldNumber& a, const FieldNumber& b);
  friend FieldNumber operator-(const FieldNumber& a, const FieldNumber& b);
  friend FieldNumber operator*(const FieldNumber& a, const FieldNumber& b);
  friend FieldNumber operator/(const FieldNumber& a, const FieldNumber& b);
  friend FieldNumber operator-(const FieldNumber& a);
  FieldNumber& operator+=(const FieldNumber& b) { return *this = *this + b; }
  friend bool operator==(const FieldNumber& a, const FieldNumber& b) { return (a - b).is_zero(); }

 private:
  std::shared_ptr<const EmbeddedField> f_;
  NumberField::Element e_;
};

/// Sum over k of t^k * coeffs[k].
struct FieldMatrix {
  std::vector<RationalMatrix> coeffs;
};

struct FieldVector {
  std::vector<RationalVector> coeffs;
};

FieldMatrix field_mul(const NumberField& k, const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix field_scale(const NumberField& k, const NumberField::Element& s, const FieldMatrix& a);
FieldMatrix field_add(const FieldMatrix& a, const FieldMatrix& b);
FieldVector field_vec_mat(const NumberField& k, const FieldVector& v, const FieldMatrix& a);
/// v * (A - tI) for rational A.
FieldVector field_shifted_product(const NumberField& k, const FieldVector& v, const RationalMatrix& a);
FieldVector field_scale(const NumberField& k, const NumberField::Element& s, const FieldVector& v);
bool is_zero(const FieldMatrix& a);
bool is_zero(const FieldVector& v);
/// Entrywise trace.
RationalMatrix field_trace(const NumberField& k, const FieldMatrix& a);
RationalVector field_trace(const NumberField& k, const FieldVector& v);
/// Dot product with a rational vector: an element of the field.
NumberField::Element field_dot(const FieldVector& v, const RationalVector& x);
NumberField::Element field_entry(const FieldVector& v, std::size_t i);
NumberField::Element field_entry(const FieldMatrix& a, std::size_t r, std::size_t c);
FieldMatrix field_mat_vec(const FieldMatrix& a, const RationalVector& x);

}  // namespace polyescape
