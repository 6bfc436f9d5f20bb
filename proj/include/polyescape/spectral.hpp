#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "polyescape/algebraic.hpp"
#include "polyescape/matrix.hpp"
#include "polyescape/number_field.hpp"

namespace polyescape {

using AlgebraicVector = std::vector<AlgebraicNumber>;
using AlgebraicMatrix = Matrix<AlgebraicNumber>;

struct EigenvalueRecord {
  AlgebraicNumber value;
  unsigned index = 1;  // multiplicity in the minimal polynomial
  bool real = true;
  std::size_t factor_id = 0;
};

/// One irreducible factor p of the minimal polynomial. Quantities attached
/// to "a root t of p" are stored over Q(t); each concrete eigenvalue is an
/// embedding of that field.
struct FactorBlock {
  RationalPolynomial factor;
  unsigned multiplicity = 1;
  NumberField field;
  FieldMatrix projection;
  std::vector<std::size_t> eigenvalues;  // positions in SpectralData::eigenvalues
};

struct SpectralData {
  RationalMatrix matrix;
  RationalPolynomial minpoly;
  std::vector<EigenvalueRecord> eigenvalues;
  std::vector<FactorBlock> factors;
  unsigned nu_max = 0;

  /// P_lambda with algebraic entries.
  AlgebraicMatrix projection(std::size_t eigenvalue) const;
  /// Sum of P_lambda over the roots of one factor (a rational matrix).
  RationalMatrix factor_projection(std::size_t factor) const;
  std::optional<std::size_t> find(const AlgebraicNumber& lambda) const;
};

SpectralData eigen_structure(const RationalMatrix& a);

/// u_(lambda,j) for b^T exp(At) = sum exp(lambda t) t^j u_(lambda,j)^T.
class CoefficientTable {
 public:
  CoefficientTable(RationalVector observable, std::shared_ptr<const SpectralData> spectral);

  const RationalVector& observable() const { return b_; }
  const SpectralData& spectral() const { return *s_; }
  std::shared_ptr<const SpectralData> spectral_ptr() const { return s_; }

  /// u over Q(t) for a generic root t of the factor; j < multiplicity.
  const FieldVector& generic(std::size_t factor, unsigned j) const { return u_.at(factor).at(j); }
  /// Materialized u_(lambda,j).
  AlgebraicVector vector(std::size_t eigenvalue, unsigned j) const;
  /// u_(lambda,j)^T x for rational x, as an element of Q(t).
  NumberField::Element dot(std::size_t factor, unsigned j, const RationalVector& x) const;
  /// Same, evaluated at the eigenvalue.
  AlgebraicNumber value(std::size_t eigenvalue, unsigned j, const RationalVector& x) const;

 private:
  RationalVector b_;
  std::shared_ptr<const SpectralData> s_;
  std::vector<std::vector<FieldVector>> u_;
};

CoefficientTable coefficient_table(const RationalVector& b, const RationalMatrix& a);
CoefficientTable coefficient_table(const RationalVector& b, std::shared_ptr<const SpectralData> spectral);

/// v_lambda = P_lambda v for every eigenvalue, in eigenvalue order.
std::vector<AlgebraicVector> decompose_real_vector(const RationalVector& v, const SpectralData& s);

/// Lexicographic order on (real, integer) pairs.
Ordering dominance_order(const std::pair<AlgebraicNumber, unsigned>& p, const std::pair<AlgebraicNumber, unsigned>& q);

struct ProjectionReport {
  bool sum_is_identity = false;
  bool idempotent = false;
  bool orthogonal = false;
  bool nilpotent = false;
  bool all() const { return sum_is_identity && idempotent && orthogonal && nilpotent; }
};

/// Exact checks of the projection identities.
ProjectionReport check_projections(const SpectralData& s);
/// Exact check of b^T A^k = sum u_(lambda,j)^T lambda^(k-j) k!/(k-j)! for k <= max_k.
bool check_moment_identity(const CoefficientTable& table, unsigned max_k);

}  // namespace polyescape
