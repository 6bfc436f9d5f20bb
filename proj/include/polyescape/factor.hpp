#pragma once

#include <vector>

#include "polyescape/polynomial.hpp"

namespace polyescape {

struct PolynomialFactor {
  RationalPolynomial factor;  // monic, irreducible over Q
  unsigned multiplicity = 1;
};

/// Irreducible factorization over Q. The product of factor^multiplicity
/// equals p up to a nonzero rational constant. Factors are monic and sorted
/// (degree, then coefficients). Throws std::invalid_argument on the zero
/// polynomial; a nonzero constant has no factors.
std::vector<PolynomialFactor> factor_poly(const RationalPolynomial& p);

/// Yun's squarefree decomposition over Q: monic squarefree, pairwise coprime
/// parts with multiplicities.
std::vector<PolynomialFactor> squarefree_decomposition(const RationalPolynomial& p);

/// Irreducible factors of a squarefree primitive integer polynomial
/// (Zassenhaus: modular factorization, Hensel lifting, recombination).
std::vector<IntegerPolynomial> factor_squarefree_integer(const IntegerPolynomial& f);

bool is_irreducible(const RationalPolynomial& p);

}  // namespace polyescape
