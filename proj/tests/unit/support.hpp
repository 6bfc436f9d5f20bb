#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "polyescape/escape.hpp"
#include "polyescape/rational.hpp"

namespace pe = polyescape;

inline pe::Rational Q(const char* s) { return pe::parse_rational(s); }
inline pe::Rational Q(long v) { return pe::Rational(v); }

inline pe::RationalMatrix M(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<pe::Rational>> r;
  for (auto row : rows) {
    r.emplace_back();
    for (long v : row) r.back().push_back(pe::Rational(v));
  }
  if (r.empty()) return pe::RationalMatrix(0, 0);
  return pe::RationalMatrix::from_rows(r);
}

inline pe::RationalVector V(std::initializer_list<long> v) {
  pe::RationalVector out;
  for (long x : v) out.push_back(pe::Rational(x));
  return out;
}

inline pe::RationalPolynomial P(std::initializer_list<long> ascending) {
  std::vector<pe::Rational> c;
  for (long x : ascending) c.push_back(pe::Rational(x));
  return pe::RationalPolynomial(c);
}

/// Linear instance with only non-strict rows.
inline pe::EscapeInstance nonstrict(const pe::RationalMatrix& a, const pe::RationalMatrix& b, const pe::RationalVector& rhs) {
  return pe::EscapeInstance::linear(a, pe::RationalMatrix(0, a.rows()), {}, b, rhs);
}
