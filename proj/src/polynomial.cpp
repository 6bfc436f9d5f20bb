#include "polyescape/polynomial.hpp"

#include <sstream>

namespace polyescape {

RationalPolynomial squarefree_part(const RationalPolynomial& p) {
  if (p.degree() <= 0) return p.is_zero() ? p : RationalPolynomial::constant(1);
  RationalPolynomial g = gcd(p, p.derivative());
  return (p / g).monic();
}

IntegerPolynomial primitive_integer(const RationalPolynomial& p) {
  if (p.is_zero()) return {};
  Integer lcm_den = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ints;
  ints.reserve(p.size());
  Integer content = 0;
  for (const auto& c : p.coefficients()) {
    Integer v = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  if (ints.back() < 0) content = -content;
  for (auto& v : ints) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
  return IntegerPolynomial(std::move(ints));
}

RationalPolynomial to_rational(const IntegerPolynomial& p) {
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& v : p.coefficients()) c.emplace_back(v);
  return RationalPolynomial(std::move(c));
}

Integer height(const IntegerPolynomial& p) {
  Integer h = 0;
  for (const auto& c : p.coefficients()) {
    Integer a = ::abs(c);
    if (a > h) h = a;
  }
  return h;
}

Rational resultant(const RationalPolynomial& a_in, const RationalPolynomial& b_in) {
  if (a_in.is_zero() || b_in.is_zero()) return 0;
  RationalPolynomial a = a_in, b = b_in;
  Rational acc = 1;
  for (;;) {
    const int m = a.degree();
    const int n = b.degree();
    if (n == 0) return acc * pow(b.leading(), static_cast<unsigned>(m));
    if (m == 0) return acc * pow(a.leading(), static_cast<unsigned>(n));
    RationalPolynomial r = a % b;
    if (r.is_zero()) return 0;
    const int k = r.degree();
    if ((m % 2 == 1) && (n % 2 == 1)) acc = -acc;
    acc *= pow(b.leading(), static_cast<unsigned>(m - k));
    a = std::move(b);
    b = std::move(r);
  }
}

namespace {

RationalPolynomial positive_normalize(const RationalPolynomial& p) {
  if (p.is_zero()) return p;
  RationalPolynomial q = to_rational(primitive_integer(p));
  return p.leading() < 0 ? -q : q;
}

}  // namespace

std::vector<RationalPolynomial> sturm_sequence(const RationalPolynomial& p) {
  std::vector<RationalPolynomial> seq;
  seq.push_back(positive_normalize(p));
  RationalPolynomial d = positive_normalize(p.derivative());
  if (d.is_zero()) return seq;
  seq.push_back(d);
  for (;;) {
    RationalPolynomial r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(positive_normalize(-r));
  }
  return seq;
}

int sign_variations(const std::vector<RationalPolynomial>& seq, const Rational& x) {
  int count = 0;
  int prev = 0;
  for (const auto& p : seq) {
    int s = sgn(p.evaluate(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

Rational root_bound(const RationalPolynomial& p) {
  Rational m = 0;
  const Rational& lc = p.leading();
  for (int i = 0; i < p.degree(); ++i) {
    Rational q = abs(Rational(p.coeff(static_cast<std::size_t>(i)) / lc));
    if (q > m) m = q;
  }
  return m + 1;
}

std::string to_string(const RationalPolynomial& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coefficients()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || a != 1) out << to_string(a);
    if (i > 0) {
      if (a != 1) out << "*";
      out << var;
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

}  // namespace polyescape
