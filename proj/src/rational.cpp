#include "polyescape/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace polyescape {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");
  }
  Integer d = parse_integer(den);
  if (d == 0) throw std::invalid_argument("zero denominator: \"" + std::string(text) + "\"");
  Rational r(parse_integer(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_decimal(const Rational& value, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = abs(value) * scale;
  Integer q = scaled.get_num() / scaled.get_den();
  std::string body = q.get_str();
  if (static_cast<int>(body.size()) <= digits) body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
  std::string out = value < 0 ? "-" : "";
  out += body.substr(0, body.size() - static_cast<std::size_t>(digits));
  if (digits > 0) out += "." + body.substr(body.size() - static_cast<std::size_t>(digits));
  return out;
}

double to_double(const Rational& value) { return value.get_d(); }

Rational from_double(double value) {
  Rational r(value);
  r.canonicalize();
  return r;
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

int sign(const Rational& value) { return sgn(value); }

Integer floor(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& value) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Rational sqrt_upper(const Rational& value, unsigned bits) {
  if (value < 0) throw std::domain_error("sqrt of negative rational");
  if (value == 0) return 0;
  // ceil(sqrt(value * 4^bits)) / 2^bits
  Integer shift = Integer(1) << (2 * bits);
  Rational scaled = value * shift;
  Integer c = ceil(scaled);
  Integer root;
  mpz_sqrt(root.get_mpz_t(), c.get_mpz_t());
  if (root * root < c) root += 1;
  Rational r(root, Integer(1) << bits);
  r.canonicalize();
  return r;
}

Rational sqrt_lower_strict(const Rational& value, unsigned bits) {
  if (value <= 0) throw std::domain_error("sqrt_lower_strict needs a positive argument");
  for (;; bits += 16) {
    Integer shift = Integer(1) << (2 * bits);
    Integer f = floor(Rational(value * shift));
    Integer root;
    mpz_sqrt(root.get_mpz_t(), f.get_mpz_t());
    Rational r(root, Integer(1) << bits);
    r.canonicalize();
    if (r > 0 && r * r < value) return r;
    if (r > 0) {
      Rational s(root - 1, Integer(1) << bits);
      s.canonicalize();
      if (s > 0) return s;
    }
  }
}

Rational round_dyadic(const Rational& value, unsigned bits) {
  Integer shift = Integer(1) << bits;
  Rational scaled = value * shift;
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational r(q, shift);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent) b *= b;
  }
  return result;
}

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace polyescape
