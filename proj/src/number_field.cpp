#include "polyescape/number_field.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace polyescape {

NumberField::NumberField(RationalPolynomial modulus) : p_(modulus.monic()) {
  if (p_.degree() < 1) throw std::invalid_argument("number field modulus must have degree >= 1");
  n_ = static_cast<std::size_t>(p_.degree());
  // t^k for k < 2n, reduced.
  powers_.assign(2 * n_, RationalVector(n_, 0));
  for (std::size_t k = 0; k < n_; ++k) powers_[k][k] = 1;
  for (std::size_t k = n_; k < 2 * n_; ++k) {
    const auto& prev = powers_[k - 1];
    auto& cur = powers_[k];
    // t * prev; the overflow term t^n = -sum p_i t^i
    const Rational top = prev[n_ - 1];
    for (std::size_t i = n_ - 1; i > 0; --i) cur[i] = prev[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < n_; ++i) cur[i] -= top * p_.coeff(i);
  }
  // Newton's identities for power sums of the roots.
  power_sums_.assign(n_, 0);
  power_sums_[0] = static_cast<long>(n_);
  for (std::size_t k = 1; k < n_; ++k) {
    // e-coefficients: p = t^n + c_{n-1} t^{n-1} + ... ; s_k + c_{n-1}s_{k-1} + ... + k c_{n-k} = 0
    Rational s = Rational(static_cast<long>(k)) * p_.coeff(n_ - k);
    for (std::size_t i = 1; i < k; ++i) s += p_.coeff(n_ - i) * power_sums_[k - i];
    power_sums_[k] = -s;
  }
}

NumberField::Element NumberField::generator() const {
  if (n_ == 1) return Element::constant(-p_.coeff(0));
  return Element::x();
}

NumberField::Element NumberField::reduce(const Element& a) const {
  if (a.degree() < static_cast<int>(n_)) return a;
  return a % p_;
}

NumberField::Element NumberField::mul(const Element& a, const Element& b) const { return reduce(a * b); }

NumberField::Element NumberField::inverse(const Element& a) const {
  Element r = reduce(a);
  if (r.is_zero()) throw std::domain_error("inverse of zero in a number field");
  auto g = xgcd(r, p_);
  if (g.g.degree() != 0) throw std::logic_error("number field modulus is reducible");
  return reduce(g.s);
}

Rational NumberField::trace(const Element& a) const {
  Element r = reduce(a);
  Rational t = 0;
  for (std::size_t k = 0; k < r.size(); ++k) t += r.coeff(k) * power_sums_[k];
  return t;
}

RationalMatrix NumberField::multiplication_matrix(const Element& a) const {
  RationalMatrix m(n_, n_);
  Element col = reduce(a);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < n_; ++i) m(i, j) = col.coeff(i);
    col = mul(col, Element::x());
  }
  return m;
}

RationalPolynomial NumberField::minimal_polynomial(const Element& a) const {
  Element r = reduce(a);
  if (r.degree() <= 0) return RationalPolynomial({Rational(-r.coeff(0)), Rational(1)});
  // The characteristic polynomial is a power of the minimal polynomial.
  return squarefree_part(char_poly(multiplication_matrix(r)));
}

AlgebraicNumber NumberField::embed(const Element& a, const AlgebraicNumber& root) const {
  Element r = reduce(a);
  if (r.degree() <= 0) return AlgebraicNumber(r.coeff(0));
  if (root.is_rational()) return AlgebraicNumber(r.evaluate(root.rational_value()));
  RationalPolynomial mp = minimal_polynomial(r);
  std::vector<Rational> absc;
  for (const auto& c : r.coefficients()) absc.push_back(abs(c));
  auto improve = [&](const Rational& target) -> std::pair<ComplexRational, Rational> {
    // |r(z) - r(w)| <= sum |c_k| k M^(k-1) |z - w| with M >= |z|, |w|
    auto [c0, e0] = root.approximate(Rational(1, 16));
    Rational m = abs_upper(c0) + e0 + 1;
    Rational lip = 0, mp_k = 1;
    for (std::size_t k = 1; k < absc.size(); ++k) {
      lip += absc[k] * static_cast<long>(k) * mp_k;
      mp_k *= m;
    }
    Rational eps = lip == 0 ? target : Rational(target / lip);
    if (eps > Rational(1, 16)) eps = Rational(1, 16);
    auto [c, e] = root.approximate(eps);
    ComplexRational v;
    for (std::size_t k = absc.size(); k-- > 0;) {
      v = v * c;
      v.re += r.coeff(k);
    }
    return {v, Rational(lip * e)};
  };
  auto [c, e] = improve(Rational(1, 1 << 20));
  return AlgebraicNumber::from_approximation(mp, c, e, root.is_real() ? std::optional<bool>(true) : std::nullopt,
                                             improve);
}

namespace {

std::size_t count_of(const FieldMatrix& a) { return a.coeffs.size(); }

}  // namespace

FieldMatrix field_mul(const NumberField& k, const FieldMatrix& a, const FieldMatrix& b) {
  const std::size_t n = k.degree();
  if (count_of(a) != n || count_of(b) != n) throw std::invalid_argument("field matrix has wrong coefficient count");
  const std::size_t rows = a.coeffs[0].rows(), cols = b.coeffs[0].cols();
  std::vector<RationalMatrix> raw(2 * n, RationalMatrix(rows, cols));
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.coeffs[j].is_zero()) continue;
      raw[i + j] = raw[i + j] + a.coeffs[i] * b.coeffs[j];
    }
  }
  FieldMatrix out{std::vector<RationalMatrix>(n, RationalMatrix(rows, cols))};
  for (std::size_t d = 0; d < raw.size(); ++d) {
    if (raw[d].is_zero()) continue;
    const auto& red = k.power(d);
    for (std::size_t i = 0; i < n; ++i)
      if (red[i] != 0) out.coeffs[i] = out.coeffs[i] + red[i] * raw[d];
  }
  return out;
}

FieldMatrix field_scale(const NumberField& k, const NumberField::Element& s, const FieldMatrix& a) {
  const std::size_t n = k.degree();
  const std::size_t rows = a.coeffs[0].rows(), cols = a.coeffs[0].cols();
  std::vector<RationalMatrix> raw(2 * n, RationalMatrix(rows, cols));
  NumberField::Element sr = k.reduce(s);
  for (std::size_t i = 0; i < sr.size(); ++i) {
    if (sr.coeff(i) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) raw[i + j] = raw[i + j] + sr.coeff(i) * a.coeffs[j];
  }
  FieldMatrix out{std::vector<RationalMatrix>(n, RationalMatrix(rows, cols))};
  for (std::size_t d = 0; d < raw.size(); ++d) {
    if (raw[d].is_zero()) continue;
    const auto& red = k.power(d);
    for (std::size_t i = 0; i < n; ++i)
      if (red[i] != 0) out.coeffs[i] = out.coeffs[i] + red[i] * raw[d];
  }
  return out;
}

FieldMatrix field_add(const FieldMatrix& a, const FieldMatrix& b) {
  FieldMatrix out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = out.coeffs[i] + b.coeffs[i];
  return out;
}

namespace {

RationalVector axpy(RationalVector y, const Rational& a, const RationalVector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  return y;
}

bool vec_zero(const RationalVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

FieldVector reduce_raw(const NumberField& k, const std::vector<RationalVector>& raw, std::size_t len) {
  const std::size_t n = k.degree();
  FieldVector out{std::vector<RationalVector>(n, RationalVector(len, 0))};
  for (std::size_t d = 0; d < raw.size(); ++d) {
    if (vec_zero(raw[d])) continue;
    const auto& red = k.power(d);
    for (std::size_t i = 0; i < n; ++i)
      if (red[i] != 0) out.coeffs[i] = axpy(out.coeffs[i], red[i], raw[d]);
  }
  return out;
}

}  // namespace

FieldVector field_vec_mat(const NumberField& k, const FieldVector& v, const FieldMatrix& a) {
  const std::size_t n = k.degree();
  const std::size_t len = a.coeffs[0].cols();
  std::vector<RationalVector> raw(2 * n, RationalVector(len, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (vec_zero(v.coeffs[i])) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (a.coeffs[j].is_zero()) continue;
      auto p = vec_mat(v.coeffs[i], a.coeffs[j]);
      for (std::size_t c = 0; c < len; ++c) raw[i + j][c] += p[c];
    }
  }
  return reduce_raw(k, raw, len);
}

FieldVector field_shifted_product(const NumberField& k, const FieldVector& v, const RationalMatrix& a) {
  const std::size_t n = k.degree();
  const std::size_t len = a.cols();
  std::vector<RationalVector> raw(2 * n, RationalVector(len, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (vec_zero(v.coeffs[i])) continue;
    auto p = vec_mat(v.coeffs[i], a);
    for (std::size_t c = 0; c < len; ++c) {
      raw[i][c] += p[c];
      raw[i + 1][c] -= v.coeffs[i][c];
    }
  }
  return reduce_raw(k, raw, len);
}

FieldVector field_scale(const NumberField& k, const NumberField::Element& s, const FieldVector& v) {
  const std::size_t n = k.degree();
  const std::size_t len = v.coeffs[0].size();
  std::vector<RationalVector> raw(2 * n, RationalVector(len, 0));
  NumberField::Element sr = k.reduce(s);
  for (std::size_t i = 0; i < sr.size(); ++i) {
    if (sr.coeff(i) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) raw[i + j] = axpy(raw[i + j], sr.coeff(i), v.coeffs[j]);
  }
  return reduce_raw(k, raw, len);
}

bool is_zero(const FieldMatrix& a) {
  for (const auto& m : a.coeffs)
    if (!m.is_zero()) return false;
  return true;
}

bool is_zero(const FieldVector& v) {
  for (const auto& c : v.coeffs)
    if (!vec_zero(c)) return false;
  return true;
}

RationalMatrix field_trace(const NumberField& k, const FieldMatrix& a) {
  RationalMatrix out(a.coeffs[0].rows(), a.coeffs[0].cols());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    Rational t = k.trace(RationalPolynomial::monomial(i));
    if (t != 0) out = out + t * a.coeffs[i];
  }
  return out;
}

RationalVector field_trace(const NumberField& k, const FieldVector& v) {
  RationalVector out(v.coeffs[0].size(), 0);
  for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
    Rational t = k.trace(RationalPolynomial::monomial(i));
    if (t != 0) out = axpy(out, t, v.coeffs[i]);
  }
  return out;
}

NumberField::Element field_dot(const FieldVector& v, const RationalVector& x) {
  std::vector<Rational> c(v.coeffs.size(), 0);
  for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
    if (v.coeffs[i].size() != x.size()) throw std::invalid_argument("field_dot: dimension mismatch");
    for (std::size_t j = 0; j < x.size(); ++j) c[i] += v.coeffs[i][j] * x[j];
  }
  return NumberField::Element(std::move(c));
}

NumberField::Element field_entry(const FieldVector& v, std::size_t i) {
  std::vector<Rational> c;
  for (const auto& co : v.coeffs) c.push_back(co.at(i));
  return NumberField::Element(std::move(c));
}

NumberField::Element field_entry(const FieldMatrix& a, std::size_t r, std::size_t col) {
  std::vector<Rational> c;
  for (const auto& co : a.coeffs) c.push_back(co(r, col));
  return NumberField::Element(std::move(c));
}

FieldMatrix field_mat_vec(const FieldMatrix& a, const RationalVector& x) {
  FieldMatrix out;
  for (const auto& m : a.coeffs) {
    auto v = mat_vec(m, x);
    const std::size_t n = v.size();
    out.coeffs.push_back(RationalMatrix(n, 1, std::move(v)));
  }
  return out;
}

}  // namespace polyescape

namespace polyescape {

AlgebraicNumber EmbeddedField::value(const NumberField::Element& element) const {
  NumberField::Element r = field_.reduce(element);
  if (r.degree() <= 0) return AlgebraicNumber(r.coeff(0));
  AlgebraicNumber v = field_.embed(r, generator_);
  v.attach(shared_from_this(), r);
  return v;
}

namespace {

// Q[u, v]/(P(u), q(v)) with elements as dense N x m coefficient grids.
class TensorAlgebra {
 public:
  TensorAlgebra(const RationalPolynomial& p, const RationalPolynomial& q)
      : p_(p), q_(q), n_(static_cast<std::size_t>(p.degree())), m_(static_cast<std::size_t>(q.degree())) {}

  std::size_t dimension() const { return n_ * m_; }
  RationalVector one() const {
    RationalVector e(dimension(), 0);
    e[0] = 1;
    return e;
  }
  RationalVector u() const { return n_ == 1 ? basis(0, 0, -p_.coeff(0)) : basis(1, 0, Rational(1)); }
  RationalVector v() const { return m_ == 1 ? basis(0, 0, -q_.coeff(0)) : basis(0, 1, Rational(1)); }

  RationalVector mul(const RationalVector& a, const RationalVector& b) const {
    const std::size_t rn = 2 * n_ - 1, rm = 2 * m_ - 1;
    std::vector<Rational> g(rn * rm, Rational(0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < m_; ++j) {
        const Rational& x = a[i * m_ + j];
        if (x == 0) continue;
        for (std::size_t k = 0; k < n_; ++k)
          for (std::size_t l = 0; l < m_; ++l) {
            const Rational& y = b[k * m_ + l];
            if (y != 0) g[(i + k) * rm + (j + l)] += x * y;
          }
      }
    // v^l for l >= m via q, then u^k for k >= n via P (both monic)
    for (std::size_t i = 0; i < rn; ++i)
      for (std::size_t l = rm; l-- > m_;) {
        Rational c = g[i * rm + l];
        if (c == 0) continue;
        g[i * rm + l] = 0;
        for (std::size_t s = 0; s < m_; ++s) g[i * rm + l - m_ + s] -= c * q_.coeff(s);
      }
    for (std::size_t k = rn; k-- > n_;)
      for (std::size_t j = 0; j < m_; ++j) {
        Rational c = g[k * rm + j];
        if (c == 0) continue;
        g[k * rm + j] = 0;
        for (std::size_t s = 0; s < n_; ++s) g[(k - n_ + s) * rm + j] -= c * p_.coeff(s);
      }
    RationalVector out(dimension());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < m_; ++j) out[i * m_ + j] = g[i * rm + j];
    return out;
  }

 private:
  RationalVector basis(std::size_t i, std::size_t j, const Rational& c) const {
    RationalVector e(dimension(), 0);
    e[i * m_ + j] = c;
    return e;
  }
  RationalPolynomial p_, q_;
  std::size_t n_, m_;
};

// e(f(theta)) mod r
NumberField::Element compose(const NumberField& k, const NumberField::Element& e, const NumberField::Element& f) {
  NumberField::Element acc;
  for (std::size_t i = e.size(); i-- > 0;) {
    acc = k.mul(acc, f);
    acc = acc + RationalPolynomial::constant(e.coeff(i));
  }
  return k.reduce(acc);
}

struct Stage {
  NumberField field;
  AlgebraicNumber generator;
};

// Extends (field, generator) by x; returns the new stage and the images of
// the old generator and of x.
std::optional<std::tuple<Stage, NumberField::Element, NumberField::Element>> adjoin(const Stage& st,
                                                                                    const AlgebraicNumber& x,
                                                                                    std::size_t max_degree) {
  const RationalPolynomial& p = st.field.modulus();
  const RationalPolynomial& q = x.minpoly();
  TensorAlgebra alg(p, q);
  const std::size_t dim = alg.dimension();
  // x often lies in the field already, so the tensor may exceed the cap.
  if (dim > 2 * max_degree) return std::nullopt;
  const RationalVector u = alg.u(), v = alg.v();
  for (long c : {1L, -1L, 2L, -2L, 3L, -3L, 5L, -5L, 7L, 11L}) {
    RationalVector theta(dim);
    for (std::size_t i = 0; i < dim; ++i) theta[i] = u[i] + Rational(c) * v[i];
    // columns theta^0 .. theta^dim
    std::vector<RationalVector> pw{alg.one()};
    for (std::size_t k = 0; k < dim; ++k) pw.push_back(alg.mul(pw.back(), theta));
    RationalMatrix basis(dim, dim);
    for (std::size_t k = 0; k < dim; ++k)
      for (std::size_t i = 0; i < dim; ++i) basis(i, k) = pw[k][i];
    if (rank(basis) < dim) continue;
    RationalMatrix inv = inverse(basis);
    RationalVector rel = mat_vec(inv, pw[dim]);
    std::vector<Rational> rc(dim + 1);
    for (std::size_t k = 0; k < dim; ++k) rc[k] = -rel[k];
    rc[dim] = 1;
    RationalPolynomial r(rc);
    RationalPolynomial fu(mat_vec(inv, u)), fv(mat_vec(inv, v));
    const AlgebraicNumber g = st.generator;
    const Rational cr(c);
    auto improve = [g, x, cr](const Rational& target) -> std::pair<ComplexRational, Rational> {
      Rational t = target / (2 * (abs(cr) + 1));
      auto [cg, eg] = g.approximate(t);
      auto [cx, ex] = x.approximate(t);
      return {cg + ComplexRational(cr) * cx, eg + abs(cr) * ex};
    };
    auto [c0, e0] = improve(Rational(1, 1 << 20));
    std::optional<bool> real;
    if (g.is_real() && x.is_real()) real = true;
    AlgebraicNumber gen = AlgebraicNumber::from_approximation(r, c0, e0, real, improve);
    if (gen.is_rational()) continue;
    if (static_cast<std::size_t>(gen.degree()) > max_degree) return std::nullopt;
    NumberField k(gen.minpoly());
    return std::make_tuple(Stage{k, gen}, k.reduce(fu), k.reduce(fv));
  }
  return std::nullopt;
}

std::mutex g_cache_mu;
std::vector<std::shared_ptr<const EmbeddedField>> g_cache;

bool all_tagged(const EmbeddedField& f, const std::vector<AlgebraicNumber>& xs) {
  for (const auto& x : xs)
    if (!x.is_rational() && !x.element_in(f)) return false;
  return true;
}

}  // namespace

std::shared_ptr<const EmbeddedField> common_field(const std::vector<AlgebraicNumber>& xs, std::size_t max_degree) {
  std::vector<AlgebraicNumber> irr;
  for (const auto& x : xs)
    if (!x.is_rational()) irr.push_back(x);
  if (irr.empty()) return nullptr;
  {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    for (auto it = g_cache.rbegin(); it != g_cache.rend(); ++it)
      if (all_tagged(**it, irr)) return *it;
  }
  std::stable_sort(irr.begin(), irr.end(),
                   [](const AlgebraicNumber& a, const AlgebraicNumber& b) { return a.degree() > b.degree(); });
  Stage st{NumberField(irr[0].minpoly()), irr[0]};
  std::vector<std::pair<AlgebraicNumber, NumberField::Element>> placed{{irr[0], st.field.generator()}};
  for (std::size_t i = 1; i < irr.size(); ++i) {
    bool known = false;
    for (const auto& [y, e] : placed)
      if (y == irr[i]) {
        placed.emplace_back(irr[i], e);
        known = true;
        break;
      }
    if (known) continue;
    auto next = adjoin(st, irr[i], max_degree);
    if (!next) return nullptr;
    auto& [stage, old_gen, image] = *next;
    for (auto& pe : placed) pe.second = compose(stage.field, pe.second, old_gen);
    placed.emplace_back(irr[i], image);
    st = std::move(stage);
  }
  auto f = std::make_shared<const EmbeddedField>(st.field, st.generator);
  st.generator.attach(f, f->field().generator());
  for (const auto& [y, e] : placed) y.attach(f, e);
  std::lock_guard<std::mutex> lock(g_cache_mu);
  g_cache.push_back(f);
  if (g_cache.size() > 256) g_cache.erase(g_cache.begin());
  return f;
}

}  // namespace polyescape

namespace polyescape {

namespace {

const std::shared_ptr<const EmbeddedField>& pick(const FieldNumber& a, const FieldNumber& b) {
  if (a.field() && b.field() && a.field() != b.field()) throw std::invalid_argument("FieldNumber: mixed fields");
  return a.field() ? a.field() : b.field();
}

}  // namespace

FieldNumber::FieldNumber(std::shared_ptr<const EmbeddedField> field, NumberField::Element e)
    : f_(std::move(field)), e_(std::move(e)) {
  if (f_) e_ = f_->field().reduce(e_);
  if (!is_rational() && !f_) throw std::invalid_argument("FieldNumber: irrational element without a field");
}

std::pair<Rational, Rational> FieldNumber::interval(const Rational& width) const {
  if (is_rational()) return {rational_value(), rational_value()};
  const AlgebraicNumber& g = f_->generator();
  Rational w = width / 4;
  for (;;) {
    auto [glo, ghi] = g.interval(w);
    // Horner with interval arithmetic.
    Rational lo = e_.coeff(static_cast<std::size_t>(e_.degree())), hi = lo;
    for (std::size_t k = static_cast<std::size_t>(e_.degree()); k-- > 0;) {
      Rational c[4] = {lo * glo, lo * ghi, hi * glo, hi * ghi};
      lo = *std::min_element(c, c + 4) + e_.coeff(k);
      hi = *std::max_element(c, c + 4) + e_.coeff(k);
    }
    if (hi - lo <= width) return {lo, hi};
    w /= 16;
  }
}

int FieldNumber::sign() const {
  if (is_rational()) return sgn(rational_value());
  Rational width(1, 1 << 20);
  for (;;) {
    auto [lo, hi] = interval(width);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    width /= 1 << 16;
  }
}

AlgebraicNumber FieldNumber::value() const {
  if (is_rational()) return AlgebraicNumber(rational_value());
  return f_->value(e_);
}

FieldNumber operator+(const FieldNumber& a, const FieldNumber& b) { return {pick(a, b), a.e_ + b.e_}; }
FieldNumber operator-(const FieldNumber& a, const FieldNumber& b) { return {pick(a, b), a.e_ - b.e_}; }
FieldNumber operator-(const FieldNumber& a) { return {a.f_, Rational(-1) * a.e_}; }

FieldNumber operator*(const FieldNumber& a, const FieldNumber& b) {
  const auto& f = pick(a, b);
  if (a.is_rational() || b.is_rational()) return {f, a.e_ * b.e_};
  return {f, f->field().mul(a.e_, b.e_)};
}

FieldNumber operator/(const FieldNumber& a, const FieldNumber& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (b.is_rational()) return {a.f_, Rational(1 / b.rational_value()) * a.e_};
  return a * FieldNumber(b.f_, b.f_->field().inverse(b.e_));
}

}  // namespace polyescape
