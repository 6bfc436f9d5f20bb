#include "polyescape/spectral.hpp"

#include <stdexcept>

#include "polyescape/factor.hpp"

namespace polyescape {

namespace {

using Element = NumberField::Element;
using FieldPoly = std::vector<Element>;  // polynomial in x over Q(t), ascending

// Divides f by (x - t): returns quotient and remainder.
std::pair<FieldPoly, Element> divide_linear(const NumberField& k, const FieldPoly& f, const Element& t) {
  if (f.empty()) return {{}, Element()};
  FieldPoly q(f.size() - 1);
  Element carry;
  for (std::size_t i = f.size(); i-- > 0;) {
    Element cur = f[i] + carry;
    if (i == 0) return {q, k.reduce(cur)};
    q[i - 1] = k.reduce(cur);
    carry = k.mul(q[i - 1], t);
  }
  return {q, Element()};
}

FieldPoly field_poly_mul(const NumberField& k, const FieldPoly& a, const FieldPoly& b) {
  if (a.empty() || b.empty()) return {};
  FieldPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + k.mul(a[i], b[j]);
  }
  return c;
}

// f mod m for rational monic m.
FieldPoly field_poly_mod(const NumberField& k, FieldPoly f, const RationalPolynomial& m) {
  const std::size_t dm = static_cast<std::size_t>(m.degree());
  while (f.size() > dm) {
    Element top = f.back();
    f.pop_back();
    if (top.is_zero()) continue;
    const std::size_t shift = f.size() - dm;
    for (std::size_t i = 0; i < dm; ++i) f[shift + i] = k.reduce(f[shift + i] - m.coeff(i) * top);
  }
  return f;
}

FieldMatrix rational_lift(const NumberField& k, const RationalMatrix& m) {
  FieldMatrix out{std::vector<RationalMatrix>(k.degree(), RationalMatrix(m.rows(), m.cols()))};
  out.coeffs[0] = m;
  return out;
}

// A - tI over Q(t).
FieldMatrix shifted(const NumberField& k, const RationalMatrix& a) {
  FieldMatrix neg_identity = rational_lift(k, Rational(-1) * RationalMatrix::identity(a.rows()));
  return field_add(rational_lift(k, a), field_scale(k, k.generator(), neg_identity));
}

FieldMatrix factor_projection_generic(const NumberField& k, const RationalPolynomial& m, unsigned nu,
                                      const std::vector<RationalMatrix>& a_powers) {
  const Element t = k.generator();
  FieldPoly g;
  for (const auto& c : m.coefficients()) g.push_back(Element::constant(c));
  for (unsigned i = 0; i < nu; ++i) {
    auto [q, r] = divide_linear(k, g, t);
    if (!r.is_zero()) throw std::logic_error("root multiplicity below the minimal polynomial index");
    g = std::move(q);
  }
  // Taylor coefficients of g at t.
  std::vector<Element> taylor;
  FieldPoly q = g;
  for (unsigned i = 0; i < nu; ++i) {
    auto [qq, r] = divide_linear(k, q, t);
    taylor.push_back(r);
    q = std::move(qq);
  }
  // Inverse power series up to order nu.
  std::vector<Element> s(nu);
  const Element g0_inv = k.inverse(taylor[0]);
  s[0] = g0_inv;
  for (unsigned i = 1; i < nu; ++i) {
    Element acc;
    for (unsigned j = 1; j <= i; ++j) acc = acc + k.mul(taylor[j], s[i - j]);
    s[i] = k.mul(-acc, g0_inv);
  }
  // s(x) = sum s_i (x - t)^i, expanded by Horner.
  FieldPoly sx{s[nu - 1]};
  const FieldPoly linear{k.reduce(-t), Element::constant(1)};
  for (unsigned i = nu - 1; i-- > 0;) {
    sx = field_poly_mul(k, sx, linear);
    sx[0] = k.reduce(sx[0] + s[i]);
  }
  FieldPoly e = field_poly_mod(k, field_poly_mul(k, sx, g), m);

  const std::size_t d = a_powers[0].rows();
  FieldMatrix p{std::vector<RationalMatrix>(k.degree(), RationalMatrix(d, d))};
  for (std::size_t l = 0; l < e.size(); ++l) {
    for (std::size_t i = 0; i < k.degree(); ++i) {
      Rational c = e[l].coeff(i);
      if (c != 0) p.coeffs[i] = p.coeffs[i] + c * a_powers[l];
    }
  }
  return p;
}

}  // namespace

SpectralData eigen_structure(const RationalMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("eigen_structure: matrix must be square");
  SpectralData s;
  s.matrix = a;
  const std::size_t d = a.rows();
  if (d == 0) return s;
  s.minpoly = min_poly(a);
  auto pw = powers(a, static_cast<std::size_t>(s.minpoly.degree()) + 1);
  for (const auto& f : factor_poly(s.minpoly)) {
    FactorBlock block;
    block.factor = f.factor;
    block.multiplicity = f.multiplicity;
    block.field = NumberField(f.factor);
    block.projection = factor_projection_generic(block.field, s.minpoly, f.multiplicity, pw);
    const std::size_t fid = s.factors.size();
    for (const auto& root : isolate_roots(f.factor)) {
      block.eigenvalues.push_back(s.eigenvalues.size());
      s.eigenvalues.push_back({root, f.multiplicity, root.is_real(), fid});
    }
    s.nu_max = std::max(s.nu_max, f.multiplicity);
    s.factors.push_back(std::move(block));
  }
  return s;
}

AlgebraicMatrix SpectralData::projection(std::size_t eigenvalue) const {
  const auto& rec = eigenvalues.at(eigenvalue);
  const auto& block = factors[rec.factor_id];
  const std::size_t d = matrix.rows();
  AlgebraicMatrix out(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) out(r, c) = block.field.embed(field_entry(block.projection, r, c), rec.value);
  return out;
}

RationalMatrix SpectralData::factor_projection(std::size_t factor) const {
  const auto& block = factors.at(factor);
  return field_trace(block.field, block.projection);
}

std::optional<std::size_t> SpectralData::find(const AlgebraicNumber& lambda) const {
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i].value == lambda) return i;
  return std::nullopt;
}

CoefficientTable::CoefficientTable(RationalVector observable, std::shared_ptr<const SpectralData> spectral)
    : b_(std::move(observable)), s_(std::move(spectral)) {
  const RationalMatrix& a = s_->matrix;
  if (b_.size() != a.rows()) throw std::invalid_argument("coefficient_table: dimension mismatch");
  for (const auto& block : s_->factors) {
    const NumberField& k = block.field;
    FieldVector w{std::vector<RationalVector>(k.degree(), RationalVector(b_.size(), 0))};
    w.coeffs[0] = b_;
    std::vector<FieldVector> us;
    Integer fact = 1;
    for (unsigned j = 0; j < block.multiplicity; ++j) {
      if (j > 0) {
        w = field_shifted_product(k, w, a);
        fact *= j;
      }
      FieldVector u = field_vec_mat(k, w, block.projection);
      if (fact != 1) u = field_scale(k, Element::constant(Rational(1, fact)), u);
      us.push_back(std::move(u));
    }
    u_.push_back(std::move(us));
  }
}

AlgebraicVector CoefficientTable::vector(std::size_t eigenvalue, unsigned j) const {
  const auto& rec = s_->eigenvalues.at(eigenvalue);
  const auto& block = s_->factors[rec.factor_id];
  const FieldVector& u = generic(rec.factor_id, j);
  AlgebraicVector out;
  for (std::size_t i = 0; i < b_.size(); ++i) out.push_back(block.field.embed(field_entry(u, i), rec.value));
  return out;
}

Element CoefficientTable::dot(std::size_t factor, unsigned j, const RationalVector& x) const {
  return field_dot(generic(factor, j), x);
}

AlgebraicNumber CoefficientTable::value(std::size_t eigenvalue, unsigned j, const RationalVector& x) const {
  const auto& rec = s_->eigenvalues.at(eigenvalue);
  return s_->factors[rec.factor_id].field.embed(dot(rec.factor_id, j, x), rec.value);
}

CoefficientTable coefficient_table(const RationalVector& b, const RationalMatrix& a) {
  return CoefficientTable(b, std::make_shared<const SpectralData>(eigen_structure(a)));
}

CoefficientTable coefficient_table(const RationalVector& b, std::shared_ptr<const SpectralData> spectral) {
  return CoefficientTable(b, std::move(spectral));
}

std::vector<AlgebraicVector> decompose_real_vector(const RationalVector& v, const SpectralData& s) {
  if (v.size() != s.matrix.rows()) throw std::invalid_argument("decompose_real_vector: dimension mismatch");
  std::vector<AlgebraicVector> out;
  for (const auto& rec : s.eigenvalues) {
    const auto& block = s.factors[rec.factor_id];
    FieldMatrix pv = field_mat_vec(block.projection, v);
    AlgebraicVector comp;
    for (std::size_t i = 0; i < v.size(); ++i) comp.push_back(block.field.embed(field_entry(pv, i, 0), rec.value));
    out.push_back(std::move(comp));
  }
  return out;
}

Ordering dominance_order(const std::pair<AlgebraicNumber, unsigned>& p, const std::pair<AlgebraicNumber, unsigned>& q) {
  Ordering c = compare_real(p.first, q.first);
  if (c != Ordering::Equal) return c;
  if (p.second < q.second) return Ordering::Less;
  if (p.second > q.second) return Ordering::Greater;
  return Ordering::Equal;
}

namespace {

// P(s) P(t) in Q[s,t]/(p(s), (p(t)-p(s))/(t-s)): zero iff P_a P_b = 0 for
// every ordered pair of distinct roots a, b of p.
bool distinct_roots_orthogonal(const NumberField& k, const FieldMatrix& p) {
  const std::size_t n = k.degree();
  if (n < 2) return true;
  const RationalPolynomial& poly = k.modulus();
  const std::size_t d = p.coeffs[0].rows();
  // grid[a][b] : coefficient of s^a t^b
  std::vector<std::vector<RationalMatrix>> grid(2 * n, std::vector<RationalMatrix>(n, RationalMatrix(d, d)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!p.coeffs[a].is_zero() && !p.coeffs[b].is_zero()) grid[a][b] = p.coeffs[a] * p.coeffs[b];
  // t^(n-1) = -sum_{k<n-1} h_k(s) t^k, h_k(s) = sum_{i>k} p_i s^(i-1-k)
  for (std::size_t a = 0; a < n; ++a) {
    const RationalMatrix top = grid[a][n - 1];
    if (top.is_zero()) continue;
    grid[a][n - 1] = RationalMatrix(d, d);
    for (std::size_t kk = 0; kk + 1 < n; ++kk) {
      for (std::size_t i = kk + 1; i <= n; ++i) {
        Rational c = poly.coeff(i);
        if (c == 0) continue;
        std::size_t e = i - 1 - kk;
        grid[a + e][kk] = grid[a + e][kk] - c * top;
      }
    }
  }
  for (std::size_t b = 0; b + 1 < n; ++b) {
    std::vector<RationalMatrix> col(n, RationalMatrix(d, d));
    for (std::size_t a = 0; a < 2 * n; ++a) {
      if (grid[a][b].is_zero()) continue;
      const auto& red = k.power(a);
      for (std::size_t i = 0; i < n; ++i)
        if (red[i] != 0) col[i] = col[i] + red[i] * grid[a][b];
    }
    for (const auto& m : col)
      if (!m.is_zero()) return false;
  }
  return true;
}

bool cross_orthogonal(const FieldMatrix& p, const FieldMatrix& q) {
  // Monomials s^a t^b with a, b below the degrees form a basis.
  for (const auto& ma : p.coeffs)
    for (const auto& mb : q.coeffs)
      if (!(ma * mb).is_zero()) return false;
  return true;
}

}  // namespace

ProjectionReport check_projections(const SpectralData& s) {
  ProjectionReport r;
  const std::size_t d = s.matrix.rows();
  RationalMatrix sum(d, d);
  r.idempotent = r.nilpotent = r.orthogonal = true;
  for (std::size_t f = 0; f < s.factors.size(); ++f) {
    const auto& block = s.factors[f];
    const NumberField& k = block.field;
    sum = sum + field_trace(k, block.projection);
    FieldMatrix sq = field_mul(k, block.projection, block.projection);
    if (!is_zero(field_add(sq, field_scale(k, Element::constant(-1), block.projection)))) r.idempotent = false;
    FieldMatrix n = block.projection;
    FieldMatrix sh = shifted(k, s.matrix);
    for (unsigned i = 0; i < block.multiplicity; ++i) n = field_mul(k, sh, n);
    if (!is_zero(n)) r.nilpotent = false;
    if (!distinct_roots_orthogonal(k, block.projection)) r.orthogonal = false;
    for (std::size_t g = f + 1; g < s.factors.size(); ++g) {
      if (!cross_orthogonal(block.projection, s.factors[g].projection)) r.orthogonal = false;
      if (!cross_orthogonal(s.factors[g].projection, block.projection)) r.orthogonal = false;
    }
  }
  r.sum_is_identity = d == 0 || sum == RationalMatrix::identity(d);
  return r;
}

bool check_moment_identity(const CoefficientTable& table, unsigned max_k) {
  const SpectralData& s = table.spectral();
  const RationalMatrix& a = s.matrix;
  RationalVector lhs = table.observable();
  for (unsigned kk = 0; kk <= max_k; ++kk) {
    if (kk > 0) lhs = vec_mat(lhs, a);
    RationalVector rhs(lhs.size(), 0);
    for (std::size_t f = 0; f < s.factors.size(); ++f) {
      const auto& block = s.factors[f];
      const NumberField& k = block.field;
      FieldVector acc{std::vector<RationalVector>(k.degree(), RationalVector(lhs.size(), 0))};
      for (unsigned j = 0; j < block.multiplicity && j <= kk; ++j) {
        // t^(k-j) * k!/(k-j)!
        Rational ratio(factorial(kk), factorial(kk - j));
        ratio.canonicalize();
        Element w = Element::constant(ratio);
        for (unsigned e = 0; e < kk - j; ++e) w = k.mul(w, k.generator());
        FieldVector term = field_scale(k, w, table.generic(f, j));
        for (std::size_t i = 0; i < k.degree(); ++i)
          for (std::size_t c = 0; c < lhs.size(); ++c) acc.coeffs[i][c] += term.coeffs[i][c];
      }
      RationalVector tr = field_trace(k, acc);
      for (std::size_t c = 0; c < lhs.size(); ++c) rhs[c] += tr[c];
    }
    if (rhs != lhs) return false;
  }
  return true;
}

}  // namespace polyescape
