#include "polyescape/algebraic.hpp"
#include "polyescape/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "polyescape/factor.hpp"

namespace polyescape {

// ---------------------------------------------------------------------------
// Complex helpers

Rational abs_upper(const ComplexRational& z) {
  if (z.im == 0) return abs(z.re);
  if (z.re == 0) return abs(z.im);
  return sqrt_upper(z.norm2(), 64);
}

namespace {

Rational abs_lower(const ComplexRational& z) {
  if (z.im == 0) return abs(z.re);
  if (z.re == 0) return abs(z.im);
  Rational n = z.norm2();
  if (n == 0) return 0;
  return sqrt_lower_strict(n, 64);
}

ComplexRational round_dyadic(const ComplexRational& z, unsigned bits) {
  return {polyescape::round_dyadic(z.re, bits), polyescape::round_dyadic(z.im, bits)};
}

// |a - b| <= r, exactly.
bool within(const ComplexRational& a, const ComplexRational& b, const Rational& r) {
  return (a - b).norm2() <= r * r;
}

ComplexRational eval(const RationalPolynomial& p, const ComplexRational& z) {
  ComplexRational acc;
  const auto& c = p.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * z;
    acc.re += c[i];
  }
  return acc;
}

unsigned bits_for(const Rational& target) {
  // Smallest b with 2^-b <= target (target > 0), plus guard bits.
  if (target <= 0) return 64;
  long e = 0;
  Rational t = target;
  while (t < 1) {
    t *= 2;
    ++e;
  }
  return static_cast<unsigned>(e) + 32;
}

Rational power_of_two_at_least(const Rational& x) {
  Rational b = 1;
  while (b < x) b *= 2;
  return b;
}

// ---- Aberth iteration in GMP floating point ----

struct ComplexFloat {
  mpf_class re, im;
};

std::vector<ComplexRational> aberth(const RationalPolynomial& p_in, unsigned bits) {
  RationalPolynomial p = p_in.monic();
  const int n = p.degree();
  std::vector<ComplexRational> out;
  if (n <= 0) return out;
  std::vector<mpf_class> a;
  for (const auto& c : p.coefficients()) a.emplace_back(c, bits);

  // Fujiwara-style radius for the starting circle.
  double log_r = -1e300;
  for (int k = 0; k < n; ++k) {
    if (p.coeff(static_cast<std::size_t>(k)) == 0) continue;
    long exp2 = 0;
    double m = mpf_get_d_2exp(&exp2, a[static_cast<std::size_t>(k)].get_mpf_t());
    double l = (std::log2(std::fabs(m)) + static_cast<double>(exp2)) / static_cast<double>(n - k);
    log_r = std::max(log_r, l);
  }
  if (log_r < -1e299) log_r = 0;
  const double r0 = std::exp2(std::min(log_r + 1.0, 1000.0));

  std::vector<ComplexFloat> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * M_PI * k / n + 0.4;
    z[static_cast<std::size_t>(k)].re = mpf_class(r0 * std::cos(ang), bits);
    z[static_cast<std::size_t>(k)].im = mpf_class(r0 * std::sin(ang), bits);
  }
  mpf_class tol(1, bits);
  mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), bits > 16 ? bits - 16 : bits);

  for (int iter = 0; iter < 2000; ++iter) {
    bool converged = true;
    for (int k = 0; k < n; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      mpf_class pr(0, bits), pi(0, bits), dr(0, bits), di(0, bits);
      for (int i = n; i >= 0; --i) {
        // derivative first (uses old p value)
        mpf_class ndr = dr * zk.re - di * zk.im + pr;
        mpf_class ndi = dr * zk.im + di * zk.re + pi;
        dr = ndr;
        di = ndi;
        mpf_class npr = pr * zk.re - pi * zk.im + a[static_cast<std::size_t>(i)];
        mpf_class npi = pr * zk.im + pi * zk.re;
        pr = npr;
        pi = npi;
      }
      mpf_class dn = dr * dr + di * di;
      if (dn == 0) {
        zk.re += mpf_class(1e-3, bits);
        converged = false;
        continue;
      }
      // w = p / p'
      mpf_class wr = (pr * dr + pi * di) / dn;
      mpf_class wi = (pi * dr - pr * di) / dn;
      mpf_class sr(0, bits), si(0, bits);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        const auto& zj = z[static_cast<std::size_t>(j)];
        mpf_class xr = zk.re - zj.re, xi = zk.im - zj.im;
        mpf_class xn = xr * xr + xi * xi;
        if (xn == 0) continue;
        sr += xr / xn;
        si -= xi / xn;
      }
      // corr = w / (1 - w*s)
      mpf_class qr = 1 - (wr * sr - wi * si);
      mpf_class qi = -(wr * si + wi * sr);
      mpf_class qn = qr * qr + qi * qi;
      mpf_class cr, ci;
      if (qn == 0) {
        cr = wr;
        ci = wi;
      } else {
        cr = (wr * qr + wi * qi) / qn;
        ci = (wi * qr - wr * qi) / qn;
      }
      zk.re -= cr;
      zk.im -= ci;
      mpf_class mag = abs(zk.re) + abs(zk.im);
      if (mag < 1) mag = 1;
      if (abs(cr) + abs(ci) > tol * mag) converged = false;
    }
    if (converged) break;
  }
  for (const auto& zk : z) {
    Rational re(zk.re), im(zk.im);
    re.canonicalize();
    im.canonicalize();
    out.push_back({polyescape::round_dyadic(re, bits), polyescape::round_dyadic(im, bits)});
  }
  return out;
}

// Newton iteration from z0 towards a root of irreducible p. Returns a disk
// (center, radius) certified to contain a root, with radius <= target; when
// `outer` is given, the disk is additionally nested inside it.
std::optional<std::pair<ComplexRational, Rational>> newton_certify(
    const RationalPolynomial& p, ComplexRational z, const Rational& target,
    const std::optional<std::pair<ComplexRational, Rational>>& outer) {
  const RationalPolynomial dp = p.derivative();
  const Rational n2 = Rational(p.degree()) * p.degree();
  const unsigned bits = bits_for(target) + 16;
  for (int iter = 0; iter < 80; ++iter) {
    ComplexRational fz = eval(p, z);
    ComplexRational dfz = eval(dp, z);
    if (dfz.norm2() == 0) return std::nullopt;
    ComplexRational step = fz / dfz;
    // Some root lies within deg * |p(z)/p'(z)| of z.
    Rational rho = sqrt_upper(n2 * step.norm2(), bits);
    if (rho == 0) rho = target / 2;
    if (rho <= target) {
      if (!outer) return std::make_pair(z, rho);
      Rational dist = abs_upper(z - outer->first);
      if (dist + rho <= outer->second) return std::make_pair(z, rho);
    }
    z = round_dyadic(z - step, bits);
  }
  return std::nullopt;
}

std::vector<Rational> taylor_abs_upper(const RationalPolynomial& p, const ComplexRational& c) {
  // Coefficients of p(c + w) in w, returned as upper bounds of their moduli.
  std::vector<ComplexRational> q;
  for (const auto& v : p.coefficients()) q.emplace_back(v);
  const std::size_t n = q.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) q[j - 1] = q[j - 1] + c * q[j];
  std::vector<Rational> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(i == 0 ? abs_lower(q[0]) : abs_upper(q[i]));
  return out;
}

}  // namespace

bool excludes_roots(const RationalPolynomial& p, const ComplexRational& center, const Rational& radius) {
  if (p.degree() <= 0) return true;
  auto c = taylor_abs_upper(p, center);
  Rational sum = 0;
  Rational rk = 1;
  for (std::size_t k = 1; k < c.size(); ++k) {
    rk *= radius;
    sum += c[k] * rk;
  }
  return c[0] > sum;
}

// ---------------------------------------------------------------------------
// Separation bound

Rational mignotte_bound(const IntegerPolynomial& f) {
  const int d = f.degree();
  if (d < 2) throw std::invalid_argument("mignotte_bound needs degree >= 2");
  const Integer h = height(f);
  // bound^2 = 6 / (d^(d+1) * H^(2(d-1)))
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(d + 1));
  Integer hp;
  mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(2 * (d - 1)));
  Rational sq(6, den * hp);
  sq.canonicalize();
  // Keep enough bits to stay strictly positive.
  unsigned bits = static_cast<unsigned>(mpz_sizeinbase(den.get_mpz_t(), 2) + mpz_sizeinbase(hp.get_mpz_t(), 2)) / 2 + 16;
  return sqrt_lower_strict(sq, bits);
}

Rational mignotte_bound(const RationalPolynomial& p) { return mignotte_bound(primitive_integer(p)); }

// ---------------------------------------------------------------------------
// Node

struct AlgebraicNumber::Node {
  RationalPolynomial minpoly;
  bool real = true;
  std::optional<Rational> exact;
  Rational sep;  // 0 for rationals

  mutable std::mutex mu;
  // real irrational: isolating interval with p(lo) of sign sign_lo
  mutable Rational lo, hi;
  int sign_lo = 0;
  // non-real: isolating disk
  mutable ComplexRational center;
  mutable Rational radius;
  // elements of number fields this value is known to equal
  mutable std::vector<std::pair<std::weak_ptr<const EmbeddedField>, RationalPolynomial>> tags;
};

class AlgebraicAccess {
 public:
  static const AlgebraicNumber::Node& node(const AlgebraicNumber& a) { return *a.node_; }
  static AlgebraicNumber real(const RationalPolynomial& p, Rational lo, Rational hi) {
    return AlgebraicNumber::make_real(p, std::move(lo), std::move(hi));
  }
  static AlgebraicNumber complex(const RationalPolynomial& p, ComplexRational c, Rational r) {
    return AlgebraicNumber::make_complex(p, std::move(c), std::move(r));
  }
};

namespace {

std::shared_ptr<AlgebraicNumber::Node> rational_node(const Rational& v) {
  auto n = std::make_shared<AlgebraicNumber::Node>();
  n->minpoly = RationalPolynomial({Rational(-v), Rational(1)});
  n->real = true;
  n->exact = v;
  n->sep = 0;
  n->lo = n->hi = v;
  n->center = v;
  n->radius = 1;
  return n;
}

void refine_real_locked(const AlgebraicNumber::Node& n, const Rational& width) {
  while (n.hi - n.lo > width) {
    Rational mid = (n.lo + n.hi) / 2;
    int s = sgn(n.minpoly.evaluate(mid));
    if (s == 0) {
      // Cannot happen for irreducible polynomials of degree >= 2.
      throw std::logic_error("rational root inside irrational isolating interval");
    }
    if (s == n.sign_lo) {
      n.lo = mid;
    } else {
      n.hi = mid;
    }
  }
}

void refine_complex_locked(const AlgebraicNumber::Node& n, const Rational& target) {
  if (n.radius <= target) return;
  Rational goal = target;
  for (int attempt = 0; attempt < 6; ++attempt) {
    auto res = newton_certify(n.minpoly, n.center, goal, std::make_pair(n.center, n.radius));
    if (res) {
      n.center = res->first;
      n.radius = res->second;
      return;
    }
    goal /= 1024;
  }
  // Newton did not settle: fall back on global approximations.
  for (unsigned bits = 256; bits <= 8192; bits *= 2) {
    for (const auto& z : aberth(n.minpoly, bits)) {
      if (!within(z, n.center, n.radius)) continue;
      auto res = newton_certify(n.minpoly, z, target, std::make_pair(n.center, n.radius));
      if (res) {
        n.center = res->first;
        n.radius = res->second;
        return;
      }
    }
  }
  throw std::runtime_error("failed to refine complex algebraic number");
}

}  // namespace

AlgebraicNumber::AlgebraicNumber() : node_(rational_node(0)) {}
AlgebraicNumber::AlgebraicNumber(const Rational& value) : node_(rational_node(value)) {}
AlgebraicNumber::AlgebraicNumber(int value) : node_(rational_node(Rational(value))) {}

AlgebraicNumber AlgebraicNumber::make_real(const RationalPolynomial& p, Rational lo, Rational hi) {
  if (p.degree() == 1) return AlgebraicNumber(Rational(-p.coeff(0) / p.coeff(1)));
  auto n = std::make_shared<Node>();
  n->minpoly = p.monic();
  n->real = true;
  n->sep = mignotte_bound(n->minpoly);
  n->lo = std::move(lo);
  n->hi = std::move(hi);
  n->sign_lo = sgn(n->minpoly.evaluate(n->lo));
  int sign_hi = sgn(n->minpoly.evaluate(n->hi));
  if (n->sign_lo == 0 || sign_hi == 0 || n->sign_lo == sign_hi) {
    throw std::logic_error("real isolating interval without a sign change");
  }
  // Canonical: the interval's half-width is below half the separation bound,
  // so the enclosing disk holds no other complex root.
  refine_real_locked(*n, n->sep / 2);
  n->center = Rational((n->lo + n->hi) / 2);
  n->radius = (n->hi - n->lo) / 2;
  return AlgebraicNumber(std::move(n));
}

AlgebraicNumber AlgebraicNumber::make_complex(const RationalPolynomial& p, ComplexRational center, Rational radius) {
  auto n = std::make_shared<Node>();
  n->minpoly = p.monic();
  n->real = false;
  n->sep = mignotte_bound(n->minpoly);
  n->center = std::move(center);
  n->radius = std::move(radius);
  if (n->radius >= n->sep / 2) refine_complex_locked(*n, n->sep / 4);
  if (abs(n->center.im) <= n->radius) throw std::logic_error("complex isolating disk meets the real axis");
  return AlgebraicNumber(std::move(n));
}

const RationalPolynomial& AlgebraicNumber::minpoly() const { return node_->minpoly; }
bool AlgebraicNumber::is_real() const { return node_->real; }
bool AlgebraicNumber::is_rational() const { return node_->exact.has_value(); }
const Rational& AlgebraicNumber::rational_value() const {
  if (!node_->exact) throw std::logic_error("algebraic number is not rational");
  return *node_->exact;
}
const Rational& AlgebraicNumber::separation() const { return node_->sep; }

ComplexRational AlgebraicNumber::approx() const {
  std::lock_guard<std::mutex> lock(node_->mu);
  if (node_->real && !node_->exact) return ComplexRational((node_->lo + node_->hi) / 2);
  return node_->center;
}

Rational AlgebraicNumber::radius() const {
  std::lock_guard<std::mutex> lock(node_->mu);
  if (node_->real && !node_->exact) return (node_->hi - node_->lo) / 2;
  return node_->radius;
}

std::pair<ComplexRational, Rational> AlgebraicNumber::approximate(const Rational& target) const {
  const Node& n = *node_;
  if (n.exact) return {ComplexRational(*n.exact), Rational(0)};
  std::lock_guard<std::mutex> lock(n.mu);
  if (n.real) {
    refine_real_locked(n, 2 * target);
    return {ComplexRational((n.lo + n.hi) / 2), Rational((n.hi - n.lo) / 2)};
  }
  refine_complex_locked(n, target);
  return {n.center, n.radius};
}

std::pair<Rational, Rational> AlgebraicNumber::interval(const Rational& target) const {
  const Node& n = *node_;
  if (!n.real) throw std::domain_error("interval of a non-real algebraic number");
  if (n.exact) return {*n.exact, *n.exact};
  std::lock_guard<std::mutex> lock(n.mu);
  refine_real_locked(n, target);
  return {n.lo, n.hi};
}

AlgebraicNumber AlgebraicNumber::refine(const Rational& target) const {
  if (node_->exact) return *this;
  auto [c, r] = approximate(target);
  auto n = std::make_shared<Node>();
  n->minpoly = node_->minpoly;
  n->real = node_->real;
  n->sep = node_->sep;
  if (n->real) {
    auto [lo, hi] = interval(2 * target);
    n->lo = lo;
    n->hi = hi;
    n->sign_lo = node_->sign_lo;
    n->center = Rational((lo + hi) / 2);
    n->radius = (hi - lo) / 2;
  } else {
    n->center = c;
    n->radius = r;
  }
  return AlgebraicNumber(std::move(n));
}

double AlgebraicNumber::to_double() const { return approximate(Rational(1, Integer(1) << 60)).first.re.get_d(); }

std::complex<double> AlgebraicNumber::to_complex() const {
  auto c = approximate(Rational(1, Integer(1) << 60)).first;
  return {c.re.get_d(), c.im.get_d()};
}

AlgebraicNumber AlgebraicNumber::from_isolation(const RationalPolynomial& p_in, const ComplexRational& approx,
                                                const Rational& radius) {
  if (p_in.degree() < 1) throw std::invalid_argument("minimal polynomial must have degree >= 1");
  if (radius <= 0) throw std::invalid_argument("isolation radius must be positive");
  if (!is_irreducible(p_in)) throw std::invalid_argument("minimal polynomial is not irreducible");
  RationalPolynomial p = p_in.monic();
  if (p.degree() == 1) {
    Rational root = -p.coeff(0);
    if (!within(ComplexRational(root), approx, radius)) throw std::invalid_argument("no root within the isolation radius");
    return AlgebraicNumber(root);
  }
  auto roots = isolate_roots(p);
  for (int round = 0; round < 200; ++round) {
    std::vector<std::size_t> touching, inside;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      auto c = roots[i].approx();
      auto r = roots[i].radius();
      Rational d = abs_upper(c - approx);
      Rational dl = abs_lower(c - approx);
      if (dl <= radius + r) touching.push_back(i);
      if (d + r <= radius) inside.push_back(i);
    }
    if (inside.size() >= 2) throw std::invalid_argument("isolation disk contains more than one root");
    if (touching.empty()) throw std::invalid_argument("no root within the isolation radius");
    if (touching.size() == 1 && inside.size() == 1) return roots[inside[0]];
    for (auto& r : roots) r = r.refine(r.radius() / 4);
  }
  throw std::invalid_argument("could not certify the isolation disk");
}

// ---------------------------------------------------------------------------
// Identification of a root given an approximation

AlgebraicNumber AlgebraicNumber::identify(
    const RationalPolynomial& p, ComplexRational approx, Rational error, std::optional<bool> known_real,
    const std::function<std::pair<ComplexRational, Rational>(const Rational&)>& improve) {
  std::vector<RationalPolynomial> factors;
  for (const auto& f : factor_poly(p)) factors.push_back(f.factor);
  if (factors.empty()) throw std::invalid_argument("identify: constant polynomial");

  RationalPolynomial f;
  for (int round = 0;; ++round) {
    std::vector<const RationalPolynomial*> cand;
    for (const auto& g : factors) {
      if (factors.size() == 1 || !excludes_roots(g, approx, error)) cand.push_back(&g);
    }
    if (cand.size() == 1) {
      f = *cand[0];
      break;
    }
    if (cand.empty()) throw std::logic_error("identify: every factor excluded");
    if (round > 400) throw std::runtime_error("identify: could not separate factors");
    Rational next = error == 0 ? Rational(0) : Rational(error / 65536);
    if (next == 0) {
      // Exact approximation that is a root of several factors cannot happen
      // (factors are coprime); shrink an artificial radius instead.
      throw std::logic_error("identify: exact approximation matches several factors");
    }
    std::tie(approx, error) = improve(next);
  }

  if (f.degree() == 1) return AlgebraicNumber(Rational(-f.coeff(0)));

  const Rational sep = mignotte_bound(f);
  if (error >= sep / 4) std::tie(approx, error) = improve(sep / 8);
  bool real;
  if (known_real) {
    real = *known_real;
  } else {
    for (int round = 0;; ++round) {
      if (abs(approx.im) > error) {
        real = false;
        break;
      }
      if (abs(approx.im) + error < sep / 2) {
        real = true;
        break;
      }
      if (round > 200) throw std::runtime_error("identify: realness undecided");
      std::tie(approx, error) = improve(error / 256);
    }
  }
  if (real) {
    Rational e = error == 0 ? Rational(sep / 8) : error;
    // Widen slightly so the endpoints are not the root itself.
    return make_real(f, approx.re - e, approx.re + e);
  }
  Rational e = error == 0 ? Rational(sep / 8) : error;
  return make_complex(f, approx, e);
}

// ---------------------------------------------------------------------------
// Resultants

namespace {

// Newton interpolation through (0, v0), (1, v1), ..., returned in monomial form.
RationalPolynomial interpolate_integer_nodes(const std::vector<Rational>& values) {
  const std::size_t n = values.size();
  std::vector<Rational> dd(values);
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / Rational(static_cast<long>(k));
  RationalPolynomial result;
  for (std::size_t k = n; k-- > 0;) {
    // result = result * (x - k) + dd[k]
    result = result * RationalPolynomial({Rational(-static_cast<long>(k)), Rational(1)}) +
             RationalPolynomial::constant(dd[k]);
  }
  return result;
}

}  // namespace

RationalPolynomial sum_resultant(const RationalPolynomial& p, const RationalPolynomial& q) {
  const std::size_t deg = static_cast<std::size_t>(p.degree() * q.degree());
  std::vector<Rational> values;
  for (std::size_t i = 0; i <= deg; ++i) {
    // q(x0 - y) as a polynomial in y
    RationalPolynomial qy = q.taylor_shift(Rational(static_cast<long>(i))).scale_argument(Rational(-1));
    values.push_back(resultant(p, qy));
  }
  return interpolate_integer_nodes(values);
}

RationalPolynomial product_resultant(const RationalPolynomial& p, const RationalPolynomial& q) {
  const std::size_t m = static_cast<std::size_t>(q.degree());
  const std::size_t deg = static_cast<std::size_t>(p.degree()) * m;
  std::vector<Rational> values;
  for (std::size_t i = 0; i <= deg; ++i) {
    // y^m q(x0 / y) = sum q_k x0^k y^(m-k)
    std::vector<Rational> c(m + 1, 0);
    Rational xp = 1;
    for (std::size_t k = 0; k <= m; ++k) {
      c[m - k] = q.coeff(k) * xp;
      xp *= static_cast<long>(i);
    }
    values.push_back(resultant(p, RationalPolynomial(std::move(c))));
  }
  return interpolate_integer_nodes(values);
}

// ---------------------------------------------------------------------------
// Arithmetic

namespace {

AlgebraicNumber translate(const AlgebraicNumber& a, const Rational& r);
AlgebraicNumber scale(const AlgebraicNumber& a, const Rational& r);

}  // namespace

void AlgebraicNumber::attach(const std::shared_ptr<const EmbeddedField>& field,
                             const RationalPolynomial& element) const {
  if (is_rational()) return;
  std::lock_guard<std::mutex> lock(node_->mu);
  auto& tags = node_->tags;
  tags.erase(std::remove_if(tags.begin(), tags.end(), [](const auto& t) { return t.first.expired(); }), tags.end());
  for (const auto& t : tags)
    if (t.first.lock() == field) return;
  tags.emplace_back(field, element);
}

std::optional<RationalPolynomial> AlgebraicNumber::element_in(const EmbeddedField& field) const {
  if (is_rational()) return RationalPolynomial::constant(rational_value());
  std::lock_guard<std::mutex> lock(node_->mu);
  for (const auto& t : node_->tags)
    if (auto f = t.first.lock(); f.get() == &field) return t.second;
  return std::nullopt;
}

namespace {

using Tags = std::vector<std::pair<std::shared_ptr<const EmbeddedField>, RationalPolynomial>>;

Tags live_tags(const AlgebraicNumber::Node& n) {
  std::lock_guard<std::mutex> lock(n.mu);
  Tags out;
  for (const auto& t : n.tags)
    if (auto f = t.first.lock()) out.emplace_back(std::move(f), t.second);
  return out;
}

struct SharedField {
  std::shared_ptr<const EmbeddedField> field;
  RationalPolynomial a, b;
};

std::optional<SharedField> shared_field(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  Tags ta = live_tags(AlgebraicAccess::node(a));
  if (ta.empty()) return std::nullopt;
  Tags tb = live_tags(AlgebraicAccess::node(b));
  for (const auto& [fa, ea] : ta)
    for (const auto& [fb, eb] : tb)
      if (fa == fb) return SharedField{fa, ea, eb};
  return std::nullopt;
}

// Carries the field tags of src over to dst under an affine map e -> s e + t.
void propagate(const AlgebraicNumber& src, const AlgebraicNumber& dst, const Rational& s, const Rational& t) {
  if (dst.is_rational()) return;
  for (const auto& [f, e] : live_tags(AlgebraicAccess::node(src)))
    dst.attach(f, s * e + RationalPolynomial::constant(t));
}

}  // namespace

AlgebraicNumber AlgebraicNumber::combine(const AlgebraicNumber& a, const AlgebraicNumber& b, bool multiply) {
  if (auto sf = shared_field(a, b)) {
    const NumberField& k = sf->field->field();
    return sf->field->value(multiply ? k.mul(sf->a, sf->b) : k.reduce(sf->a + sf->b));
  }
  RationalPolynomial r = multiply ? product_resultant(a.minpoly(), b.minpoly()) : sum_resultant(a.minpoly(), b.minpoly());
  auto improve = [&](const Rational& target) -> std::pair<ComplexRational, Rational> {
    if (!multiply) {
      auto [ca, ea] = a.approximate(target / 2);
      auto [cb, eb] = b.approximate(target / 2);
      return {ca + cb, ea + eb};
    }
    auto [ca0, ea0] = a.approximate(Rational(1, 16));
    auto [cb0, eb0] = b.approximate(Rational(1, 16));
    Rational ma = abs_upper(ca0) + 1, mb = abs_upper(cb0) + 1;
    Rational t = target / (2 * (ma + mb + 1));
    auto [ca, ea] = a.approximate(t);
    auto [cb, eb] = b.approximate(t);
    Rational err = abs_upper(ca) * eb + abs_upper(cb) * ea + ea * eb;
    return {ca * cb, err};
  };
  auto [c0, e0] = improve(Rational(1, Integer(1) << 24));
  std::optional<bool> known_real;
  if (a.is_real() && b.is_real()) known_real = true;
  return identify(r, c0, e0, known_real, improve);
}

namespace {

AlgebraicNumber translate_raw(const AlgebraicNumber& a, const Rational& r);

AlgebraicNumber translate(const AlgebraicNumber& a, const Rational& r) {
  if (r == 0) return a;
  if (a.is_rational()) return AlgebraicNumber(Rational(a.rational_value() + r));
  AlgebraicNumber out = translate_raw(a, r);
  propagate(a, out, Rational(1), r);
  return out;
}

AlgebraicNumber translate_raw(const AlgebraicNumber& a, const Rational& r) {
  const auto& n = AlgebraicAccess::node(a);
  RationalPolynomial p = a.minpoly().taylor_shift(-r);
  if (n.real) {
    auto [lo, hi] = a.interval(2 * a.radius());
    // Same root distances, so the existing isolation carries over.
    return AlgebraicNumber::from_approximation(p, ComplexRational(Rational((lo + hi) / 2 + r)), Rational((hi - lo) / 2),
                                               true, [&](const Rational& t) {
                                                 auto [c, e] = a.approximate(t);
                                                 return std::make_pair(c + ComplexRational(r), e);
                                               });
  }
  auto [c, e] = a.approximate(a.radius());
  return AlgebraicNumber::from_approximation(p, c + ComplexRational(r), e, false, [&](const Rational& t) {
    auto [c2, e2] = a.approximate(t);
    return std::make_pair(c2 + ComplexRational(r), e2);
  });
}

AlgebraicNumber scale_raw(const AlgebraicNumber& a, const Rational& r);

AlgebraicNumber scale(const AlgebraicNumber& a, const Rational& r) {
  if (r == 0) return AlgebraicNumber(0);
  if (r == 1) return a;
  if (a.is_rational()) return AlgebraicNumber(Rational(a.rational_value() * r));
  AlgebraicNumber out = scale_raw(a, r);
  propagate(a, out, r, Rational(0));
  return out;
}

AlgebraicNumber scale_raw(const AlgebraicNumber& a, const Rational& r) {
  RationalPolynomial p = a.minpoly().scale_argument(Rational(1 / r)).monic();
  const Rational ar = abs(r);
  auto [c, e] = a.approximate(a.radius());
  return AlgebraicNumber::from_approximation(p, c * ComplexRational(r), e * ar, a.is_real(),
                                             [&](const Rational& t) {
                                               auto [c2, e2] = a.approximate(t / ar);
                                               return std::make_pair(c2 * ComplexRational(r), Rational(e2 * ar));
                                             });
}

}  // namespace

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational() && b.is_rational()) return AlgebraicNumber(Rational(a.rational_value() + b.rational_value()));
  if (a.is_rational()) return translate(b, a.rational_value());
  if (b.is_rational()) return translate(a, b.rational_value());
  if (a.node_ == b.node_) return scale(a, 2);
  return AlgebraicNumber::combine(a, b, false);
}

AlgebraicNumber operator-(const AlgebraicNumber& a) { return scale(a, -1); }

AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.node_ == b.node_) return AlgebraicNumber(0);
  return a + (-b);
}

AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational() && b.is_rational()) return AlgebraicNumber(Rational(a.rational_value() * b.rational_value()));
  if (a.is_rational()) return scale(b, a.rational_value());
  if (b.is_rational()) return scale(a, b.rational_value());
  return AlgebraicNumber::combine(a, b, true);
}

AlgebraicNumber AlgebraicNumber::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (is_rational()) return AlgebraicNumber(Rational(1 / rational_value()));
  for (const auto& [f, e] : live_tags(*node_)) return f->value(f->field().inverse(e));
  RationalPolynomial p = minpoly().reversed().monic();
  const AlgebraicNumber self = *this;
  auto improve = [self](const Rational& target) -> std::pair<ComplexRational, Rational> {
    // |1/v - 1/c| <= e / (|c| (|c| - e))
    Rational t = target;
    for (;;) {
      auto [c, e] = self.approximate(t);
      Rational lower = abs_lower(c);
      if (lower > 2 * e) {
        Rational err = e / (lower * (lower - e));
        if (err <= target) return {ComplexRational(1) / c, err};
      }
      t /= 16;
    }
  };
  auto [c0, e0] = improve(Rational(1, Integer(1) << 24));
  return identify(p, c0, e0, is_real(), improve);
}

AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.node_ == b.node_) return AlgebraicNumber(1);
  if (b.is_rational()) return scale(a, Rational(1 / b.rational_value()));
  return a * b.inverse();
}

AlgebraicNumber AlgebraicNumber::conj() const {
  if (is_real()) return *this;
  auto n = std::make_shared<Node>();
  n->minpoly = node_->minpoly;
  n->real = false;
  n->sep = node_->sep;
  auto [c, r] = approximate(radius());
  n->center = c.conj();
  n->radius = r;
  return AlgebraicNumber(std::move(n));
}

AlgebraicNumber AlgebraicNumber::real_part() const {
  if (is_real()) return *this;
  return scale(*this + conj(), Rational(1, 2));
}

AlgebraicNumber AlgebraicNumber::imag_part() const {
  if (is_real()) return AlgebraicNumber(0);
  // (v - conj v) / (2i) = (v - conj v) * (-i/2)
  static const AlgebraicNumber minus_half_i = make_complex(RationalPolynomial({Rational(1, 4), 0, 1}),
                                                           ComplexRational(0, Rational(-1, 2)), Rational(1, 16));
  AlgebraicNumber r = (*this - conj()) * minus_half_i;
  return r;
}

// ---------------------------------------------------------------------------
// Comparison

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_rational() != b.is_rational()) return false;
  if (a.is_rational()) return a.rational_value() == b.rational_value();
  if (a.is_real() != b.is_real()) return false;
  if (a.minpoly() != b.minpoly()) return false;
  if (auto sf = shared_field(a, b)) return sf->a == sf->b;
  const Rational quarter = a.separation() / 4;
  auto [ca, ra] = a.approximate(quarter);
  auto [cb, rb] = b.approximate(quarter);
  return within(ca, cb, ra + rb);
}

Sign sign_real(const AlgebraicNumber& a) {
  if (!a.is_real()) throw std::domain_error("sign_real of a non-real number");
  if (a.is_rational()) return static_cast<Sign>(sgn(a.rational_value()));
  Rational width = a.radius() * 2;
  for (;;) {
    auto [lo, hi] = a.interval(width);
    if (lo > 0) return Sign::Positive;
    if (hi < 0) return Sign::Negative;
    width /= 4;
  }
}

Ordering compare_real(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (!a.is_real() || !b.is_real()) throw std::domain_error("compare_real of a non-real number");
  if (a.is_rational() && b.is_rational()) {
    int c = cmp(a.rational_value(), b.rational_value());
    return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
  }
  if (a == b) return Ordering::Equal;
  Rational wa = a.is_rational() ? Rational(0) : Rational(a.radius() * 2);
  Rational wb = b.is_rational() ? Rational(0) : Rational(b.radius() * 2);
  for (;;) {
    auto [alo, ahi] = a.interval(wa);
    auto [blo, bhi] = b.interval(wb);
    if (ahi < blo) return Ordering::Less;
    if (bhi < alo) return Ordering::Greater;
    wa /= 4;
    wb /= 4;
  }
}

// ---------------------------------------------------------------------------
// Root isolation

namespace {

std::vector<AlgebraicNumber> real_roots_irreducible(const RationalPolynomial& f) {
  std::vector<AlgebraicNumber> out;
  if (f.degree() == 1) {
    out.emplace_back(Rational(-f.coeff(0) / f.coeff(1)));
    return out;
  }
  auto seq = sturm_sequence(f);
  Rational b = power_of_two_at_least(root_bound(f));
  struct Span {
    Rational lo, hi;
    int count;
  };
  std::vector<Span> stack;
  int total = sign_variations(seq, -b) - sign_variations(seq, b);
  if (total > 0) stack.push_back({-b, b, total});
  std::vector<std::pair<Rational, Rational>> isolated;
  while (!stack.empty()) {
    Span s = stack.back();
    stack.pop_back();
    if (s.count == 1) {
      isolated.emplace_back(s.lo, s.hi);
      continue;
    }
    Rational mid = (s.lo + s.hi) / 2;
    int vm = sign_variations(seq, mid);
    int left = sign_variations(seq, s.lo) - vm;
    int right = s.count - left;
    if (right > 0) stack.push_back({mid, s.hi, right});
    if (left > 0) stack.push_back({s.lo, mid, left});
  }
  std::sort(isolated.begin(), isolated.end());
  for (auto& [lo, hi] : isolated) out.push_back(AlgebraicAccess::real(f, lo, hi));
  return out;
}

}  // namespace

std::vector<AlgebraicNumber> isolate_roots(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("isolate_roots: zero polynomial");
  std::vector<AlgebraicNumber> reals, complexes;
  for (const auto& fac : factor_poly(p)) {
    const RationalPolynomial& f = fac.factor;
    auto rr = real_roots_irreducible(f);
    const int n = f.degree();
    const int nonreal = n - static_cast<int>(rr.size());
    reals.insert(reals.end(), rr.begin(), rr.end());
    if (nonreal == 0) continue;
    const Rational sep = mignotte_bound(f);
    bool done = false;
    for (unsigned bits = 128; bits <= 16384 && !done; bits *= 2) {
      auto approx = aberth(f, bits);
      std::sort(approx.begin(), approx.end(),
                [](const ComplexRational& a, const ComplexRational& b) { return a.im > b.im; });
      std::vector<std::pair<ComplexRational, Rational>> disks;
      bool ok = true;
      for (int k = 0; k < nonreal / 2 && ok; ++k) {
        auto res = newton_certify(f, approx[static_cast<std::size_t>(k)], sep / 4, std::nullopt);
        if (!res || abs(res->first.im) <= res->second) {
          ok = false;
          break;
        }
        for (const auto& d : disks) {
          if (within(d.first, res->first, d.second + res->second)) ok = false;
        }
        disks.push_back(*res);
      }
      if (!ok) continue;
      for (const auto& d : disks) {
        AlgebraicNumber up = AlgebraicAccess::complex(f, d.first, d.second);
        complexes.push_back(up);
        complexes.push_back(up.conj());
      }
      done = true;
    }
    if (!done) throw std::runtime_error("isolate_roots: complex root certification failed");
  }
  std::sort(reals.begin(), reals.end(), [](const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return compare_real(a, b) == Ordering::Less;
  });
  std::sort(complexes.begin(), complexes.end(), [](const AlgebraicNumber& a, const AlgebraicNumber& b) {
    auto ca = a.approx(), cb = b.approx();
    if (ca.re != cb.re) return ca.re < cb.re;
    return ca.im < cb.im;
  });
  reals.insert(reals.end(), complexes.begin(), complexes.end());
  return reals;
}

std::vector<std::complex<double>> approximate_roots(const RationalPolynomial& p, unsigned bits) {
  std::vector<std::complex<double>> out;
  for (const auto& z : aberth(p, bits)) out.emplace_back(z.re.get_d(), z.im.get_d());
  return out;
}

std::string AlgebraicNumber::to_string() const {
  if (is_rational()) return polyescape::to_string(rational_value());
  std::ostringstream out;
  auto c = to_complex();
  out << "root of " << polyescape::to_string(minpoly()) << " near " << c.real();
  if (!is_real()) out << (c.imag() < 0 ? " - " : " + ") << std::fabs(c.imag()) << "i";
  return out.str();
}

}  // namespace polyescape
