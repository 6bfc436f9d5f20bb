#include "polyescape/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace polyescape {

namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;

// ---- arithmetic in Z/p, p < 2^31 ----

u64 mulm(u64 a, u64 b, u64 p) { return (a * b) % p; }

u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1U) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1U;
  }
  return r;
}

u64 invm(u64 a, u64 p) {
  if (a % p == 0) throw std::domain_error("inverse of zero mod p");
  return powm(a, p - 2, p);
}

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly reduce(const IntegerPolynomial& f, u64 p) {
  ModPoly out;
  out.reserve(f.size());
  for (const auto& c : f.coefficients()) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
    out.push_back(r.get_ui());
  }
  trim(out);
  return out;
}

ModPoly sub(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + p - b[i]) % p;
  trim(c);
  return c;
}

ModPoly add(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + b[i]) % p;
  trim(c);
  return c;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulm(a[i], b[j], p)) % p;
  }
  trim(c);
  return c;
}

ModPoly scale(const ModPoly& a, u64 s, u64 p) {
  ModPoly c(a);
  for (auto& v : c) v = mulm(v, s, p);
  trim(c);
  return c;
}

// a = q*b + r
void divmod(const ModPoly& a, const ModPoly& b, u64 p, ModPoly* q, ModPoly* r) {
  if (b.empty()) throw std::domain_error("mod-p division by zero");
  ModPoly rem = a;
  ModPoly quo;
  if (deg(a) >= deg(b)) quo.assign(a.size() - b.size() + 1, 0);
  const u64 inv = invm(b.back(), p);
  for (int k = deg(a) - deg(b); k >= 0; --k) {
    const u64 top = rem[static_cast<std::size_t>(k) + b.size() - 1];
    if (top == 0) continue;
    const u64 f = mulm(top, inv, p);
    quo[static_cast<std::size_t>(k)] = f;
    for (std::size_t j = 0; j < b.size(); ++j) {
      u64& t = rem[static_cast<std::size_t>(k) + j];
      t = (t + p - mulm(f, b[j], p)) % p;
    }
  }
  trim(rem);
  trim(quo);
  if (q) *q = std::move(quo);
  if (r) *r = std::move(rem);
}

ModPoly mod(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r;
  divmod(a, b, p, nullptr, &r);
  return r;
}

ModPoly quot(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly q;
  divmod(a, b, p, &q, nullptr);
  return q;
}

ModPoly monic(const ModPoly& a, u64 p) {
  if (a.empty()) return a;
  return scale(a, invm(a.back(), p), p);
}

ModPoly gcd(ModPoly a, ModPoly b, u64 p) {
  while (!b.empty()) {
    ModPoly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

// s*a + t*b = 1 (a, b coprime)
void xgcd(const ModPoly& a, const ModPoly& b, u64 p, ModPoly* s, ModPoly* t) {
  ModPoly r0 = a, r1 = b, s0 = {1}, s1, t0, t1 = {1};
  while (!r1.empty()) {
    ModPoly q, r;
    divmod(r0, r1, p, &q, &r);
    r0 = std::move(r1);
    r1 = std::move(r);
    ModPoly s2 = sub(s0, mul(q, s1, p), p);
    ModPoly t2 = sub(t0, mul(q, t1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (deg(r0) != 0) throw std::logic_error("xgcd: inputs not coprime mod p");
  const u64 inv = invm(r0[0], p);
  *s = scale(s0, inv, p);
  *t = scale(t0, inv, p);
}

ModPoly derivative(const ModPoly& a, u64 p) {
  if (a.size() <= 1) return {};
  ModPoly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mulm(a[i], i % p, p);
  trim(d);
  return d;
}

ModPoly powmod_poly(ModPoly base, const Integer& e, const ModPoly& f, u64 p) {
  ModPoly r = {1};
  base = mod(base, f, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mod(mul(r, r, p), f, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, base, p), f, p);
  }
  return r;
}

// Distinct-degree factorization of a monic squarefree f.
std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly f, u64 p) {
  std::vector<std::pair<ModPoly, int>> out;
  const ModPoly x = {0, 1};
  ModPoly h = x;
  for (int i = 1; deg(f) >= 2 * i; ++i) {
    h = powmod_poly(h, Integer(static_cast<unsigned long>(p)), f, p);
    ModPoly g = gcd(f, sub(h, x, p), p);
    if (deg(g) > 0) {
      out.emplace_back(g, i);
      f = quot(f, g, p);
      h = mod(h, f, p);
    }
  }
  if (deg(f) > 0) out.emplace_back(f, deg(f));
  return out;
}

void equal_degree(const ModPoly& g, int d, u64 p, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (deg(g) == d) {
    out.push_back(g);
    return;
  }
  Integer pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), p, static_cast<unsigned long>(d));
  const Integer e = (pd - 1) / 2;
  std::uniform_int_distribution<u64> coin(0, p - 1);
  for (;;) {
    ModPoly a(static_cast<std::size_t>(deg(g)));
    for (auto& v : a) v = coin(rng);
    trim(a);
    if (deg(a) < 1) continue;
    ModPoly b = sub(powmod_poly(a, e, g, p), ModPoly{1}, p);
    ModPoly h = gcd(g, b, p);
    if (deg(h) > 0 && deg(h) < deg(g)) {
      equal_degree(h, d, p, rng, out);
      equal_degree(quot(g, h, p), d, p, rng, out);
      return;
    }
  }
}

std::vector<ModPoly> factor_mod_p(const ModPoly& f_monic, u64 p) {
  std::mt19937_64 rng(0x5eed ^ p);
  std::vector<ModPoly> out;
  for (auto& [g, d] : distinct_degree(f_monic, p)) equal_degree(g, d, p, rng, out);
  std::sort(out.begin(), out.end(), [](const ModPoly& a, const ModPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

// ---- integer helpers ----

IntegerPolynomial lift_to_integer(const ModPoly& a) {
  std::vector<Integer> c;
  c.reserve(a.size());
  for (auto v : a) c.emplace_back(static_cast<unsigned long>(v));
  return IntegerPolynomial(std::move(c));
}

IntegerPolynomial mod_q(const IntegerPolynomial& a, const Integer& q) {
  std::vector<Integer> c;
  c.reserve(a.size());
  for (const auto& v : a.coefficients()) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
    c.push_back(std::move(r));
  }
  return IntegerPolynomial(std::move(c));
}

IntegerPolynomial symmetric_mod(const IntegerPolynomial& a, const Integer& q) {
  const Integer half = q / 2;
  std::vector<Integer> c;
  c.reserve(a.size());
  for (const auto& v : a.coefficients()) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
    if (r > half) r -= q;
    c.push_back(std::move(r));
  }
  return IntegerPolynomial(std::move(c));
}

IntegerPolynomial scale_int(const IntegerPolynomial& a, const Integer& s) {
  std::vector<Integer> c(a.coefficients());
  for (auto& v : c) v *= s;
  return IntegerPolynomial(std::move(c));
}

// Lifts f ≡ g*h (mod p), g monic, to f ≡ G*H (mod p^k).
void hensel_lift(const IntegerPolynomial& f, const ModPoly& g0, const ModPoly& h0, u64 p, unsigned k,
                 IntegerPolynomial* g_out, IntegerPolynomial* h_out) {
  ModPoly s, t;
  xgcd(g0, h0, p, &s, &t);
  IntegerPolynomial g = lift_to_integer(g0);
  IntegerPolynomial h = lift_to_integer(h0);
  Integer q(static_cast<unsigned long>(p));
  for (unsigned step = 1; step < k; ++step) {
    IntegerPolynomial diff = f - g * h;
    std::vector<Integer> ec;
    for (const auto& c : diff.coefficients()) {
      Integer v;
      mpz_divexact(v.get_mpz_t(), c.get_mpz_t(), q.get_mpz_t());
      ec.push_back(std::move(v));
    }
    ModPoly e = reduce(IntegerPolynomial(std::move(ec)), p);
    ModPoly quo, big_g;
    divmod(mul(e, t, p), g0, p, &quo, &big_g);
    ModPoly big_h = add(mul(e, s, p), mul(quo, h0, p), p);
    g = g + scale_int(lift_to_integer(big_g), q);
    h = h + scale_int(lift_to_integer(big_h), q);
    q *= static_cast<unsigned long>(p);
    g = mod_q(g, q);
    h = mod_q(h, q);
  }
  *g_out = std::move(g);
  *h_out = std::move(h);
}

bool divides_exactly(const IntegerPolynomial& f, const IntegerPolynomial& g, IntegerPolynomial* quotient) {
  // Integer long division; fails as soon as a quotient coefficient is fractional.
  if (g.degree() > f.degree()) return false;
  std::vector<Integer> r(f.coefficients());
  std::vector<Integer> q(static_cast<std::size_t>(f.degree() - g.degree() + 1));
  const Integer& lg = g.leading();
  for (int k = f.degree() - g.degree(); k >= 0; --k) {
    Integer& top = r[static_cast<std::size_t>(k + g.degree())];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lg.get_mpz_t())) return false;
    Integer c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lg.get_mpz_t());
    for (std::size_t j = 0; j < g.size(); ++j) r[static_cast<std::size_t>(k) + j] -= c * g.coefficients()[j];
    q[static_cast<std::size_t>(k)] = std::move(c);
  }
  for (int i = 0; i < g.degree(); ++i) {
    if (r[static_cast<std::size_t>(i)] != 0) return false;
  }
  if (quotient) *quotient = IntegerPolynomial(std::move(q));
  return true;
}

IntegerPolynomial primitive_part(const IntegerPolynomial& a) {
  Integer content = 0;
  for (const auto& c : a.coefficients()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  if (a.leading() < 0) content = -content;
  std::vector<Integer> c(a.coefficients());
  for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
  return IntegerPolynomial(std::move(c));
}

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> out;
    const u64 limit = 20000;
    std::vector<bool> sieve(limit, true);
    for (u64 i = 2; i < limit; ++i) {
      if (!sieve[i]) continue;
      if (i > 2) out.push_back(i);
      for (u64 j = i * i; j < limit; j += i) sieve[j] = false;
    }
    return out;
  }();
  return primes;
}

// Enumerates k-subsets of {0..n-1} in lexicographic order.
bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
  const std::size_t k = s.size();
  for (std::size_t i = k; i-- > 0;) {
    if (s[i] < n - k + i) {
      ++s[i];
      for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<IntegerPolynomial> factor_squarefree_integer(const IntegerPolynomial& f_in) {
  IntegerPolynomial f = primitive_part(f_in);
  const int n = f.degree();
  if (n <= 1) return {f};

  // Pick the prime (among a few admissible ones) with the fewest modular factors.
  u64 best_p = 0;
  std::vector<ModPoly> best;
  int tried = 0;
  for (u64 p : small_primes()) {
    Integer lc_mod;
    mpz_fdiv_r_ui(lc_mod.get_mpz_t(), f.leading().get_mpz_t(), p);
    if (lc_mod == 0) continue;
    ModPoly fp = reduce(f, p);
    if (deg(gcd(fp, derivative(fp, p), p)) != 0) continue;
    auto facs = factor_mod_p(monic(fp, p), p);
    if (facs.size() == 1) return {f};
    if (best.empty() || facs.size() < best.size()) {
      best = std::move(facs);
      best_p = p;
    }
    if (++tried >= 5) break;
  }
  if (best.empty()) throw std::runtime_error("factorization: no admissible prime found");
  const u64 p = best_p;

  // Coefficient bound for factors of lc(f) * f.
  Integer norm_bound = height(f) * (n + 1);
  Integer bound = ::abs(f.leading()) * (Integer(1) << static_cast<unsigned>(n)) * norm_bound;
  Integer q(static_cast<unsigned long>(p));
  unsigned k = 1;
  while (q <= 2 * bound) {
    q *= static_cast<unsigned long>(p);
    ++k;
  }

  // Multifactor Hensel lifting by successive splitting.
  std::vector<IntegerPolynomial> lifted;
  IntegerPolynomial current = f;
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    Integer lc_mod;
    mpz_fdiv_r_ui(lc_mod.get_mpz_t(), current.leading().get_mpz_t(), p);
    ModPoly rest = {lc_mod.get_ui()};
    for (std::size_t j = i + 1; j < best.size(); ++j) rest = mul(rest, best[j], p);
    IntegerPolynomial g, h;
    hensel_lift(current, best[i], rest, p, k, &g, &h);
    lifted.push_back(std::move(g));
    current = std::move(h);
  }
  {
    Integer inv;
    Integer lc = current.leading();
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), q.get_mpz_t());
    lifted.push_back(mod_q(scale_int(current, inv), q));
  }

  // Recombination.
  std::vector<IntegerPolynomial> result;
  IntegerPolynomial rest_f = f;
  std::vector<IntegerPolynomial> pool = std::move(lifted);
  for (std::size_t s = 1; 2 * s <= pool.size();) {
    std::vector<std::size_t> subset(s);
    for (std::size_t i = 0; i < s; ++i) subset[i] = i;
    bool found = false;
    do {
      IntegerPolynomial cand = IntegerPolynomial::constant(rest_f.leading());
      for (auto idx : subset) cand = mod_q(cand * pool[idx], q);
      cand = primitive_part(symmetric_mod(cand, q));
      IntegerPolynomial quotient;
      if (divides_exactly(rest_f, cand, &quotient)) {
        result.push_back(cand);
        rest_f = primitive_part(quotient);
        std::vector<IntegerPolynomial> remaining;
        for (std::size_t i = 0; i < pool.size(); ++i) {
          if (std::find(subset.begin(), subset.end(), i) == subset.end()) remaining.push_back(pool[i]);
        }
        pool = std::move(remaining);
        found = true;
        break;
      }
    } while (next_subset(subset, pool.size()));
    if (!found) ++s;
  }
  if (rest_f.degree() > 0) result.push_back(rest_f);
  return result;
}

std::vector<PolynomialFactor> squarefree_decomposition(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree decomposition of the zero polynomial");
  std::vector<PolynomialFactor> out;
  if (p.degree() == 0) return out;
  RationalPolynomial a = p.monic();
  RationalPolynomial b = a.derivative();
  RationalPolynomial c = gcd(a, b);
  RationalPolynomial w = (a / c).monic();
  RationalPolynomial y = b / c;
  RationalPolynomial z = y - w.derivative();
  for (unsigned i = 1; w.degree() > 0; ++i) {
    RationalPolynomial g = gcd(w, z);
    if (g.degree() > 0) out.push_back({g, i});
    w = (w / g).monic();
    y = z / g;
    z = y - w.derivative();
  }
  return out;
}

std::vector<PolynomialFactor> factor_poly(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("factor_poly: zero polynomial");
  std::vector<PolynomialFactor> out;
  for (const auto& part : squarefree_decomposition(p)) {
    for (const auto& f : factor_squarefree_integer(primitive_integer(part.factor))) {
      out.push_back({to_rational(f).monic(), part.multiplicity});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PolynomialFactor& a, const PolynomialFactor& b) { return a.factor < b.factor; });
  return out;
}

bool is_irreducible(const RationalPolynomial& p) {
  if (p.degree() <= 0) return false;
  auto f = factor_poly(p);
  return f.size() == 1 && f[0].multiplicity == 1;
}

}  // namespace polyescape
