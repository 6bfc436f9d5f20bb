#include "polyescape/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <unsupported/Eigen/MatrixFunctions>

#include "polyescape/factor.hpp"

namespace polyescape {

namespace {

Eigen::MatrixXd to_eigen(const RationalMatrix& a) {
  Eigen::MatrixXd m(static_cast<long>(a.rows()), static_cast<long>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(static_cast<long>(i), static_cast<long>(j)) = to_double(a(i, j));
  return m;
}

std::vector<double> flow_eigen(const Eigen::MatrixXd& a, const Eigen::VectorXd& x0, double t) {
  Eigen::VectorXd x = (a * t).exp() * x0;
  if (!x.allFinite()) throw std::overflow_error("trajectory left the floating-point range");
  return std::vector<double>(x.data(), x.data() + x.size());
}

Eigen::MatrixXd homogeneous_eigen(const EscapeInstance& inst) {
  const long d = static_cast<long>(inst.dimension);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d + 1, d + 1);
  m.topLeftCorner(d, d) = to_eigen(inst.A);
  for (long i = 0; i < d; ++i) m(i, d) = to_double(inst.a[static_cast<std::size_t>(i)]);
  return m;
}

Eigen::VectorXd homogeneous_point(const std::vector<double>& x0) {
  Eigen::VectorXd v(static_cast<long>(x0.size()) + 1);
  for (std::size_t i = 0; i < x0.size(); ++i) v(static_cast<long>(i)) = x0[i];
  v(static_cast<long>(x0.size())) = 1;
  return v;
}

double row_violation(const RationalMatrix& b, const RationalVector& rhs, std::size_t i, const std::vector<double>& x) {
  double dot = 0, scale = std::fabs(to_double(rhs[i]));
  for (std::size_t j = 0; j < x.size(); ++j) {
    double c = to_double(b(i, j));
    dot += c * x[j];
    scale += std::fabs(c) * std::fabs(x[j]);
  }
  return (to_double(rhs[i]) - dot) / std::max(1.0, scale);
}

}  // namespace

std::vector<double> flow(const RationalMatrix& a, const std::vector<double>& x0, double t) {
  if (x0.size() != a.rows()) throw std::invalid_argument("flow: dimension mismatch");
  return flow_eigen(to_eigen(a), Eigen::Map<const Eigen::VectorXd>(x0.data(), static_cast<long>(x0.size())), t);
}

std::vector<double> flow(const EscapeInstance& inst, const std::vector<double>& x0, double t) {
  if (x0.size() != inst.dimension) throw std::invalid_argument("flow: dimension mismatch");
  auto p = flow_eigen(homogeneous_eigen(inst), homogeneous_point(x0), t);
  p.pop_back();
  return p;
}

Trajectory simulate(const RationalMatrix& a, const std::vector<double>& x0, double horizon, std::size_t samples) {
  if (!(horizon > 0)) throw std::invalid_argument("simulate: horizon must be positive");
  if (samples < 2) throw std::invalid_argument("simulate: need at least two samples");
  if (x0.size() != a.rows()) throw std::invalid_argument("simulate: dimension mismatch");
  const Eigen::MatrixXd ad = to_eigen(a);
  const Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(x0.data(), static_cast<long>(x0.size()));
  Trajectory tr;
  for (std::size_t k = 0; k < samples; ++k) {
    double t = horizon * static_cast<double>(k) / static_cast<double>(samples - 1);
    tr.times.push_back(t);
    tr.points.push_back(flow_eigen(ad, xv, t));
  }
  return tr;
}

Trajectory simulate(const EscapeInstance& inst, const std::vector<double>& x0, double horizon, std::size_t samples,
                    double tolerance) {
  if (!(horizon > 0)) throw std::invalid_argument("simulate: horizon must be positive");
  if (samples < 2) throw std::invalid_argument("simulate: need at least two samples");
  if (x0.size() != inst.dimension) throw std::invalid_argument("simulate: dimension mismatch");
  const Eigen::MatrixXd ad = homogeneous_eigen(inst);
  const Eigen::VectorXd xv = homogeneous_point(x0);
  Trajectory tr;
  for (std::size_t k = 0; k < samples; ++k) {
    double t = horizon * static_cast<double>(k) / static_cast<double>(samples - 1);
    auto p = flow_eigen(ad, xv, t);
    p.pop_back();
    if (!tr.escape_time && relative_violation(inst, p) > tolerance) tr.escape_time = t;
    tr.times.push_back(t);
    tr.points.push_back(std::move(p));
  }
  return tr;
}

Trajectory simulate_spectral(const EscapeInstance& inst, const std::vector<AlgebraicNumber>& x0, double horizon,
                             std::size_t samples, double tolerance) {
  if (!(horizon > 0)) throw std::invalid_argument("simulate: horizon must be positive");
  if (samples < 2) throw std::invalid_argument("simulate: need at least two samples");
  if (x0.size() != inst.dimension) throw std::invalid_argument("simulate: dimension mismatch");
  const HomogeneousInstance hom = homogenize(inst);
  const SpectralData s = eigen_structure(hom.A);
  const std::size_t n = hom.dimension;
  std::vector<AlgebraicNumber> z = x0;
  z.emplace_back(1);
  Eigen::MatrixXcd ad = to_eigen(hom.A).cast<std::complex<double>>();

  // Per eigenvalue: lambda and w_j = (A - lambda)^j P z / j!.
  std::vector<std::pair<std::complex<double>, std::vector<Eigen::VectorXcd>>> parts;
  for (std::size_t e = 0; e < s.eigenvalues.size(); ++e) {
    const AlgebraicMatrix p = s.projection(e);
    Eigen::VectorXcd v(static_cast<long>(n));
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      AlgebraicNumber acc(0);
      for (std::size_t j = 0; j < n; ++j)
        if (!p(i, j).is_zero() && !z[j].is_zero()) acc += p(i, j) * z[j];
      zero = zero && acc.is_zero();
      v(static_cast<long>(i)) = acc.to_complex();
    }
    if (zero) continue;
    const std::complex<double> lambda = s.eigenvalues[e].value.to_complex();
    const Eigen::MatrixXcd shifted = ad - lambda * Eigen::MatrixXcd::Identity(static_cast<long>(n), static_cast<long>(n));
    std::vector<Eigen::VectorXcd> w{v};
    for (unsigned j = 1; j < s.eigenvalues[e].index; ++j) w.push_back(shifted * w.back() / static_cast<double>(j));
    parts.emplace_back(lambda, std::move(w));
  }

  Trajectory tr;
  for (std::size_t k = 0; k < samples; ++k) {
    double t = horizon * static_cast<double>(k) / static_cast<double>(samples - 1);
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<long>(n));
    for (const auto& [lambda, w] : parts) {
      Eigen::VectorXcd poly = Eigen::VectorXcd::Zero(static_cast<long>(n));
      double tj = 1;
      for (const auto& wj : w) {
        poly += tj * wj;
        tj *= t;
      }
      x += std::exp(lambda * t) * poly;
    }
    std::vector<double> p(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) p[i] = x(static_cast<long>(i)).real();
    if (!std::all_of(p.begin(), p.end(), [](double v) { return std::isfinite(v); }))
      throw std::overflow_error("simulate: trajectory left the double range");
    if (!tr.escape_time && relative_violation(inst, p) > tolerance) tr.escape_time = t;
    tr.times.push_back(t);
    tr.points.push_back(std::move(p));
  }
  return tr;
}

double relative_violation(const EscapeInstance& inst, const std::vector<double>& x) {
  double worst = -INFINITY;
  for (std::size_t i = 0; i < inst.strict_rows(); ++i)
    worst = std::max(worst, row_violation(inst.strict_B, inst.strict_b, i, x));
  for (std::size_t i = 0; i < inst.nonstrict_rows(); ++i)
    worst = std::max(worst, row_violation(inst.nonstrict_B, inst.nonstrict_b, i, x));
  return worst;
}

ScanResult escape_scan(const EscapeInstance& inst, const std::vector<double>& x0, double horizon, double tolerance,
                       std::size_t samples) {
  const std::size_t n = std::max<std::size_t>(samples, static_cast<std::size_t>(std::ceil(horizon / 0.01)) + 1);
  const Eigen::MatrixXd ad = homogeneous_eigen(inst);
  const Eigen::VectorXd xv = homogeneous_point(x0);
  auto violated = [&](double t) {
    std::vector<double> p;
    try {
      p = flow_eigen(ad, xv, t);
    } catch (const std::overflow_error&) {
      return false;
    }
    p.pop_back();
    return relative_violation(inst, p) > tolerance;
  };
  double prev = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double t = horizon * static_cast<double>(k) / static_cast<double>(n - 1);
    if (violated(t)) {
      if (k == 0) return {true, 0};
      double lo = prev, hi = t;
      while (hi - lo > 1e-6) {
        double mid = (lo + hi) / 2;
        (violated(mid) ? hi : lo) = mid;
      }
      return {true, hi};
    }
    prev = t;
  }
  return {false, horizon};
}

std::optional<std::size_t> kronecker_scan(const std::vector<double>& theta, const std::vector<double>& psi, double eps,
                                          std::size_t n_max) {
  if (theta.size() != psi.size()) throw std::invalid_argument("kronecker_scan: length mismatch");
  if (!(eps > 0)) throw std::invalid_argument("kronecker_scan: eps must be positive");
  for (std::size_t n = 1; n <= n_max; ++n) {
    bool hit = true;
    for (std::size_t i = 0; i < theta.size() && hit; ++i) {
      // fmod keeps the argument small; long double limits the rounding of n * theta.
      long double v = static_cast<long double>(n) * theta[i] - psi[i];
      long double dist = std::fabs(v - std::round(v));
      hit = dist < eps;
    }
    if (hit) return n;
  }
  return std::nullopt;
}

namespace {

std::map<std::pair<std::size_t, int>, std::complex<double>> merged_terms(const LaurentSpec& g) {
  std::map<std::pair<std::size_t, int>, std::complex<double>> m;
  for (const auto& t : g.terms) {
    if (t.exponent == 0) throw std::invalid_argument("simple Laurent polynomials have no constant term");
    if (t.exponent > 0)
      m[{t.variable, t.exponent}] += t.coefficient;
    else
      m[{t.variable, -t.exponent}] += std::conj(t.coefficient);
  }
  return m;
}

}  // namespace

double LaurentSpec::evaluate(double n) const {
  double v = 0;
  for (const auto& t : terms) {
    if (t.variable >= theta.size()) throw std::invalid_argument("Laurent term refers to a missing frequency");
    double phase = 2 * M_PI * std::fmod(n * static_cast<double>(t.exponent) * theta[t.variable], 1.0);
    std::complex<double> z = std::polar(1.0, phase);
    v += 2 * (t.coefficient * z).real();
  }
  return v;
}

bool LaurentSpec::is_identically_zero() const {
  for (const auto& [key, c] : merged_terms(*this))
    if (c != std::complex<double>(0, 0)) return false;
  return true;
}

LiminfResult liminf_scan(const LaurentSpec& g, std::size_t n_max) {
  if (n_max < 1) throw std::invalid_argument("liminf_scan: N must be at least 1");
  LiminfResult r;
  if (g.is_identically_zero()) {
    r.identically_zero = true;
    return r;
  }
  r.min_value = INFINITY;
  for (std::size_t n = 1; n <= n_max; ++n) {
    double v = g.evaluate(static_cast<double>(n));
    if (v < r.min_value) {
      r.min_value = v;
      r.argmin = n;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct Diagonalization {
  std::vector<Rational> eigenvalues;  // per column of S
  RationalMatrix s, s_inv;
};

std::optional<Diagonalization> diagonalize(const RationalMatrix& a) {
  const std::size_t d = a.rows();
  RationalPolynomial cp = char_poly(a);
  Diagonalization out;
  std::vector<RationalVector> columns;
  for (const auto& f : factor_poly(cp)) {
    if (f.factor.degree() != 1) return std::nullopt;
    Rational lambda = -f.factor.coeff(0);
    RationalMatrix shifted = a - lambda * RationalMatrix::identity(d);
    auto ker = kernel_basis(shifted);
    if (ker.size() != f.multiplicity) return std::nullopt;
    for (auto& v : ker) {
      out.eigenvalues.push_back(lambda);
      columns.push_back(std::move(v));
    }
  }
  out.s = RationalMatrix::from_rows(columns).transpose();
  out.s_inv = inverse(out.s);
  return out;
}

// Affine function coeffs . z0 + constant.
struct Affine {
  RationalVector coeffs;
  Rational constant = 0;
  bool is_zero() const {
    return constant == 0 && std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
  }
};

}  // namespace

bool closed_form_applicable(const EscapeInstance& inst) {
  return inst.dimension <= 3 && diagonalize(inst.A).has_value();
}

Verdict closed_form_decide(const EscapeInstance& inst) {
  inst.validate();
  if (inst.dimension > 3) throw PreconditionViolation("closed_form_decide: dimension above 3");
  auto diag = diagonalize(inst.A);
  if (!diag) throw PreconditionViolation("closed_form_decide: A is not diagonalizable over Q");
  const std::size_t d = inst.dimension;
  const RationalVector c = mat_vec(diag->s_inv, inst.a);

  // Each row: sum over (exponent, power of t) of an affine function of z0.
  struct Row {
    std::vector<std::pair<std::pair<Rational, unsigned>, Affine>> terms;  // sorted most dominant first
    bool strict;
  };
  std::vector<Row> rows;
  auto add_row = [&](const RationalVector& beta, const Rational& b, bool strict) {
    RationalVector w = vec_mat(beta, diag->s);
    std::map<std::pair<Rational, unsigned>, Affine> terms;
    auto term = [&](const Rational& eta, unsigned p) -> Affine& {
      auto& t = terms[{eta, p}];
      if (t.coeffs.empty()) t.coeffs.assign(d, 0);
      return t;
    };
    for (std::size_t i = 0; i < d; ++i) {
      const Rational& lambda = diag->eigenvalues[i];
      if (w[i] == 0) continue;
      if (lambda != 0) {
        // (z_i + c_i / lambda) e^(lambda t) - c_i / lambda
        Affine& e = term(lambda, 0);
        e.coeffs[i] += w[i];
        e.constant += w[i] * c[i] / lambda;
        term(0, 0).constant -= w[i] * c[i] / lambda;
      } else {
        term(0, 0).coeffs[i] += w[i];
        term(0, 1).constant += w[i] * c[i];
      }
    }
    term(0, 0).constant -= b;
    Row r;
    r.strict = strict;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
      if (!it->second.is_zero()) r.terms.emplace_back(it->first, it->second);
    rows.push_back(std::move(r));
  };
  for (std::size_t i = 0; i < inst.strict_rows(); ++i) add_row(inst.strict_B.row(i), inst.strict_b[i], true);
  for (std::size_t i = 0; i < inst.nonstrict_rows(); ++i) add_row(inst.nonstrict_B.row(i), inst.nonstrict_b[i], false);

  // Members per row as systems over z0.
  std::vector<std::vector<ConjunctiveSystem<Rational>>> members(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& terms = rows[r].terms;
    for (std::size_t k = 0; k <= terms.size(); ++k) {
      if (k == terms.size() && rows[r].strict) break;
      ConjunctiveSystem<Rational> sys;
      sys.variables = d;
      for (std::size_t q = 0; q < k; ++q) sys.add(terms[q].second.coeffs, Relation::Equal, -terms[q].second.constant);
      if (k < terms.size()) sys.add(terms[k].second.coeffs, Relation::Greater, -terms[k].second.constant);
      members[r].push_back(std::move(sys));
    }
  }

  FmLimits limits{d, 1000, 200000};
  Verdict v;
  std::vector<std::size_t> choice;
  std::optional<RationalVector> z0;
  std::function<bool(std::size_t, const ConjunctiveSystem<Rational>&)> dfs = [&](std::size_t depth,
                                                                                 const ConjunctiveSystem<Rational>& acc) {
    if (depth == rows.size()) {
      auto res = fm_eliminate(acc, limits);
      if (res.feasible) z0 = res.point;
      return res.feasible;
    }
    for (const auto& m : members[depth]) {
      ConjunctiveSystem<Rational> next = acc;
      for (const auto& row : m.rows) next.rows.push_back(row);
      ++v.feasibility_calls;
      if (!fm_eliminate(next, limits).feasible) continue;
      if (dfs(depth + 1, next)) return true;
    }
    return false;
  };
  ConjunctiveSystem<Rational> empty;
  empty.variables = d;
  if (!dfs(0, empty)) {
    v.outcome = Outcome::AllEscape;
    return v;
  }
  v.outcome = Outcome::TrappedExists;
  Witness w;
  RationalVector x0 = mat_vec(diag->s, *z0);
  w.point.assign(x0.begin(), x0.end());
  w.rational = true;
  v.witness = std::move(w);
  return v;
}

}  // namespace polyescape
