#include "polyescape/escape.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "polyescape/oracle.hpp"

namespace polyescape {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool all_rational(const std::vector<AlgebraicNumber>& v) {
  return std::all_of(v.begin(), v.end(), [](const AlgebraicNumber& a) { return a.is_rational(); });
}

RationalVector to_rational_vector(const std::vector<AlgebraicNumber>& v) {
  RationalVector out;
  for (const auto& a : v) out.push_back(a.rational_value());
  return out;
}

std::vector<AlgebraicNumber> to_algebraic_vector(const RationalVector& v) {
  return std::vector<AlgebraicNumber>(v.begin(), v.end());
}

std::vector<double> to_doubles(const std::vector<AlgebraicNumber>& v) {
  std::vector<double> out;
  for (const auto& a : v) out.push_back(a.to_double());
  return out;
}

bool has_nonreal_root(const SpectralData& s, std::size_t factor) {
  for (auto e : s.factors[factor].eigenvalues)
    if (!s.eigenvalues[e].real) return true;
  return false;
}

bool all_roots_nonreal(const SpectralData& s, std::size_t factor) {
  for (auto e : s.factors[factor].eigenvalues)
    if (s.eigenvalues[e].real) return false;
  return true;
}

std::vector<std::pair<std::size_t, unsigned>> sorted_real_pairs(const SpectralData& s) {
  std::vector<std::size_t> reals;
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    if (s.eigenvalues[i].real) reals.push_back(i);
  std::sort(reals.begin(), reals.end(), [&](std::size_t x, std::size_t y) {
    return compare_real(s.eigenvalues[x].value, s.eigenvalues[y].value) == Ordering::Greater;
  });
  std::vector<std::pair<std::size_t, unsigned>> out;
  for (auto e : reals)
    for (unsigned j = s.eigenvalues[e].index; j-- > 0;) out.emplace_back(e, j);
  return out;
}

// Rows whose vanishing on x is equivalent to every non-real coefficient of
// b^T exp(At) x being zero.
std::vector<std::vector<AlgebraicNumber>> complex_equalities(const CoefficientTable& table) {
  const SpectralData& s = table.spectral();
  const RationalMatrix& a = s.matrix;
  std::vector<std::vector<AlgebraicNumber>> out;
  std::vector<RationalVector> rational_rows;
  for (std::size_t f = 0; f < s.factors.size(); ++f) {
    if (!has_nonreal_root(s, f)) continue;
    const auto& block = s.factors[f];
    if (all_roots_nonreal(s, f)) {
      // b^T A^k P_f x = 0 for all k is the same condition, with rational rows.
      RationalVector w = vec_mat(table.observable(), s.factor_projection(f));
      const std::size_t count = block.field.degree() * block.multiplicity;
      for (std::size_t k = 0; k < count; ++k) {
        rational_rows.push_back(w);
        w = vec_mat(w, a);
      }
      continue;
    }
    for (auto e : block.eigenvalues) {
      const auto& rec = s.eigenvalues[e];
      if (rec.real || rec.value.approx().im < 0) continue;
      for (unsigned j = 0; j < rec.index; ++j) {
        if (is_zero(table.generic(f, j))) continue;
        auto u = table.vector(e, j);
        std::vector<AlgebraicNumber> re, im;
        for (const auto& v : u) {
          re.push_back(v.real_part());
          im.push_back(v.imag_part());
        }
        out.push_back(std::move(re));
        out.push_back(std::move(im));
      }
    }
  }
  if (!rational_rows.empty()) {
    RationalMatrix m = RationalMatrix::from_rows(rational_rows);
    std::vector<std::size_t> pivots;
    RationalMatrix r = rref(m, &pivots);
    for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(to_algebraic_vector(r.row(i)));
  }
  // Drop zero rows.
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const std::vector<AlgebraicNumber>& row) {
                             return std::all_of(row.begin(), row.end(),
                                                [](const AlgebraicNumber& v) { return v.is_zero(); });
                           }),
            out.end());
  return out;
}

std::vector<Member> build_members(Relation rel, const CoefficientTable& table,
                                  const std::vector<std::pair<std::size_t, unsigned>>& pairs, std::size_t* n_complex) {
  const SpectralData& s = table.spectral();
  const std::size_t n = table.observable().size();
  struct RealPair {
    PairLabel label;
    std::vector<AlgebraicNumber> u;
  };
  std::vector<RealPair> real;
  for (auto [e, j] : pairs) {
    const auto& rec = s.eigenvalues[e];
    if (is_zero(table.generic(rec.factor_id, j))) continue;
    real.push_back({{rec.value, j}, table.vector(e, j)});
  }
  auto eqs = complex_equalities(table);
  if (n_complex) *n_complex = eqs.size();
  bool eq_rational = true;
  for (const auto& row : eqs) eq_rational = eq_rational && all_rational(row);

  auto base = [&]() {
    Member m;
    m.system.variables = n;
    m.rational = eq_rational;
    for (const auto& row : eqs) m.system.add(row, Relation::Equal);
    return m;
  };
  std::vector<Member> out;
  for (std::size_t i = 0; i < real.size(); ++i) {
    Member m = base();
    m.dominant = real[i].label;
    m.system.add(real[i].u, Relation::Greater);
    m.rational = m.rational && all_rational(real[i].u);
    for (std::size_t k = 0; k < i; ++k) {
      m.zeroed.push_back(real[k].label);
      m.system.add(real[k].u, Relation::Equal);
      m.rational = m.rational && all_rational(real[k].u);
    }
    out.push_back(std::move(m));
  }
  if (rel == Relation::GreaterEqual) {
    Member m = base();
    m.all_zero = true;
    for (const auto& rp : real) {
      m.zeroed.push_back(rp.label);
      m.system.add(rp.u, Relation::Equal);
      m.rational = m.rational && all_rational(rp.u);
    }
    out.push_back(std::move(m));
  }
  return out;
}

ConjunctiveSystem<Rational> to_rational_system(const ConjunctiveSystem<AlgebraicNumber>& s) {
  ConjunctiveSystem<Rational> out;
  out.variables = s.variables;
  for (const auto& row : s.rows) out.add(to_rational_vector(row.coeffs), row.rel, row.rhs.rational_value());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

void EscapeInstance::validate() const {
  const std::size_t d = dimension;
  if (d == 0) throw std::invalid_argument("dimension must be positive");
  if (A.rows() != d || A.cols() != d) throw std::invalid_argument("A must be d x d");
  if (a.size() != d) throw std::invalid_argument("a must have length d");
  auto check_block = [d](const RationalMatrix& b, const RationalVector& rhs, const char* name) {
    if (b.rows() != rhs.size()) throw std::invalid_argument(std::string(name) + ": B and b row counts differ");
    if (b.rows() > 0 && b.cols() != d) throw std::invalid_argument(std::string(name) + ": B must have d columns");
  };
  check_block(strict_B, strict_b, "strict block");
  check_block(nonstrict_B, nonstrict_b, "nonstrict block");
  if (row_count() == 0) throw std::invalid_argument("the polytope needs at least one constraint row");
}

EscapeInstance EscapeInstance::linear(RationalMatrix A, RationalMatrix strict_B, RationalVector strict_b,
                                      RationalMatrix nonstrict_B, RationalVector nonstrict_b) {
  EscapeInstance inst;
  inst.dimension = A.rows();
  inst.a = RationalVector(A.rows(), 0);
  inst.A = std::move(A);
  inst.strict_B = std::move(strict_B);
  inst.strict_b = std::move(strict_b);
  inst.nonstrict_B = std::move(nonstrict_B);
  inst.nonstrict_b = std::move(nonstrict_b);
  return inst;
}

RationalVector HomogeneousInstance::row(std::size_t i) const {
  if (i < strict_B.rows()) return strict_B.row(i);
  return nonstrict_B.row(i - strict_B.rows());
}

Relation HomogeneousInstance::relation(std::size_t i) const {
  return i < strict_B.rows() ? Relation::Greater : Relation::GreaterEqual;
}

std::vector<AlgebraicNumber> HomogeneousInstance::back_map(const std::vector<AlgebraicNumber>& z) const {
  if (z.size() != dimension) throw std::invalid_argument("back_map: dimension mismatch");
  const AlgebraicNumber& y = z.back();
  if (sign_real(y) != Sign::Positive) throw std::domain_error("back_map: last coordinate is not positive");
  std::vector<AlgebraicNumber> x(z.begin(), z.end() - 1);
  if (y == 1) return x;
  for (auto& v : x) v = v / y;
  return x;
}

HomogeneousInstance homogenize(const EscapeInstance& inst) {
  inst.validate();
  const std::size_t d = inst.dimension;
  HomogeneousInstance h;
  h.dimension = d + 1;
  h.A = RationalMatrix(d + 1, d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) h.A(i, j) = inst.A(i, j);
    h.A(i, d) = inst.a[i];
  }
  h.strict_B = RationalMatrix(inst.strict_rows() + 1, d + 1);
  for (std::size_t i = 0; i < inst.strict_rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) h.strict_B(i, j) = inst.strict_B(i, j);
    h.strict_B(i, d) = -inst.strict_b[i];
  }
  h.strict_B(inst.strict_rows(), d) = 1;
  h.nonstrict_B = RationalMatrix(inst.nonstrict_rows(), d + 1);
  for (std::size_t i = 0; i < inst.nonstrict_rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) h.nonstrict_B(i, j) = inst.nonstrict_B(i, j);
    h.nonstrict_B(i, d) = -inst.nonstrict_b[i];
  }
  return h;
}

EscapeContext::EscapeContext(const EscapeInstance& inst) : inst_(inst), hom_(homogenize(inst)) {
  spectral_ = std::make_shared<const SpectralData>(eigen_structure(hom_.A));
  for (std::size_t i = 0; i < hom_.row_count(); ++i) tables_.emplace_back(hom_.row(i), spectral_);
  real_pairs_ = sorted_real_pairs(*spectral_);
}

RowMembers per_constraint_members(const EscapeContext& ctx, std::size_t row) {
  RowMembers rm;
  rm.row = row;
  rm.rel = ctx.homogeneous().relation(row);
  rm.members = build_members(rm.rel, ctx.table(row), ctx.real_pairs(), &rm.complex_equalities);
  return rm;
}

std::vector<Member> per_constraint_members(const RationalVector& b, Relation rel, const CoefficientTable& table) {
  if (b != table.observable()) throw std::invalid_argument("coefficient table was built for a different row");
  return build_members(rel, table, sorted_real_pairs(table.spectral()), nullptr);
}

// ---------------------------------------------------------------------------

namespace {

class Search {
 public:
  Search(const std::vector<RowMembers>& rows, const DecideOptions& opt, std::size_t variables)
      : rows_(rows), opt_(opt), n_(variables), start_(Clock::now()) {}

  std::optional<std::pair<std::vector<std::size_t>, std::vector<AlgebraicNumber>>> run() {
    std::vector<std::size_t> choice;
    ConjunctiveSystem<AlgebraicNumber> acc;
    acc.variables = n_;
    std::vector<AlgebraicNumber> point;
    if (dfs(0, acc, true, choice, point)) return std::make_pair(choice, point);
    return std::nullopt;
  }
  std::size_t calls() const { return calls_; }

 private:
  bool check(const ConjunctiveSystem<AlgebraicNumber>& sys, bool rational, std::vector<AlgebraicNumber>& point) {
    if (calls_ >= opt_.max_branches) throw ResourceLimitExceeded("branch budget exhausted");
    if (std::chrono::duration<double>(Clock::now() - start_).count() > opt_.timeout_seconds)
      throw ResourceLimitExceeded("timeout");
    ++calls_;
    if (rational) {
      auto r = feasible(to_rational_system(sys));
      if (r.feasible) point = to_algebraic_vector(r.point);
      return r.feasible;
    }
    auto r = feasible(sys);
    if (r.feasible) point = r.point;
    return r.feasible;
  }

  bool dfs(std::size_t depth, const ConjunctiveSystem<AlgebraicNumber>& acc, bool rational,
           std::vector<std::size_t>& choice, std::vector<AlgebraicNumber>& point) {
    if (depth == rows_.size()) return true;
    const auto& members = rows_[depth].members;
    for (std::size_t m = 0; m < members.size(); ++m) {
      ConjunctiveSystem<AlgebraicNumber> next = acc;
      for (const auto& row : members[m].system.rows) next.rows.push_back(row);
      const bool next_rational = rational && members[m].rational;
      if (!check(next, next_rational, point)) continue;
      choice.push_back(m);
      if (dfs(depth + 1, next, next_rational, choice, point)) return true;
      choice.pop_back();
    }
    return false;
  }

  const std::vector<RowMembers>& rows_;
  const DecideOptions& opt_;
  std::size_t n_;
  Clock::time_point start_;
  std::size_t calls_ = 0;
};

// Polynomial r of degree < deg m(A) with r(A) close to exp(A T).
std::optional<RationalVector> exp_polynomial(const RationalMatrix& a, std::size_t degree, double t) {
  const std::size_t d = a.rows();
  Eigen::MatrixXd ad(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) ad(static_cast<long>(i), static_cast<long>(j)) = to_double(a(i, j));
  Eigen::MatrixXd target = (ad * t).exp();
  if (!target.allFinite()) return std::nullopt;
  Eigen::MatrixXd basis(static_cast<long>(d * d), static_cast<long>(degree));
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(static_cast<long>(d), static_cast<long>(d));
  for (std::size_t k = 0; k < degree; ++k) {
    basis.col(static_cast<long>(k)) = Eigen::Map<Eigen::VectorXd>(p.data(), p.size());
    p = p * ad;
  }
  Eigen::VectorXd rhs = Eigen::Map<Eigen::VectorXd>(target.data(), target.size());
  Eigen::VectorXd r = basis.colPivHouseholderQr().solve(rhs);
  if (!r.allFinite()) return std::nullopt;
  RationalVector out;
  for (long k = 0; k < r.size(); ++k) out.push_back(from_double(r(k)));
  return out;
}

constexpr double kMargin = 1e-6;

}  // namespace

double simulated_violation(const EscapeInstance& inst, const std::vector<double>& x, double horizon,
                           std::size_t samples) {
  double worst = 0;
  try {
    Trajectory tr = simulate(inst, x, horizon, samples);
    for (const auto& p : tr.points) worst = std::max(worst, relative_violation(inst, p));
  } catch (const std::overflow_error&) {
    // Growth beyond double range: fall back to the portion that fits.
    for (std::size_t k = 0; k < samples; ++k) {
      double t = horizon * static_cast<double>(k) / static_cast<double>(samples - 1);
      std::vector<double> p;
      try {
        p = flow(inst, x, t);
      } catch (const std::overflow_error&) {
        break;
      }
      worst = std::max(worst, relative_violation(inst, p));
    }
  }
  return worst;
}

namespace {

// Flow through the spectral split so exact zero components stay zero.
double witness_violation(const EscapeInstance& inst, const std::vector<AlgebraicNumber>& x, double horizon,
                         std::size_t samples) {
  try {
    Trajectory tr = simulate_spectral(inst, x, horizon, samples);
    double worst = 0;
    for (const auto& p : tr.points) worst = std::max(worst, relative_violation(inst, p));
    return worst;
  } catch (const std::overflow_error&) {
    return simulated_violation(inst, to_doubles(x), horizon, samples);
  }
}

}  // namespace

Verdict decide_escape(const EscapeInstance& inst, const DecideOptions& options) {
  Verdict v;
  auto t0 = Clock::now();
  inst.validate();
  HomogeneousInstance hom = homogenize(inst);
  v.timings.homogenize_ms = ms_since(t0);

  t0 = Clock::now();
  EscapeContext ctx(inst);
  v.timings.spectral_ms = ms_since(t0);

  t0 = Clock::now();
  std::vector<RowMembers> rows;
  for (std::size_t i = 0; i < hom.row_count(); ++i) rows.push_back(per_constraint_members(ctx, i));
  v.timings.members_ms = ms_since(t0);

  t0 = Clock::now();
  Search search(rows, options, hom.dimension);
  auto found = search.run();
  v.feasibility_calls = search.calls();
  v.timings.search_ms = ms_since(t0);
  if (!found) {
    v.outcome = Outcome::AllEscape;
    return v;
  }

  t0 = Clock::now();
  v.outcome = Outcome::TrappedExists;
  const auto& [choice, z] = *found;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Member& m = rows[i].members[choice[i]];
    RowCertificate rc;
    rc.row = i;
    rc.rel = rows[i].rel;
    rc.positivity_row = i == inst.strict_rows();
    rc.all_zero = m.all_zero;
    rc.dominant = m.dominant;
    rc.zeroed = m.zeroed;
    rc.complex_equalities = rows[i].complex_equalities;
    if (m.all_zero) v.degenerate_observable = true;
    v.certificate.push_back(std::move(rc));
  }

  Witness w;
  w.point = hom.back_map(z);
  w.rational = all_rational(w.point);
  auto accepted = verify_witness(w.point, ctx);
  if (!accepted.accepted) throw std::logic_error("feasible branch produced a rejected witness: " + accepted.reason);

  if (options.refine_witness) {
    const std::size_t samples = static_cast<std::size_t>(options.check_horizon * 40) + 1;
    if (witness_violation(inst, w.point, options.check_horizon, samples) <= kMargin) {
      w.simulation_checked = true;
    } else {
      std::vector<AlgebraicNumber> base = w.point;
      base.emplace_back(1);
      const std::size_t deg = static_cast<std::size_t>(ctx.spectral().minpoly.degree());
      auto pw = powers(hom.A, deg);
      for (double t = 0.5; t <= 64 && !w.simulation_checked; t *= 2) {
        auto r = exp_polynomial(hom.A, deg, t);
        if (!r) break;
        RationalMatrix m(hom.dimension, hom.dimension);
        for (std::size_t k = 0; k < deg; ++k) m = m + (*r)[k] * pw[k];
        std::vector<AlgebraicNumber> shifted;
        if (all_rational(base)) {
          shifted = to_algebraic_vector(mat_vec(m, to_rational_vector(base)));
        } else {
          for (std::size_t i = 0; i < hom.dimension; ++i) {
            AlgebraicNumber acc(0);
            for (std::size_t j = 0; j < hom.dimension; ++j)
              if (m(i, j) != 0 && !base[j].is_zero()) acc += AlgebraicNumber(m(i, j)) * base[j];
            shifted.push_back(acc);
          }
        }
        if (sign_real(shifted.back()) != Sign::Positive) continue;
        auto x = hom.back_map(shifted);
        if (!verify_witness(x, ctx).accepted) continue;
        if (witness_violation(inst, x, options.check_horizon, samples) > kMargin) continue;
        w.point = std::move(x);
        w.rational = all_rational(w.point);
        w.shift_time = t;
        w.simulation_checked = true;
      }
    }
  }
  v.witness = std::move(w);
  v.timings.witness_ms = ms_since(t0);
  return v;
}

// ---------------------------------------------------------------------------

WitnessCheck verify_witness(const std::vector<AlgebraicNumber>& x, const EscapeContext& ctx) {
  const auto& hom = ctx.homogeneous();
  const auto& s = ctx.spectral();
  if (x.size() + 1 != hom.dimension) throw std::invalid_argument("verify_witness: dimension mismatch");
  for (const auto& v : x)
    if (!v.is_real()) return {false, "witness has a non-real coordinate"};
  std::vector<AlgebraicNumber> z = x;
  z.emplace_back(1);
  const bool rational = all_rational(z);
  const RationalVector zr = rational ? to_rational_vector(z) : RationalVector{};

  for (std::size_t row = 0; row < hom.row_count(); ++row) {
    const auto& table = ctx.table(row);
    std::ostringstream where;
    where << "row " << row << ": ";
    // Non-real coefficients must vanish.
    for (std::size_t f = 0; f < s.factors.size(); ++f) {
      if (!has_nonreal_root(s, f)) continue;
      for (unsigned j = 0; j < s.factors[f].multiplicity; ++j) {
        if (rational) {
          // A nonzero field element is nonzero at every root of the factor.
          if (!table.dot(f, j, zr).is_zero()) return {false, where.str() + "non-real coefficients are nonzero"};
          continue;
        }
        for (auto e : s.factors[f].eigenvalues) {
          if (s.eigenvalues[e].real) continue;
          auto u = table.vector(e, j);
          AlgebraicNumber c(0);
          for (std::size_t i = 0; i < z.size(); ++i)
            if (!u[i].is_zero() && !z[i].is_zero()) c += u[i] * z[i];
          if (!c.is_zero()) return {false, where.str() + "non-real coefficients are nonzero"};
        }
      }
    }
    bool decided = false;
    for (auto [e, j] : ctx.real_pairs()) {
      const auto& rec = s.eigenvalues[e];
      AlgebraicNumber c;
      if (rational) {
        auto el = table.dot(rec.factor_id, j, zr);
        if (el.is_zero()) continue;
        c = s.factors[rec.factor_id].field.embed(el, rec.value);
      } else {
        auto u = table.vector(e, j);
        for (std::size_t i = 0; i < z.size(); ++i)
          if (!u[i].is_zero() && !z[i].is_zero()) c += u[i] * z[i];
        if (c.is_zero()) continue;
      }
      if (sign_real(c) != Sign::Positive) return {false, where.str() + "dominant coefficient is negative"};
      decided = true;
      break;
    }
    if (!decided && hom.relation(row) == Relation::Greater)
      return {false, where.str() + "all coefficients vanish on a strict row"};
  }
  return {true, ""};
}

WitnessCheck verify_witness(const std::vector<AlgebraicNumber>& x, const EscapeInstance& inst) {
  inst.validate();
  if (x.size() != inst.dimension) throw std::invalid_argument("verify_witness: dimension mismatch");
  EscapeContext ctx(inst);
  return verify_witness(x, ctx);
}

WitnessCheck verify_witness(const RationalVector& x, const EscapeInstance& inst) {
  return verify_witness(to_algebraic_vector(x), inst);
}

std::string to_string(Outcome outcome) {
  return outcome == Outcome::TrappedExists ? "trapped-exists" : "all-escape";
}

}  // namespace polyescape
