#pragma once

#include <algorithm>
#include <memory>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyescape/algebraic.hpp"
#include "polyescape/number_field.hpp"
#include "polyescape/rational.hpp"

namespace polyescape {

enum class Relation { Equal, GreaterEqual, Greater };

std::string to_string(Relation rel);

/// coeffs . x  rel  rhs
template <class T>
struct LinearRow {
  std::vector<T> coeffs;
  Relation rel = Relation::GreaterEqual;
  T rhs = T(0);
};

template <class T>
struct ConjunctiveSystem {
  std::size_t variables = 0;
  std::vector<LinearRow<T>> rows;

  void add(std::vector<T> coeffs, Relation rel, T rhs = T(0)) {
    if (coeffs.size() != variables) throw std::invalid_argument("row length does not match the variable count");
    rows.push_back({std::move(coeffs), rel, std::move(rhs)});
  }
};

template <class T>
struct FeasibilityResult {
  bool feasible = false;
  std::vector<T> point;
};

inline int scalar_sign(const Rational& v) { return sgn(v); }
inline int scalar_sign(const AlgebraicNumber& v) { return static_cast<int>(sign_real(v)); }
inline bool scalar_zero(const Rational& v) { return v == 0; }
inline bool scalar_zero(const AlgebraicNumber& v) { return v.is_zero(); }
inline int scalar_sign(const FieldNumber& v) { return v.sign(); }
inline bool scalar_zero(const FieldNumber& v) { return v.is_zero(); }

/// A rational strictly between lo < hi.
Rational rational_between(const Rational& lo, const Rational& hi);
Rational rational_between(const AlgebraicNumber& lo, const AlgebraicNumber& hi);
/// A rational strictly above / below v.
Rational rational_above(const Rational& v);
Rational rational_above(const AlgebraicNumber& v);
Rational rational_below(const Rational& v);
Rational rational_below(const AlgebraicNumber& v);
Rational rational_between(const FieldNumber& lo, const FieldNumber& hi);
Rational rational_above(const FieldNumber& v);
Rational rational_below(const FieldNumber& v);

template <class T>
T row_value(const LinearRow<T>& row, const std::vector<T>& x) {
  T acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (scalar_zero(row.coeffs[i]) || scalar_zero(x[i])) continue;
    acc += row.coeffs[i] * x[i];
  }
  return acc - row.rhs;
}

template <class T>
bool row_holds(const LinearRow<T>& row, const std::vector<T>& x) {
  int s = scalar_sign(row_value(row, x));
  switch (row.rel) {
    case Relation::Equal: return s == 0;
    case Relation::GreaterEqual: return s >= 0;
    case Relation::Greater: return s > 0;
  }
  return false;
}

/// Exact check of every row.
template <class T>
bool satisfies(const ConjunctiveSystem<T>& s, const std::vector<T>& x) {
  if (x.size() != s.variables) return false;
  for (const auto& row : s.rows)
    if (!row_holds(row, x)) return false;
  return true;
}

namespace detail {

template <class T>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_(rows, std::vector<T>(cols + 1, T(0))) {}

  T& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  T& rhs(std::size_t r) { return a_[r][n_]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t r, std::size_t c, std::vector<T>& obj) {
    T inv = T(1) / a_[r][c];
    for (std::size_t j = 0; j <= n_; ++j)
      if (!scalar_zero(a_[r][j])) a_[r][j] = a_[r][j] * inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || scalar_zero(a_[i][c])) continue;
      T f = a_[i][c];
      for (std::size_t j = 0; j <= n_; ++j)
        if (!scalar_zero(a_[r][j])) a_[i][j] = a_[i][j] - f * a_[r][j];
    }
    if (!scalar_zero(obj[c])) {
      T f = obj[c];
      for (std::size_t j = 0; j <= n_; ++j)
        if (!scalar_zero(a_[r][j])) obj[j] = obj[j] - f * a_[r][j];
    }
  }

  /// Maximizes with reduced costs in obj (enter on negative); Bland's rule.
  /// Only columns with allowed[c] may enter.
  void optimize(std::vector<T>& obj, std::vector<std::size_t>& basis, const std::vector<bool>& allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < n_; ++j) {
        if (allowed[j] && scalar_sign(obj[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return;
      std::optional<std::size_t> leave;
      T best(0);
      for (std::size_t i = 0; i < m_; ++i) {
        if (scalar_sign(a_[i][*enter]) <= 0) continue;
        T ratio = a_[i][n_] / a_[i][*enter];
        if (!leave) {
          leave = i;
          best = ratio;
          continue;
        }
        int c = scalar_sign(ratio - best);
        if (c < 0 || (c == 0 && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) throw std::logic_error("unbounded direction in a bounded program");
      pivot(*leave, *enter, obj);
      basis[*leave] = *enter;
    }
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<T>> a_;
};

}  // namespace detail

/// Exact feasibility by two-phase simplex. Strict rows share one slack s in
/// [0, 1] that is maximized; the system is feasible iff the maximum is
/// positive. Returned points are checked against every row.
template <class T>
FeasibilityResult<T> feasible(const ConjunctiveSystem<T>& sys) {
  const std::size_t n = sys.variables;
  for (const auto& row : sys.rows)
    if (row.coeffs.size() != n) throw std::invalid_argument("row length does not match the variable count");
  bool any_strict = false;
  std::size_t surplus = 0;
  for (const auto& row : sys.rows) {
    if (row.rel != Relation::Equal) ++surplus;
    if (row.rel == Relation::Greater) any_strict = true;
  }
  // Columns: x+ (n), x- (n), s (1, if strict), surplus, s-bound surplus, artificials.
  const std::size_t col_s = 2 * n;
  const std::size_t col_surplus = col_s + (any_strict ? 1 : 0);
  const std::size_t m = sys.rows.size() + (any_strict ? 1 : 0);
  const std::size_t col_art = col_surplus + surplus + (any_strict ? 1 : 0);
  const std::size_t total = col_art + m;
  if (m == 0) return {true, std::vector<T>(n, T(0))};

  detail::Tableau<T> tab(m, total);
  std::size_t next_surplus = col_surplus;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const auto& row = sys.rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (scalar_zero(row.coeffs[j])) continue;
      tab.at(i, j) = row.coeffs[j];
      tab.at(i, n + j) = -row.coeffs[j];
    }
    if (row.rel != Relation::Equal) tab.at(i, next_surplus++) = T(-1);
    if (row.rel == Relation::Greater) tab.at(i, col_s) = T(-1);
    tab.rhs(i) = row.rhs;
  }
  if (any_strict) {
    const std::size_t i = m - 1;
    tab.at(i, col_s) = T(1);
    tab.at(i, next_surplus++) = T(1);
    tab.rhs(i) = T(1);
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (scalar_sign(tab.rhs(i)) < 0) {
      for (std::size_t j = 0; j < col_art; ++j)
        if (!scalar_zero(tab.at(i, j))) tab.at(i, j) = -tab.at(i, j);
      tab.rhs(i) = -tab.rhs(i);
    }
    tab.at(i, col_art + i) = T(1);
    basis[i] = col_art + i;
  }

  // Phase 1: maximize -sum(artificials).
  std::vector<T> obj(total + 1, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < col_art; ++j)
      if (!scalar_zero(tab.at(i, j))) obj[j] = obj[j] - tab.at(i, j);
    obj[total] = obj[total] - tab.rhs(i);
  }
  std::vector<bool> allowed(total, true);
  tab.optimize(obj, basis, allowed);
  if (!scalar_zero(obj[total])) return {};

  // Drive artificials out of the basis.
  for (std::size_t i = 0; i < tab.rows();) {
    if (basis[i] < col_art) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < col_art; ++j) {
      if (!scalar_zero(tab.at(i, j))) {
        col = j;
        break;
      }
    }
    if (col) {
      tab.pivot(i, *col, obj);
      basis[i] = *col;
      ++i;
    } else {
      tab.drop_row(i);
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  for (std::size_t j = col_art; j < total; ++j) allowed[j] = false;

  if (any_strict) {
    // Phase 2: maximize s.
    std::fill(obj.begin(), obj.end(), T(0));
    obj[col_s] = T(-1);
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (basis[i] != col_s) continue;
      for (std::size_t j = 0; j <= total; ++j)
        if (!scalar_zero(tab.at(i, j))) obj[j] = obj[j] + tab.at(i, j);
      obj[col_s] = T(0);
    }
    tab.optimize(obj, basis, allowed);
    if (scalar_sign(obj[total]) <= 0) return {};
  }

  std::vector<T> z(total, T(0));
  for (std::size_t i = 0; i < tab.rows(); ++i) z[basis[i]] = tab.rhs(i);
  FeasibilityResult<T> out{true, std::vector<T>(n, T(0))};
  for (std::size_t j = 0; j < n; ++j) {
    if (scalar_zero(z[j]) && scalar_zero(z[n + j])) continue;
    out.point[j] = z[j] - z[n + j];
  }
  if (!satisfies(sys, out.point)) throw std::logic_error("simplex returned a point that fails verification");
  return out;
}

struct ScaleLimit : std::length_error {
  using std::length_error::length_error;
};

struct FmLimits {
  std::size_t variables = 6;
  std::size_t rows = 12;
  std::size_t intermediate_rows = 20000;
};

/// Fourier-Motzkin elimination with strictness tracking and back
/// substitution. By default limited to 6 variables and 12 rows.
template <class T>
FeasibilityResult<T> fm_eliminate(const ConjunctiveSystem<T>& sys, const FmLimits& limits = {}) {
  const std::size_t n = sys.variables;
  if (n > limits.variables || sys.rows.size() > limits.rows)
    throw ScaleLimit("fm_eliminate: system exceeds the variable or row limit");
  for (const auto& row : sys.rows)
    if (row.coeffs.size() != n) throw std::invalid_argument("row length does not match the variable count");

  struct Step {
    std::size_t var;
    bool by_equality;
    LinearRow<T> equality;           // when by_equality: var = (rhs - rest) / coeff
    std::vector<LinearRow<T>> rows;  // inequalities mentioning var, before elimination
  };
  std::vector<Step> steps;
  std::vector<LinearRow<T>> rows = sys.rows;
  std::vector<bool> eliminated(n, false);

  auto consistent_constant = [](const LinearRow<T>& r) {
    // 0 rel rhs
    int s = -scalar_sign(r.rhs);
    switch (r.rel) {
      case Relation::Equal: return s == 0;
      case Relation::GreaterEqual: return s >= 0;
      case Relation::Greater: return s > 0;
    }
    return false;
  };
  auto is_constant = [&](const LinearRow<T>& r) {
    for (const auto& c : r.coeffs)
      if (!scalar_zero(c)) return false;
    return true;
  };
  auto prune = [&](std::vector<LinearRow<T>>& rs) {
    std::vector<LinearRow<T>> kept;
    for (auto& r : rs) {
      if (is_constant(r)) {
        if (!consistent_constant(r)) return false;
        continue;
      }
      bool dup = false;
      for (const auto& k : kept) {
        if (k.rel == r.rel && k.coeffs == r.coeffs && k.rhs == r.rhs) {
          dup = true;
          break;
        }
      }
      if (!dup) kept.push_back(std::move(r));
    }
    rs = std::move(kept);
    return true;
  };
  if (!prune(rows)) return {};

  // Equalities first.
  for (;;) {
    std::optional<std::size_t> eq_index, var;
    for (std::size_t i = 0; i < rows.size() && !eq_index; ++i) {
      if (rows[i].rel != Relation::Equal) continue;
      for (std::size_t v = 0; v < n; ++v) {
        if (!scalar_zero(rows[i].coeffs[v])) {
          eq_index = i;
          var = v;
          break;
        }
      }
    }
    if (!eq_index) break;
    LinearRow<T> eq = rows[*eq_index];
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(*eq_index));
    const T c = eq.coeffs[*var];
    for (auto& r : rows) {
      if (scalar_zero(r.coeffs[*var])) continue;
      // r - (r_v / c) * eq
      T f = r.coeffs[*var] / c;
      for (std::size_t j = 0; j < n; ++j)
        if (!scalar_zero(eq.coeffs[j])) r.coeffs[j] = r.coeffs[j] - f * eq.coeffs[j];
      r.coeffs[*var] = T(0);
      r.rhs = r.rhs - f * eq.rhs;
    }
    steps.push_back({*var, true, eq, {}});
    eliminated[*var] = true;
    if (!prune(rows)) return {};
  }

  // Inequalities.
  for (;;) {
    std::optional<std::size_t> best;
    std::size_t best_cost = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& r : rows) {
        int s = scalar_sign(r.coeffs[v]);
        if (s > 0) ++pos;
        if (s < 0) ++neg;
      }
      std::size_t cost = pos * neg;
      if (!best || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    if (!best) break;
    const std::size_t v = *best;
    std::vector<LinearRow<T>> pos, neg, rest, involved;
    for (auto& r : rows) {
      int s = scalar_sign(r.coeffs[v]);
      if (s == 0) {
        rest.push_back(std::move(r));
      } else {
        involved.push_back(r);
        (s > 0 ? pos : neg).push_back(std::move(r));
      }
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        // |q_v| p + p_v q
        const T wp = -q.coeffs[v];
        const T wq = p.coeffs[v];
        LinearRow<T> r;
        r.coeffs.assign(n, T(0));
        for (std::size_t j = 0; j < n; ++j) {
          if (j == v) continue;
          T acc(0);
          if (!scalar_zero(p.coeffs[j])) acc = acc + wp * p.coeffs[j];
          if (!scalar_zero(q.coeffs[j])) acc = acc + wq * q.coeffs[j];
          r.coeffs[j] = acc;
        }
        r.rhs = wp * p.rhs + wq * q.rhs;
        r.rel = (p.rel == Relation::Greater || q.rel == Relation::Greater) ? Relation::Greater : Relation::GreaterEqual;
        rest.push_back(std::move(r));
      }
    }
    steps.push_back({v, false, {}, std::move(involved)});
    eliminated[v] = true;
    rows = std::move(rest);
    if (!prune(rows)) return {};
    if (rows.size() > limits.intermediate_rows) throw ScaleLimit("fm_eliminate: intermediate row count exceeds the cap");
  }

  // Back substitution; unconstrained variables stay 0.
  FeasibilityResult<T> out{true, std::vector<T>(n, T(0))};
  for (std::size_t k = steps.size(); k-- > 0;) {
    const Step& st = steps[k];
    const std::size_t v = st.var;
    if (st.by_equality) {
      T acc = st.equality.rhs;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == v || scalar_zero(st.equality.coeffs[j]) || scalar_zero(out.point[j])) continue;
        acc = acc - st.equality.coeffs[j] * out.point[j];
      }
      out.point[v] = acc / st.equality.coeffs[v];
      continue;
    }
    std::optional<T> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& r : st.rows) {
      // c_v x_v + rest rel rhs  =>  x_v rel' (rhs - rest) / c_v
      T acc = r.rhs;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == v || scalar_zero(r.coeffs[j]) || scalar_zero(out.point[j])) continue;
        acc = acc - r.coeffs[j] * out.point[j];
      }
      T bound = acc / r.coeffs[v];
      const bool strict = r.rel == Relation::Greater;
      if (scalar_sign(r.coeffs[v]) > 0) {
        int c = lo ? scalar_sign(bound - *lo) : 1;
        if (c > 0 || (c == 0 && strict)) {
          lo = bound;
          lo_strict = strict;
        }
      } else {
        int c = hi ? scalar_sign(bound - *hi) : -1;
        if (c < 0 || (c == 0 && strict)) {
          hi = bound;
          hi_strict = strict;
        }
      }
    }
    if (lo && hi) {
      int c = scalar_sign(*hi - *lo);
      if (c < 0 || (c == 0 && (lo_strict || hi_strict)))
        throw std::logic_error("fm_eliminate: empty interval during back substitution");
      out.point[v] = c == 0 ? *lo : T(rational_between(*lo, *hi));
    } else if (lo) {
      out.point[v] = T(rational_above(*lo));
    } else if (hi) {
      out.point[v] = T(rational_below(*hi));
    }
  }
  if (!satisfies(sys, out.point)) throw std::logic_error("fm_eliminate returned a point that fails verification");
  return out;
}

/// Algebraic systems are solved over a common number field when one of
/// moderate degree exists, and with AlgebraicNumber arithmetic otherwise.
FeasibilityResult<AlgebraicNumber> feasible(const ConjunctiveSystem<AlgebraicNumber>& sys);
FeasibilityResult<AlgebraicNumber> fm_eliminate(const ConjunctiveSystem<AlgebraicNumber>& sys,
                                                const FmLimits& limits = {});

}  // namespace polyescape
