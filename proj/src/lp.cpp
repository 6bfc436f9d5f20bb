#include "polyescape/lp.hpp"

#include <optional>

namespace polyescape {

namespace {

struct Lifted {
  std::shared_ptr<const EmbeddedField> field;
  ConjunctiveSystem<FieldNumber> sys;
};

std::optional<Lifted> lift(const ConjunctiveSystem<AlgebraicNumber>& sys) {
  std::vector<AlgebraicNumber> xs;
  for (const auto& row : sys.rows) {
    for (const auto& c : row.coeffs)
      if (!c.is_rational()) xs.push_back(c);
    if (!row.rhs.is_rational()) xs.push_back(row.rhs);
  }
  if (xs.empty()) return std::nullopt;
  for (const auto& x : xs)
    if (!x.is_real()) return std::nullopt;
  auto field = common_field(xs, 32);
  if (!field || !field->generator().is_real()) return std::nullopt;
  auto convert = [&](const AlgebraicNumber& x) -> std::optional<FieldNumber> {
    if (x.is_rational()) return FieldNumber(x.rational_value());
    auto e = x.element_in(*field);
    if (!e) return std::nullopt;
    return FieldNumber(field, *e);
  };
  Lifted out{field, {}};
  out.sys.variables = sys.variables;
  for (const auto& row : sys.rows) {
    LinearRow<FieldNumber> r;
    r.rel = row.rel;
    for (const auto& c : row.coeffs) {
      auto v = convert(c);
      if (!v) return std::nullopt;
      r.coeffs.push_back(std::move(*v));
    }
    auto rhs = convert(row.rhs);
    if (!rhs) return std::nullopt;
    r.rhs = std::move(*rhs);
    out.sys.rows.push_back(std::move(r));
  }
  return out;
}

FeasibilityResult<AlgebraicNumber> lower(const FeasibilityResult<FieldNumber>& r) {
  FeasibilityResult<AlgebraicNumber> out{r.feasible, {}};
  for (const auto& v : r.point) out.point.push_back(v.value());
  return out;
}

template <class Lo, class Hi>
Rational dyadic_between(const Lo& lo, const Hi& hi) {
  Rational w = 1;
  for (;;) {
    auto [a1, b1] = lo(w);
    auto [a2, b2] = hi(w);
    if (b1 < a2) {
      // Prefer a short dyadic inside (b1, a2).
      Rational gap = a2 - b1;
      Rational step = 1;
      while (step > gap / 4) step /= 2;
      Rational k(floor(Rational(b1 / step)) + 1);
      return k * step;
    }
    w /= 4;
  }
}

}  // namespace

FeasibilityResult<AlgebraicNumber> feasible(const ConjunctiveSystem<AlgebraicNumber>& sys) {
  if (auto l = lift(sys)) {
    auto r = lower(feasible<FieldNumber>(l->sys));
    if (r.feasible && !satisfies(sys, r.point)) throw std::logic_error("lifted simplex point fails verification");
    return r;
  }
  return feasible<AlgebraicNumber>(sys);
}

FeasibilityResult<AlgebraicNumber> fm_eliminate(const ConjunctiveSystem<AlgebraicNumber>& sys, const FmLimits& limits) {
  if (auto l = lift(sys)) {
    auto r = lower(fm_eliminate<FieldNumber>(l->sys, limits));
    if (r.feasible && !satisfies(sys, r.point)) throw std::logic_error("lifted elimination point fails verification");
    return r;
  }
  return fm_eliminate<AlgebraicNumber>(sys, limits);
}

std::string to_string(Relation rel) {
  switch (rel) {
    case Relation::Equal: return "=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Greater: return ">";
  }
  return "?";
}

Rational rational_between(const Rational& lo, const Rational& hi) { return (lo + hi) / 2; }

Rational rational_between(const AlgebraicNumber& lo, const AlgebraicNumber& hi) {
  if (lo.is_rational() && hi.is_rational()) return rational_between(lo.rational_value(), hi.rational_value());
  return dyadic_between([&](const Rational& w) { return lo.interval(w); },
                        [&](const Rational& w) { return hi.interval(w); });
}

Rational rational_between(const FieldNumber& lo, const FieldNumber& hi) {
  if (lo.is_rational() && hi.is_rational()) return rational_between(lo.rational_value(), hi.rational_value());
  return dyadic_between([&](const Rational& w) { return lo.interval(w); },
                        [&](const Rational& w) { return hi.interval(w); });
}

Rational rational_above(const Rational& v) { return Rational(floor(v) + 1); }
Rational rational_below(const Rational& v) { return Rational(ceil(v) - 1); }

Rational rational_above(const AlgebraicNumber& v) {
  if (v.is_rational()) return rational_above(v.rational_value());
  return Rational(floor(v.interval(1).second) + 1);
}

Rational rational_below(const AlgebraicNumber& v) {
  if (v.is_rational()) return rational_below(v.rational_value());
  return Rational(ceil(v.interval(1).first) - 1);
}

Rational rational_above(const FieldNumber& v) { return Rational(floor(v.interval(1).second) + 1); }
Rational rational_below(const FieldNumber& v) { return Rational(ceil(v.interval(1).first) - 1); }

}  // namespace polyescape
