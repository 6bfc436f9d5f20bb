// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "polyescape/io.hpp"
#include "polyescape/oracle.hpp"

using namespace polyescape;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

struct Result {
  bool pass = true;
  std::string detail;
};

struct CorpusEntry {
  std::string name;
  EscapeInstance inst;
  Verdict verdict;
};

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int prec = 2) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(prec);
  ss << v;
  return ss.str();
}

RationalMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long lo, long hi) {
  RationalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(uniform(rng, lo, hi));
  return m;
}

RationalMatrix random_invertible(Rng& rng, std::size_t n) {
  for (;;) {
    RationalMatrix s = random_matrix(rng, n, n, -2, 2);
    if (rank(s) == n) return s;
  }
}

std::vector<double> to_doubles(const std::vector<AlgebraicNumber>& x) {
  std::vector<double> out;
  for (const auto& v : x) out.push_back(v.to_double());
  return out;
}

// ---------------------------------------------------------------- instances

EscapeInstance random_diagonalizable_instance(Rng& rng) {
  const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
  RationalMatrix s = random_invertible(rng, d);
  RationalMatrix diag(d, d);
  for (std::size_t i = 0; i < d; ++i) diag(i, i) = Rational(uniform(rng, -2, 2));
  EscapeInstance inst;
  inst.dimension = d;
  inst.A = mat_mul(mat_mul(s, diag), inverse(s));
  inst.a = RationalVector(d, 0);
  if (uniform(rng, 0, 1))
    for (auto& v : inst.a) v = Rational(uniform(rng, -2, 2));
  const std::size_t rows = static_cast<std::size_t>(uniform(rng, 1, 3));
  std::vector<RationalVector> strict, ns;
  RationalVector sb, nb;
  for (std::size_t r = 0; r < rows; ++r) {
    RationalVector row(d);
    do {
      for (auto& v : row) v = Rational(uniform(rng, -2, 2));
    } while (std::all_of(row.begin(), row.end(), [](const Rational& v) { return v == 0; }));
    Rational rhs(uniform(rng, -2, 2));
    if (uniform(rng, 0, 1)) {
      strict.push_back(row);
      sb.push_back(rhs);
    } else {
      ns.push_back(row);
      nb.push_back(rhs);
    }
  }
  auto stack = [d](const std::vector<RationalVector>& rs) {
    RationalMatrix m(rs.size(), d);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = rs[i][j];
    return m;
  };
  inst.strict_B = stack(strict);
  inst.strict_b = sb;
  inst.nonstrict_B = stack(ns);
  inst.nonstrict_b = nb;
  inst.validate();
  return inst;
}

EscapeInstance similar_instance(const EscapeInstance& inst, const RationalMatrix& s) {
  // x = S z
  RationalMatrix si = inverse(s);
  EscapeInstance out = inst;
  out.A = mat_mul(mat_mul(si, inst.A), s);
  out.a = mat_vec(si, inst.a);
  out.strict_B = mat_mul(inst.strict_B, s);
  out.nonstrict_B = mat_mul(inst.nonstrict_B, s);
  return out;
}

EscapeInstance scaled_rows(const EscapeInstance& inst, Rng& rng) {
  EscapeInstance out = inst;
  auto scale = [&](RationalMatrix& b, RationalVector& rhs) {
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      Rational f(uniform(rng, 1, 9), uniform(rng, 1, 9));
      f.canonicalize();
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= f;
      rhs[i] *= f;
    }
  };
  scale(out.strict_B, out.strict_b);
  scale(out.nonstrict_B, out.nonstrict_b);
  return out;
}

EscapeInstance without_row(const EscapeInstance& inst, std::size_t row) {
  EscapeInstance out = inst;
  auto drop = [](RationalMatrix& b, RationalVector& rhs, std::size_t i) {
    RationalMatrix m(b.rows() - 1, b.cols());
    for (std::size_t r = 0, k = 0; r < b.rows(); ++r) {
      if (r == i) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) m(k, c) = b(r, c);
      ++k;
    }
    b = m;
    rhs.erase(rhs.begin() + static_cast<long>(i));
  };
  if (row < inst.strict_rows())
    drop(out.strict_B, out.strict_b, row);
  else
    drop(out.nonstrict_B, out.nonstrict_b, row - inst.strict_rows());
  return out;
}

bool in_polytope(const EscapeInstance& inst, const std::vector<double>& x) {
  auto check = [&](const RationalMatrix& b, const RationalVector& rhs, bool strict) {
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      double v = -to_double(rhs[i]);
      for (std::size_t j = 0; j < x.size(); ++j) v += to_double(b(i, j)) * x[j];
      if (strict ? !(v > 0) : !(v >= 0)) return false;
    }
    return true;
  };
  return check(inst.strict_B, inst.strict_b, true) && check(inst.nonstrict_B, inst.nonstrict_b, false);
}

// Points of P: an exact feasible point plus random perturbations that stay inside.
std::vector<std::vector<double>> sample_polytope(const EscapeInstance& inst, Rng& rng, std::size_t count) {
  ConjunctiveSystem<Rational> sys;
  sys.variables = inst.dimension;
  for (std::size_t i = 0; i < inst.strict_rows(); ++i) sys.add(inst.strict_B.row(i), Relation::Greater, inst.strict_b[i]);
  for (std::size_t i = 0; i < inst.nonstrict_rows(); ++i)
    sys.add(inst.nonstrict_B.row(i), Relation::GreaterEqual, inst.nonstrict_b[i]);
  auto base = feasible(sys);
  if (!base.feasible) return {};
  std::vector<double> p;
  for (const auto& v : base.point) p.push_back(to_double(v));
  std::vector<std::vector<double>> out;
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0, 1);
  for (std::size_t tries = 0; out.size() < count && tries < 200 * count; ++tries) {
    double scale = std::pow(10.0, -2 + 3 * unit(rng));
    std::vector<double> q = p;
    for (auto& v : q) v += scale * gauss(rng);
    if (in_polytope(inst, q)) out.push_back(q);
  }
  while (out.size() < count) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------- criteria

std::vector<CorpusEntry> g_corpus;
std::vector<std::pair<EscapeInstance, Verdict>> g_random;

std::vector<CorpusEntry> load_corpus(const fs::path& dir, std::vector<std::string>& expected) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    Json doc = Json::parse(ss.str());
    out.push_back({f.stem().string(), parse_instance(doc), {}});
    expected.push_back(doc.at("expected").get<std::string>());
  }
  return out;
}

Result criterion_corpus(const fs::path& dir) {
  std::vector<std::string> expected;
  g_corpus = load_corpus(dir, expected);
  Result o;
  std::size_t match = 0;
  double worst = 0;
  std::string bad;
  for (std::size_t i = 0; i < g_corpus.size(); ++i) {
    auto t0 = Clock::now();
    g_corpus[i].verdict = decide_escape(g_corpus[i].inst);
    double s = seconds_since(t0);
    worst = std::max(worst, s);
    if (to_string(g_corpus[i].verdict.outcome) == expected[i] && s < 60) {
      ++match;
    } else {
      bad += " " + g_corpus[i].name;
    }
  }
  o.pass = g_corpus.size() >= 30 && match == g_corpus.size();
  o.detail = std::to_string(match) + "/" + std::to_string(g_corpus.size()) + " verdicts match, slowest " +
             fmt(worst, 3) + " s" + (bad.empty() ? "" : ", mismatches:" + bad);
  return o;
}

Result criterion_oracle(Rng& rng) {
  Result o;
  std::size_t agree = 0, trapped = 0;
  for (int k = 0; k < 100; ++k) {
    EscapeInstance inst = random_diagonalizable_instance(rng);
    Verdict v = decide_escape(inst);
    Verdict c = closed_form_decide(inst);
    if (v.outcome == c.outcome) {
      ++agree;
    } else {
      o.pass = false;
      o.detail += " disagreement on " + instance_to_json(inst).dump() + ";";
    }
    if (v.outcome == Outcome::TrappedExists) ++trapped;
    g_random.emplace_back(inst, v);
  }
  o.detail = std::to_string(agree) + "/100 agree (" + std::to_string(trapped) + " trapped)" + o.detail;
  return o;
}

Result criterion_simulation(Rng& rng) {
  Result o;
  std::size_t witnesses = 0, escapes = 0, points = 0;
  double worst_margin = 0;
  std::string bad;
  auto visit = [&](const std::string& name, const EscapeInstance& inst, const Verdict& v) {
    if (v.outcome == Outcome::TrappedExists) {
      ++witnesses;
      auto tr = simulate_spectral(inst, v.witness->point, 50, 5001);
      double m = 0;
      for (const auto& p : tr.points) m = std::max(m, relative_violation(inst, p));
      worst_margin = std::max(worst_margin, m);
      if (!(m < 1e-6)) bad += " " + name + "(witness leaves P: " + std::to_string(m) + ")";
      return;
    }
    ++escapes;
    for (const auto& x0 : sample_polytope(inst, rng, 100)) {
      ++points;
      if (!escape_scan(inst, x0, 100, 1e-9).escapes) {
        bad += " " + name + "(sampled point stays)";
        break;
      }
    }
  };
  for (const auto& e : g_corpus) visit(e.name, e.inst, e.verdict);
  for (std::size_t i = 0; i < g_random.size(); ++i)
    visit("random#" + std::to_string(i), g_random[i].first, g_random[i].second);
  o.pass = bad.empty();
  o.detail = std::to_string(witnesses) + " witnesses stay in P to t=50 (max violation " + std::to_string(worst_margin) +
             "), " + std::to_string(points) + " sampled points over " + std::to_string(escapes) +
             " all-escape instances escape by t=100" + bad;
  return o;
}

RationalMatrix random_structured_matrix(Rng& rng, std::size_t d) {
  switch (uniform(rng, 0, 2)) {
    case 0:
      return random_matrix(rng, d, d, -3, 3);
    case 1: {
      // Jordan blocks with small integer eigenvalues, conjugated
      RationalMatrix j(d, d);
      Rational lambda(uniform(rng, -2, 2));
      for (std::size_t i = 0; i < d; ++i) {
        if (i > 0 && uniform(rng, 0, 2) == 0) {
          j(i - 1, i) = 1;
        } else {
          lambda = Rational(uniform(rng, -2, 2));
        }
        j(i, i) = lambda;
        if (i > 0 && j(i - 1, i) == 1) j(i, i) = j(i - 1, i - 1);
      }
      RationalMatrix s = random_invertible(rng, d);
      return mat_mul(mat_mul(s, j), inverse(s));
    }
    default: {
      // companion blocks of x^2 + 1, x^2 - 2 or (x^2 + 1)^2, plus a scalar tail
      RationalMatrix m(d, d);
      std::size_t i = 0;
      while (i < d) {
        std::size_t left = d - i;
        long pick = uniform(rng, 0, 3);
        std::vector<long> poly;  // monic, ascending without leading 1
        if (pick == 3 && left >= 4) poly = {1, 0, 2, 0};
        else if (pick >= 1 && left >= 2) poly = pick == 1 ? std::vector<long>{1, 0} : std::vector<long>{-2, 0};
        else poly = {-uniform(rng, -2, 2)};
        std::size_t n = poly.size();
        for (std::size_t r = 1; r < n; ++r) m(i + r, i + r - 1) = 1;
        for (std::size_t r = 0; r < n; ++r) m(i + r, i + n - 1) = Rational(-poly[r]);
        i += n;
      }
      RationalMatrix s = random_invertible(rng, d);
      return mat_mul(mat_mul(s, m), inverse(s));
    }
  }
}

Result criterion_spectral(Rng& rng) {
  Result o;
  std::size_t ok = 0;
  for (int k = 0; k < 50; ++k) {
    std::size_t d = static_cast<std::size_t>(1 + k % 6);
    RationalMatrix a = random_structured_matrix(rng, d);
    auto s = std::make_shared<const SpectralData>(eigen_structure(a));
    bool good = check_projections(*s).all();
    RationalVector b(d);
    for (auto& v : b) v = Rational(uniform(rng, -3, 3));
    good = good && check_moment_identity(coefficient_table(b, s), static_cast<unsigned>(2 * d));
    if (good) ++ok;
    else o.detail += " failed on " + to_string(a) + ";";
  }
  o.pass = ok == 50;
  o.detail = std::to_string(ok) + "/50 matrices (d <= 6) satisfy the projection and moment identities" + o.detail;
  return o;
}

template <class T, class Gen>
ConjunctiveSystem<T> random_system(Rng& rng, Gen&& coefficient) {
  ConjunctiveSystem<T> s;
  s.variables = static_cast<std::size_t>(uniform(rng, 1, 4));
  const long rows = uniform(rng, 1, 8);
  for (long r = 0; r < rows; ++r) {
    std::vector<T> c;
    for (std::size_t i = 0; i < s.variables; ++i) c.push_back(coefficient());
    long pick = uniform(rng, 0, 5);
    Relation rel = pick == 0 ? Relation::Equal : pick <= 2 ? Relation::Greater : Relation::GreaterEqual;
    s.add(c, rel, T(Rational(uniform(rng, -3, 3))));
  }
  return s;
}

Result criterion_lp(Rng& rng) {
  Result o;
  std::size_t agree = 0, feas = 0;
  auto run = [&](const auto& sys) {
    auto a = feasible(sys);
    auto b = fm_eliminate(sys);
    bool good = a.feasible == b.feasible;
    if (a.feasible) good = good && satisfies(sys, a.point);
    if (b.feasible) good = good && satisfies(sys, b.point);
    if (good) ++agree;
    if (a.feasible) ++feas;
  };
  for (int k = 0; k < 500; ++k)
    run(random_system<Rational>(rng, [&] { return Rational(uniform(rng, -3, 3)); }));
  std::size_t rational_feasible = feas;
  const std::vector<AlgebraicNumber> pool = [] {
    AlgebraicNumber s2 = isolate_roots(RationalPolynomial({-2, 0, 1})).back();
    AlgebraicNumber s3 = isolate_roots(RationalPolynomial({-3, 0, 1})).back();
    AlgebraicNumber phi = isolate_roots(RationalPolynomial({-1, -1, 1})).back();
    return std::vector<AlgebraicNumber>{s2, -s2, s3, -s3, phi, -phi, 0, 1, -1, Rational(1, 2), 2, -3};
  }();
  for (int k = 0; k < 100; ++k)
    run(random_system<AlgebraicNumber>(rng, [&] { return pool[static_cast<std::size_t>(uniform(rng, 0, 11))]; }));
  o.pass = agree == 600;
  o.detail = std::to_string(agree) + "/600 systems agree and re-verify (" + std::to_string(rational_feasible) +
             "/500 rational and " + std::to_string(feas - rational_feasible) + "/100 algebraic feasible)";
  return o;
}

RationalPolynomial random_squarefree(Rng& rng) {
  for (;;) {
    std::size_t d = static_cast<std::size_t>(uniform(rng, 2, 5));
    std::vector<Rational> c;
    for (std::size_t i = 0; i <= d; ++i) c.push_back(Rational(uniform(rng, -20, 20)));
    if (c.back() == 0 || c.front() == 0) continue;
    RationalPolynomial p(c);
    if (gcd(p, p.derivative()).degree() == 0) return p;
  }
}

Result criterion_algebraic(Rng& rng) {
  Result o;
  std::string bad;
  AlgebraicNumber s2 = isolate_roots(RationalPolynomial({-2, 0, 1})).back();
  AlgebraicNumber s3 = isolate_roots(RationalPolynomial({-3, 0, 1})).back();
  if ((s2 + s3).minpoly() != RationalPolynomial({1, 0, -10, 0, 1})) bad += " sqrt2+sqrt3";
  if (!(s2 * s2 == AlgebraicNumber(2)) || (s2 * s2).minpoly() != RationalPolynomial({-2, 1})) bad += " sqrt2*sqrt2";

  std::size_t pairs = 0;
  for (int k = 0; k < 50; ++k) {
    RationalPolynomial p = random_squarefree(rng);
    Rational bound = mignotte_bound(p);
    auto roots = isolate_roots(p);
    std::vector<std::pair<ComplexRational, Rational>> approx;
    for (const auto& r : roots) approx.push_back(r.approximate(bound / 16));
    for (std::size_t i = 0; i < roots.size(); ++i) {
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        ++pairs;
        // |z_i - z_j| >= |c_i - c_j| - e_i - e_j > bound, checked on squares
        Rational need = bound + approx[i].second + approx[j].second;
        if (!((approx[i].first - approx[j].first).norm2() > need * need)) bad += " mignotte(" + to_string(p) + ")";
      }
    }
  }

  std::vector<AlgebraicNumber> nums;
  while (nums.size() < 100) {
    switch (uniform(rng, 0, 2)) {
      case 0:
        for (const auto& r : isolate_roots(random_squarefree(rng)))
          if (r.is_real() && nums.size() < 100) nums.push_back(r);
        break;
      case 1:
        nums.push_back(Rational(uniform(rng, -40, 40), uniform(rng, 1, 9)));
        break;
      default:
        if (nums.size() >= 2) {
          const auto& a = nums[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(nums.size()) - 1))];
          const auto& b = nums[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(nums.size()) - 1))];
          nums.push_back(uniform(rng, 0, 1) ? a + b : a - b);
        }
    }
  }
  std::size_t inconsistent = 0;
  const Rational eps(1, Integer("1000000000000000000000000000000"));
  std::vector<std::pair<Rational, Rational>> iv;
  for (const auto& x : nums) iv.push_back(x.interval(eps));
  for (std::size_t i = 0; i < nums.size(); ++i) {
    for (std::size_t j = 0; j < nums.size(); ++j) {
      Ordering c = compare_real(nums[i], nums[j]);
      Ordering back = compare_real(nums[j], nums[i]);
      bool ok = static_cast<int>(c) == -static_cast<int>(back);
      if (c == Ordering::Less) ok = ok && iv[i].first < iv[j].second;
      if (c == Ordering::Greater) ok = ok && iv[i].second > iv[j].first;
      if (c == Ordering::Equal) ok = ok && iv[i].first <= iv[j].second && iv[j].first <= iv[i].second;
      if (iv[i].second < iv[j].first) ok = ok && c == Ordering::Less;
      if (!ok) ++inconsistent;
    }
  }
  std::vector<AlgebraicNumber> sorted = nums;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (compare_real(sorted[i - 1], sorted[i]) == Ordering::Greater) ++inconsistent;
  if (inconsistent) bad += " compare_real(" + std::to_string(inconsistent) + " inconsistent)";
  o.pass = bad.empty();
  o.detail = "arithmetic examples exact, " + std::to_string(pairs) +
             " root pairs above the Mignotte bound, 100 numbers ordered consistently" + bad;
  if (!o.pass) o.detail = "failures:" + bad;
  return o;
}

Result criterion_density(Rng& rng) {
  Result o;
  std::string bad;
  const double s2 = std::sqrt(2.0);
  std::size_t hits = 0;
  for (double eps : {0.1, 0.05, 0.02}) {
    for (double psi : {0.0, 0.5, 0.25, 0.123, 0.9}) {
      if (kronecker_scan({s2}, {psi}, eps, 100000)) ++hits;
      else bad += " kronecker(eps=" + fmt(eps) + ",psi=" + fmt(psi, 3) + ")";
    }
  }
  std::size_t negative = 0;
  std::uniform_real_distribution<double> unit(0, 1);
  for (int k = 0; k < 50; ++k) {
    LaurentSpec g;
    std::size_t vars = static_cast<std::size_t>(uniform(rng, 1, 3));
    for (std::size_t i = 0; i < vars; ++i) g.theta.push_back(0.05 + unit(rng));
    long terms = uniform(rng, 1, 4);
    for (long t = 0; t < terms; ++t) {
      std::complex<double> c(unit(rng) * 2 - 1, unit(rng) * 2 - 1);
      int e = static_cast<int>(uniform(rng, 1, 3)) * (uniform(rng, 0, 1) ? 1 : -1);
      g.terms.push_back({c, static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(vars) - 1)), e});
    }
    if (g.is_identically_zero()) {
      --k;
      continue;
    }
    auto r = liminf_scan(g, 10000);
    if (!r.identically_zero && r.min_value < 0) ++negative;
    else bad += " liminf#" + std::to_string(k);
  }
  o.pass = bad.empty();
  o.detail = std::to_string(hits) + "/15 Kronecker scans hit within N=1e5, " + std::to_string(negative) +
             "/50 Laurent specs go negative within N=1e4" + bad;
  return o;
}

Result criterion_invariance(Rng& rng) {
  Result o;
  std::size_t checks = 0;
  std::string bad;
  for (const auto& e : g_corpus) {
    auto base = e.verdict.outcome;
    auto expect = [&](const EscapeInstance& inst, const char* what) {
      ++checks;
      if (decide_escape(inst).outcome != base) bad += " " + e.name + "(" + what + ")";
    };
    expect(scaled_rows(e.inst, rng), "row scaling");
    if (e.inst.dimension <= 4) expect(similar_instance(e.inst, random_invertible(rng, e.inst.dimension)), "similarity");
    if (base == Outcome::TrappedExists && e.inst.row_count() > 1) {
      for (std::size_t r = 0; r < e.inst.row_count(); ++r) {
        ++checks;
        if (decide_escape(without_row(e.inst, r)).outcome != Outcome::TrappedExists)
          bad += " " + e.name + "(removing row " + std::to_string(r) + ")";
      }
    }
  }
  o.pass = bad.empty();
  o.detail = std::to_string(checks) + " exact verdict comparisons" + bad;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::string corpus = POLYESCAPE_CORPUS_DIR;
  unsigned long seed = 20240501;
  app.add_option("--corpus", corpus, "Directory of corpus instances");
  app.add_option("--seed", seed, "Random seed");
  std::size_t last = 8;
  app.add_option("--last", last, "Stop after this criterion (later ones depend on earlier state)");
  CLI11_PARSE(app, argc, argv);

  Rng rng(seed);
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
      {"curated verdict corpus", [&] { return criterion_corpus(corpus); }},
      {"oracle equivalence", [&] { return criterion_oracle(rng); }},
      {"simulation consistency", [&] { return criterion_simulation(rng); }},
      {"spectral exactness", [&] { return criterion_spectral(rng); }},
      {"LP kernel agreement", [&] { return criterion_lp(rng); }},
      {"algebraic kernel", [&] { return criterion_algebraic(rng); }},
      {"density and liminf scans", [&] { return criterion_density(rng); }},
      {"invariance suite", [&] { return criterion_invariance(rng); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size() && i < last; ++i) {
    auto t0 = Clock::now();
    Result o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = Result{false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail << " [" << fmt(seconds_since(t0), 1) << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
