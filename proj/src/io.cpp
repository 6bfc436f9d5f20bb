#include "polyescape/io.hpp"

#include <stdexcept>

namespace polyescape {

namespace {

Rational scalar(const Json& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw std::invalid_argument(std::string(what) + ": expected a rational string");
}

RationalVector vector_of(const Json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array");
  RationalVector v;
  for (const auto& e : j) v.push_back(scalar(e, what));
  return v;
}

RationalMatrix matrix_of(const Json& j, std::size_t cols, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array of rows");
  RationalMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    RationalVector row = vector_of(j[r], what);
    if (row.size() != cols) throw std::invalid_argument(std::string(what) + ": row length differs from dimension");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

Json vector_json(const RationalVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(to_string(x));
  return j;
}

Json matrix_json(const RationalMatrix& m) {
  Json j = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) j.push_back(vector_json(m.row(r)));
  return j;
}

Json block_json(const RationalMatrix& b, const RationalVector& rhs) {
  return Json{{"B", matrix_json(b)}, {"b", vector_json(rhs)}};
}

Json pair_json(const PairLabel& p) {
  return Json{{"eta", coordinate_to_json(p.eta)}, {"eta_decimal", decimal(p.eta)}, {"j", p.j}};
}

}  // namespace

EscapeInstance parse_instance(const Json& doc) {
  try {
    if (!doc.is_object()) throw std::invalid_argument("instance: expected a JSON object");
    EscapeInstance inst;
    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer() || doc["dimension"].get<long long>() <= 0)
      throw std::invalid_argument("instance: dimension must be a positive integer");
    const std::size_t d = doc["dimension"].get<std::size_t>();
    inst.dimension = d;
    if (!doc.contains("dynamics")) throw std::invalid_argument("instance: missing dynamics");
    const Json& dyn = doc["dynamics"];
    if (!dyn.contains("A")) throw std::invalid_argument("instance: missing dynamics.A");
    inst.A = matrix_of(dyn["A"], d, "dynamics.A");
    inst.a = dyn.contains("a") ? vector_of(dyn["a"], "dynamics.a") : RationalVector(d, 0);
    const Json poly = doc.value("polytope", Json::object());
    auto block = [&](const char* name, RationalMatrix& b, RationalVector& rhs) {
      if (!poly.contains(name) || poly[name].is_null()) {
        b = RationalMatrix(0, d);
        return;
      }
      const Json& blk = poly[name];
      b = blk.contains("B") ? matrix_of(blk["B"], d, name) : RationalMatrix(0, d);
      rhs = blk.contains("b") ? vector_of(blk["b"], name) : RationalVector{};
    };
    block("strict", inst.strict_B, inst.strict_b);
    block("nonstrict", inst.nonstrict_B, inst.nonstrict_b);
    inst.validate();
    return inst;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("instance: ") + e.what());
  }
}

EscapeInstance parse_instance_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(doc);
}

Json instance_to_json(const EscapeInstance& inst) {
  Json j;
  j["dimension"] = inst.dimension;
  j["dynamics"] = Json{{"A", matrix_json(inst.A)}, {"a", vector_json(inst.a)}};
  j["polytope"] = Json{{"strict", block_json(inst.strict_B, inst.strict_b)},
                       {"nonstrict", block_json(inst.nonstrict_B, inst.nonstrict_b)}};
  return j;
}

RationalMatrix parse_square_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected a nonempty array of rows");
  return matrix_of(j, j.size(), "matrix");
}

Json algebraic_to_json(const AlgebraicNumber& a) {
  Json j;
  Json mp = Json::array();
  for (const auto& c : a.minpoly().coefficients()) mp.push_back(to_string(c));
  j["minpoly"] = mp;
  auto c = a.approx();
  j["approx"] = Json::array({to_string(c.re), to_string(c.im)});
  j["radius"] = to_string(a.is_rational() ? Rational(1) : a.radius());
  return j;
}

AlgebraicNumber algebraic_from_json(const Json& j) {
  try {
    RationalPolynomial p(vector_of(j.at("minpoly"), "minpoly"));
    const Json& ap = j.at("approx");
    if (!ap.is_array() || ap.size() != 2) throw std::invalid_argument("approx: expected two rationals");
    ComplexRational c(scalar(ap[0], "approx"), scalar(ap[1], "approx"));
    Rational r = scalar(j.at("radius"), "radius");
    return AlgebraicNumber::from_isolation(p, c, r);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("algebraic number: ") + e.what());
  }
}

Json coordinate_to_json(const AlgebraicNumber& a) {
  if (a.is_rational()) return to_string(a.rational_value());
  return algebraic_to_json(a);
}

AlgebraicNumber coordinate_from_json(const Json& j) {
  if (j.is_object()) return algebraic_from_json(j);
  return AlgebraicNumber(scalar(j, "coordinate"));
}

std::string decimal(const AlgebraicNumber& a, int digits) {
  if (a.is_rational()) return to_decimal(a.rational_value(), digits);
  Rational target(1);
  for (int i = 0; i < digits + 2; ++i) target /= 10;
  auto [c, e] = a.approximate(target);
  std::string out = to_decimal(c.re, digits);
  if (!a.is_real()) {
    out += c.im < 0 ? " - " : " + ";
    out += to_decimal(abs(c.im), digits) + "i";
  }
  return out;
}

Json witness_to_json(const Witness& w) {
  Json pt = Json::array(), dec = Json::array();
  for (const auto& x : w.point) {
    pt.push_back(coordinate_to_json(x));
    dec.push_back(decimal(x));
  }
  return Json{{"point", pt},
              {"decimal", dec},
              {"rational", w.rational},
              {"shift_time", w.shift_time},
              {"simulation_checked", w.simulation_checked}};
}

Json verdict_to_json(const Verdict& v, const VerdictJsonOptions& options) {
  Json j;
  j["verdict"] = to_string(v.outcome);
  j["witness"] = v.witness ? witness_to_json(*v.witness) : Json(nullptr);
  if (options.certificate) {
    Json cert = Json::array();
    for (const auto& rc : v.certificate) {
      Json zeroed = Json::array();
      for (const auto& p : rc.zeroed) zeroed.push_back(pair_json(p));
      cert.push_back(Json{{"row", rc.row},
                          {"relation", to_string(rc.rel)},
                          {"positivity_row", rc.positivity_row},
                          {"member", rc.all_zero ? "all-zero" : "dominant"},
                          {"dominant", rc.dominant ? pair_json(*rc.dominant) : Json(nullptr)},
                          {"zeroed", zeroed},
                          {"complex_equalities", rc.complex_equalities}});
    }
    j["certificate"] = cert;
  }
  j["degenerate_observable"] = v.degenerate_observable;
  j["feasibility_calls"] = v.feasibility_calls;
  if (options.timings) {
    j["timings"] = Json{{"homogenize_ms", v.timings.homogenize_ms},
                        {"spectral_ms", v.timings.spectral_ms},
                        {"members_ms", v.timings.members_ms},
                        {"search_ms", v.timings.search_ms},
                        {"witness_ms", v.timings.witness_ms}};
  }
  return j;
}

std::vector<AlgebraicNumber> witness_point_from_json(const Json& j) {
  try {
    const Json* pt = &j;
    if (j.is_object() && j.contains("witness")) pt = &j.at("witness");
    if (pt->is_object() && pt->contains("point")) pt = &pt->at("point");
    if (!pt->is_array()) throw std::invalid_argument("witness: expected a coordinate list");
    std::vector<AlgebraicNumber> out;
    for (const auto& c : *pt) out.push_back(coordinate_from_json(c));
    return out;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("witness: ") + e.what());
  }
}

Json spectrum_to_json(const SpectralData& s, const std::vector<RationalVector>& observables) {
  Json j;
  Json mp = Json::array();
  for (const auto& c : s.minpoly.coefficients()) mp.push_back(to_string(c));
  j["minimal_polynomial"] = mp;
  j["nu_max"] = s.nu_max;
  Json eig = Json::array();
  for (const auto& rec : s.eigenvalues) {
    Json f = Json::array();
    for (const auto& c : s.factors[rec.factor_id].factor.coefficients()) f.push_back(to_string(c));
    eig.push_back(Json{{"value", algebraic_to_json(rec.value)},
                       {"decimal", decimal(rec.value)},
                       {"index", rec.index},
                       {"real", rec.real},
                       {"factor", f}});
  }
  j["eigenvalues"] = eig;
  if (!observables.empty()) {
    auto shared = std::make_shared<const SpectralData>(s);
    Json tables = Json::array();
    for (const auto& b : observables) {
      CoefficientTable t(b, shared);
      Json entries = Json::array();
      for (std::size_t e = 0; e < s.eigenvalues.size(); ++e) {
        for (unsigned jj = 0; jj < s.eigenvalues[e].index; ++jj) {
          Json u = Json::array(), ud = Json::array();
          for (const auto& v : t.vector(e, jj)) {
            u.push_back(coordinate_to_json(v));
            ud.push_back(decimal(v));
          }
          entries.push_back(Json{{"eigenvalue", e}, {"j", jj}, {"u", u}, {"decimal", ud}});
        }
      }
      tables.push_back(Json{{"observable", vector_json(b)}, {"coefficients", entries}});
    }
    j["coefficient_tables"] = tables;
  }
  return j;
}

}  // namespace polyescape
