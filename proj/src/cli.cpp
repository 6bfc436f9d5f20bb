#include "polyescape/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "polyescape/io.hpp"
#include "polyescape/oracle.hpp"

namespace polyescape {

namespace {

struct BadInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw BadInput(path + ": malformed JSON: " + e.what());
  }
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(to_double(parse_rational(item)));
    } catch (const std::exception&) {
      try {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw BadInput("--x0: cannot parse '" + item + "'");
      }
    }
  }
  return out;
}

std::string point_summary(const Witness& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.point.size(); ++i) {
    if (i) s += ", ";
    s += w.point[i].is_rational() ? to_string(w.point[i].rational_value()) : decimal(w.point[i]);
  }
  return s + ")";
}

struct DecideArgs {
  std::string input, witness;
  bool certificate = false, quiet = false;
  std::size_t max_branches = 1000000;
  double timeout = 300;
};

int run_decide(const DecideArgs& a, std::ostream& out, std::ostream& err) {
  EscapeInstance inst = parse_instance(read_json(a.input));
  DecideOptions opt;
  opt.max_branches = a.max_branches;
  opt.timeout_seconds = a.timeout;
  Verdict v;
  try {
    v = decide_escape(inst, opt);
  } catch (const ResourceLimitExceeded& e) {
    Json doc{{"verdict", "resource-limit"}, {"witness", nullptr}, {"reason", e.what()}};
    out << doc.dump(2) << "\n";
    if (!a.quiet) err << "resource limit: " << e.what() << "\n";
    return kExitResourceLimit;
  }
  VerdictJsonOptions jo;
  jo.certificate = a.certificate;
  out << verdict_to_json(v, jo).dump(2) << "\n";
  if (!a.witness.empty() && v.witness) {
    std::ofstream f(a.witness);
    if (!f) throw BadInput("cannot write " + a.witness);
    f << witness_to_json(*v.witness).dump(2) << "\n";
  }
  if (!a.quiet) {
    err << to_string(v.outcome);
    if (v.witness) err << ", witness " << point_summary(*v.witness);
    if (v.degenerate_observable) err << " (degenerate observable)";
    err << "; " << v.feasibility_calls << " feasibility calls\n";
  }
  return kExitOk;
}

int run_simulate(const std::string& input, const std::string& x0, double horizon, std::size_t samples,
                 std::ostream& out) {
  EscapeInstance inst = parse_instance(read_json(input));
  std::vector<double> x = parse_point(x0);
  if (x.size() != inst.dimension) throw BadInput("--x0: expected " + std::to_string(inst.dimension) + " coordinates");
  if (samples < 2 || !(horizon >= 0)) throw BadInput("--samples must be at least 2 and --horizon nonnegative");
  Trajectory tr = simulate(inst, x, horizon, samples);
  out << "t";
  for (std::size_t i = 0; i < inst.dimension; ++i) out << ",x" << i + 1;
  out << "\n" << std::setprecision(12);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    out << tr.times[k];
    for (double v : tr.points[k]) out << "," << v;
    out << "\n";
  }
  return kExitOk;
}

int run_spectrum(const std::string& input, bool u_vectors, std::ostream& out) {
  Json doc = read_json(input);
  RationalMatrix a;
  std::vector<RationalVector> rows;
  if (doc.is_object() && doc.contains("dynamics")) {
    EscapeInstance inst = parse_instance(doc);
    a = inst.A;
    for (std::size_t i = 0; i < inst.strict_B.rows(); ++i) rows.push_back(inst.strict_B.row(i));
    for (std::size_t i = 0; i < inst.nonstrict_B.rows(); ++i) rows.push_back(inst.nonstrict_B.row(i));
  } else if (doc.is_object() && doc.contains("A")) {
    a = parse_square_matrix(doc["A"]);
  } else {
    throw BadInput("spectrum: expected an instance document or {\"A\": ...}");
  }
  if (!u_vectors) rows.clear();
  out << spectrum_to_json(eigen_structure(a), rows).dump(2) << "\n";
  return kExitOk;
}

int run_check_witness(const std::string& input, const std::string& witness, bool quiet, std::ostream& out,
                      std::ostream& err) {
  EscapeInstance inst = parse_instance(read_json(input));
  std::vector<AlgebraicNumber> x = witness_point_from_json(read_json(witness));
  if (x.size() != inst.dimension) throw BadInput("witness has the wrong dimension");
  WitnessCheck c = verify_witness(x, inst);
  out << Json{{"accepted", c.accepted}, {"reason", c.reason}}.dump(2) << "\n";
  if (!quiet) err << (c.accepted ? "accepted" : "rejected: " + c.reason) << "\n";
  return c.accepted ? kExitOk : kExitRejected;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide whether an affine flow has a trajectory trapped in a polyhedron"};
  app.require_subcommand(1);

  DecideArgs d;
  auto* decide = app.add_subcommand("decide", "Decide the escape problem for an instance");
  decide->add_option("-i,--input,input", d.input, "Instance JSON (- for stdin)")->required();
  decide->add_option("--witness", d.witness, "Also write the witness JSON to this file");
  decide->add_flag("--certificate", d.certificate, "Include the per-constraint certificate");
  decide->add_flag("-q,--quiet", d.quiet, "No summary on stderr");
  decide->add_option("--max-branches", d.max_branches, "Feasibility-call budget")->check(CLI::PositiveNumber);
  decide->add_option("--timeout", d.timeout, "Seconds")->check(CLI::PositiveNumber);

  std::string sim_input, x0;
  double horizon = 10;
  std::size_t samples = 101;
  auto* sim = app.add_subcommand("simulate", "Dump a floating-point trajectory as CSV");
  sim->add_option("-i,--input,input", sim_input, "Instance JSON")->required();
  sim->add_option("--x0", x0, "Start point, comma separated")->required();
  sim->add_option("--horizon", horizon, "End time");
  sim->add_option("--samples", samples, "Number of sample times");

  std::string spec_input;
  bool u_vectors = false;
  auto* spec = app.add_subcommand("spectrum", "Eigenvalues, indices and realness as JSON");
  spec->add_option("-i,--input,input", spec_input, "Instance JSON or {\"A\": ...}")->required();
  spec->add_flag("--u-vectors", u_vectors, "Coefficient vectors for every constraint row");

  std::string cw_input, cw_witness;
  bool cw_quiet = false;
  auto* check = app.add_subcommand("check-witness", "Verify a witness exactly");
  check->add_option("-i,--input,input", cw_input, "Instance JSON")->required();
  check->add_option("--witness", cw_witness, "Witness or verdict JSON")->required();
  check->add_flag("-q,--quiet", cw_quiet, "No summary on stderr");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitBadInput;
  }

  try {
    if (*decide) return run_decide(d, out, err);
    if (*sim) return run_simulate(sim_input, x0, horizon, samples, out);
    if (*spec) return run_spectrum(spec_input, u_vectors, out);
    if (*check) return run_check_witness(cw_input, cw_witness, cw_quiet, out, err);
  } catch (const ResourceLimitExceeded& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace polyescape
