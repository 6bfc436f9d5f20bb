#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyescape/escape.hpp"
#include "polyescape/io.hpp"
#include "polyescape/oracle.hpp"

namespace py = pybind11;
using namespace polyescape;

namespace {

// Documents cross the boundary as JSON text; the Python side wraps them.
std::string decide_json(const std::string& instance, std::size_t max_branches, double timeout, bool certificate) {
  EscapeInstance inst = parse_instance_text(instance);
  DecideOptions opts;
  opts.max_branches = max_branches;
  opts.timeout_seconds = timeout;
  Verdict v;
  {
    py::gil_scoped_release release;
    v = decide_escape(inst, opts);
  }
  return verdict_to_json(v, {certificate, true}).dump();
}

std::pair<bool, std::string> check_witness_json(const std::string& instance, const std::string& witness) {
  EscapeInstance inst = parse_instance_text(instance);
  auto point = witness_point_from_json(Json::parse(witness));
  if (point.size() != inst.dimension) throw std::invalid_argument("witness dimension does not match the instance");
  auto r = verify_witness(point, inst);
  return {r.accepted, r.reason};
}

std::string spectrum_json(const std::string& matrix) {
  Json doc = Json::parse(matrix);
  RationalMatrix a = parse_square_matrix(doc.is_object() ? doc.at("A") : doc);
  return spectrum_to_json(eigen_structure(a)).dump();
}

std::pair<std::vector<double>, std::vector<std::vector<double>>> simulate_json(const std::string& instance,
                                                                               const std::vector<double>& x0,
                                                                               double horizon, std::size_t samples) {
  Trajectory tr = simulate(parse_instance_text(instance), x0, horizon, samples);
  return {tr.times, tr.points};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact escape decisions for affine flows in polyhedra";

  py::register_exception<ResourceLimitExceeded>(m, "ResourceLimitExceeded", PyExc_RuntimeError);

  m.def("decide_json", &decide_json, py::arg("instance"), py::arg("max_branches") = 1000000,
        py::arg("timeout") = 300.0, py::arg("certificate") = false);
  m.def("check_witness_json", &check_witness_json, py::arg("instance"), py::arg("witness"));
  m.def("spectrum_json", &spectrum_json, py::arg("matrix"));
  m.def("simulate_json", &simulate_json, py::arg("instance"), py::arg("x0"), py::arg("horizon") = 10.0,
        py::arg("samples") = 101);
  m.attr("__version__") = "0.1.0";
}
