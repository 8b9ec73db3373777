#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hclab/criteria.hpp"
#include "hclab/linalg.hpp"
#include "hclab/nilpotent.hpp"
#include "runner.hpp"

namespace py = pybind11;
using namespace hclab;

PYBIND11_MODULE(_hclab, m) {
  m.doc() = "Finite-dimensional experiments on hypercyclic and supercyclic operators";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

  m.attr("SCHEMA_VERSION") = io::kSchemaVersion;

  m.def("commands", [] {
    std::vector<std::string> names;
    for (const auto& c : cli::commands()) names.push_back(c.name);
    return names;
  });

  /// Runs a subcommand from JSON-encoded parameters; returns (text, exit_code).
  m.def(
      "render",
      [](const std::string& command, const std::string& params, const std::string& format, unsigned threads) {
        nlohmann::json given;
        try {
          given = nlohmann::json::parse(params);
        } catch (const nlohmann::json::exception& e) {
          throw InputError(std::string("params: ") + e.what());
        }
        const auto r = cli::render(command, given, format, threads);
        return std::make_pair(r.text, r.exit_code);
      },
      py::arg("command"), py::arg("params") = "{}", py::arg("format") = "json", py::arg("threads") = 1);

  m.def("emit_goldens", &cli::emit_goldens, py::arg("suite") = "all");

  m.def("det_mnk", [](unsigned n, unsigned k) {
    const auto d = nilpotent::det_Mnk(n, k);
    return std::make_pair(d.recurrence.get_str(), d.direct.get_str());
  });

  m.def(
      "kernel_and_image",
      [](const linalg::ComplexMatrix& a, double tol) {
        const auto ki = linalg::kernel_and_image(a, tol);
        return std::make_pair(ki.kernel.basis(), ki.image.basis());
      },
      py::arg("a"), py::arg("tol") = linalg::kDefaultRankTol);

  m.def("exp_nilpotent", &linalg::exp_nilpotent, py::arg("a"), py::arg("z"), py::arg("tol") = 1e-10);

  m.def(
      "ker_dagger", [](const linalg::ComplexMatrix& t, double tol) { return criteria::ker_dagger(t, tol).basis(); },
      py::arg("t"), py::arg("tol") = linalg::kDefaultRankTol);
}
