#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "genus/cli.hpp"
#include "genus/errors.hpp"
#include "genus/field_spec.hpp"
#include "genus/report_io.hpp"
#include "genus/selftest.hpp"

namespace py = pybind11;

namespace {

genus::CliOptions options(std::optional<genus::Int> bound, std::optional<int> level) {
  genus::CliOptions o;
  o.bound = bound;
  o.level = level;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Genus and extended genus fields of abelian extensions of Q and F_q(T)";

  auto base = py::register_exception<genus::Error>(m, "GenusError", PyExc_ValueError);
  py::register_exception<genus::SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<genus::BoundExceeded>(m, "BoundExceeded", base.ptr());
  py::register_exception<genus::PrecisionError>(m, "PrecisionError", base.ptr());

  m.def(
      "report_json",
      [](const std::string& command, const std::string& spec_text, std::optional<genus::Int> bound,
         std::optional<int> level) {
        return genus::to_json_string(genus::build_report(command, genus::parse_field_spec(spec_text), options(bound, level)));
      },
      py::arg("command"), py::arg("spec_text"), py::arg("bound") = py::none(), py::arg("level") = py::none(),
      "Report for a field descriptor, as the JSON document printed by genusctl --json.");
  m.def(
      "report_text",
      [](const std::string& command, const std::string& spec_text, std::optional<genus::Int> bound,
         std::optional<int> level) {
        return genus::render_text(genus::build_report(command, genus::parse_field_spec(spec_text), options(bound, level)));
      },
      py::arg("command"), py::arg("spec_text"), py::arg("bound") = py::none(), py::arg("level") = py::none());
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args, std::optional<std::string> env_bound) {
        std::ostringstream out, err;
        int code = genus::run_cli(args, out, err, env_bound ? env_bound->c_str() : nullptr);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("env_bound") = py::none(), "Runs genusctl in process; returns (code, stdout, stderr).");
  m.def("suite_name", &genus::suite_name);
  m.def(
      "run_suite",
      [](int k) {
        py::gil_scoped_release release;
        auto r = genus::run_suite(k);
        return std::make_tuple(r.name, r.pass, r.detail);
      },
      py::arg("criterion"));
  m.attr("SELFTEST_SUITES") = genus::kSelftestSuites;
}
