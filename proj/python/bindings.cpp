#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kdvsym/cli.hpp"
#include "kdvsym/context.hpp"
#include "kdvsym/parse.hpp"
#include "kdvsym/print.hpp"

namespace py = pybind11;

namespace {

py::tuple run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  int code;
  {
    py::gil_scoped_release release;
    code = kdvsym::run_cli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

/// Canonical text of an expression in t, x, u, v and the given parameter names.
std::string simplify(const std::string& text, const std::vector<std::string>& params, bool latex) {
  kdvsym::Context ctx = kdvsym::Context::standard();
  for (const auto& p : params) ctx.add_parameter(p);
  return kdvsym::print(kdvsym::parse(text, ctx), latex ? kdvsym::Format::Latex : kdvsym::Format::Text);
}

}  // namespace

PYBIND11_MODULE(_kdvsym, m) {
  m.doc() = "Determining equations for Lie and potential symmetries";
  m.def("run", &run, py::arg("args"), "Runs the command line front end and returns (exit code, stdout, stderr).");
  m.def("simplify", &simplify, py::arg("text"), py::arg("params") = std::vector<std::string>{},
        py::arg("latex") = false);
  py::register_exception<kdvsym::ParseError>(m, "ParseError", PyExc_ValueError);
}
