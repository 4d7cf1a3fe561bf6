// Python bindings. The heavy entry points reuse the command bodies from
// config.cpp so the module and the CLI agree on reports and exit codes.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "distpot/boundary_ops.hpp"
#include "distpot/config.hpp"
#include "distpot/fieldexpr.hpp"
#include "distpot/geometry.hpp"

namespace py = pybind11;

namespace {

py::tuple run_with_report(int (*command)(const distpot::ProblemConfig&,
                                         std::ostream&),
                          const std::string& config_json) {
  std::ostringstream out;
  const int code = command(distpot::parse_config(config_json), out);
  return py::make_tuple(code, out.str());
}

}  // namespace

PYBIND11_MODULE(_distpot, m) {
  m.doc() = "Planar Poisson problems with distributional data";
  m.attr("__version__") = "0.1.0";

  py::register_exception<distpot::ConfigError>(m, "ConfigError");

  m.def(
      "solve_json",
      [](const std::string& config_json) {
        return run_with_report(&distpot::run_solve, config_json);
      },
      py::arg("config_json"),
      "Solve the problem described by a JSON config string; returns "
      "(exit_code, report_text).");

  m.def(
      "check_compat_json",
      [](const std::string& config_json) {
        return run_with_report(&distpot::run_check_compat, config_json);
      },
      py::arg("config_json"),
      "Report per-component compatibility defects; returns (exit_code, "
      "report_text).");

  m.def(
      "verify",
      [](const std::string& filter, double tol_scale) {
        distpot::VerifyOptions options;
        options.filter = filter;
        options.tol_scale = tol_scale;
        std::ostringstream out;
        const int code = distpot::run_verify(options, out);
        return py::make_tuple(code, out.str());
      },
      py::arg("filter") = "", py::arg("tol_scale") = 1.0,
      "Run the built-in verification suite; returns (exit_code, "
      "report_text).");

  m.def(
      "eval_expression",
      [](const std::string& text, double x, double y) {
        const distpot::ScalarField f =
            distpot::ScalarField::from_expression(text, distpot::Vec2{});
        return f(distpot::Vec2{x, y});
      },
      py::arg("text"), py::arg("x"), py::arg("y"),
      "Evaluate a field expression at (x, y) with polar coordinates "
      "anchored at the origin.");

  m.def(
      "steklov_circle_demo",
      [](int N, int k) {
        const distpot::Domain domain = distpot::build_domain(
            {distpot::CurveSpec::circle(distpot::Vec2{}, 1.0)});
        const distpot::OperatorSet ops =
            distpot::OperatorSet::assemble(domain, N);
        std::vector<std::vector<double>> trace(1, std::vector<double>(N));
        for (int i = 0; i < N; ++i)
          trace[0][i] = std::cos(k * ops.nodes().comp[0].t[i]);
        const auto image = ops.steklov(trace);
        double err = 0.0;
        for (int i = 0; i < N; ++i)
          err = std::max(err, std::abs(image[0][i] - k * trace[0][i]));
        return err;
      },
      py::arg("N") = 128, py::arg("k") = 3,
      "Max error of the Dirichlet-to-Neumann map applied to cos(k t) on the "
      "unit circle, where the exact image is k cos(k t).");
}
