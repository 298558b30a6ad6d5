#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "levyconv/cli.hpp"
#include "levyconv/error.hpp"
#include "levyconv/io.hpp"
#include "levyconv/lawlab.hpp"
#include "levyconv/projections.hpp"
#include "levyconv/scenario.hpp"
#include "levyconv/semigroup.hpp"
#include "levyconv/skorokhod.hpp"

namespace py = pybind11;
using namespace levyconv;

namespace {

Scenario parse(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("scenario: ") + e.what());
  }
  return Scenario::from_json(doc);
}

// A step path as (times, values): times[0] = 0, row k holds the value from times[k] on.
PiecewiseConstPath path_of(const std::vector<double>& times, const Matrix& values, double horizon) {
  if (times.empty() || times.front() != 0.0) throw InvalidInput("path: times must start at 0");
  if (static_cast<std::size_t>(values.rows()) != times.size()) {
    throw InvalidInput("path: need one row of values per time");
  }
  std::vector<Vector> rest;
  for (Eigen::Index k = 1; k < values.rows(); ++k) rest.emplace_back(values.row(k).transpose());
  return PiecewiseConstPath(values.row(0).transpose(), {times.begin() + 1, times.end()}, rest, horizon);
}

py::tuple path_tuple(const PiecewiseConstPath& x) {
  std::vector<double> times{0.0};
  times.insert(times.end(), x.jump_times().begin(), x.jump_times().end());
  Matrix values(static_cast<Eigen::Index>(times.size()), static_cast<Eigen::Index>(x.dimension()));
  for (std::size_t k = 0; k < times.size(); ++k) values.row(static_cast<Eigen::Index>(k)) = x.piece(k).transpose();
  return py::make_tuple(times, values);
}

}  // namespace

PYBIND11_MODULE(_levyconv, m) {
  m.doc() = "levyconv core";
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def("power_semigroup_constant", &power_semigroup_constant, py::arg("alpha"));
  m.def("analytic_bound_constant", &analytic_bound_constant, py::arg("alpha"), py::arg("p"),
        py::arg("horizon") = 1.0);

  m.def("simulate", [](const std::string& text, std::uint64_t index) {
    const PrmRealization eta = draw_realization(parse(text), index);
    std::vector<double> times;
    std::vector<std::size_t> marks;
    for (const Atom& a : eta.atoms()) {
      times.push_back(a.time);
      marks.push_back(a.mark);
    }
    return py::make_tuple(times, marks);
  });

  m.def("convolve", [](const std::string& text, std::uint64_t index) {
    const Scenario s = parse(text);
    const GridPath u = draw_solution(s, draw_realization(s, index));
    return py::make_tuple(u.times, Matrix(u.values.transpose()), Matrix(u.left_limits.transpose()));
  });

  m.def("law_test", [](const std::string& a, const std::string& b, bool force) {
    return report_to_json(law_equality_experiment(parse(a), parse(b), {.force = force})).dump();
  });

  m.def("maximal_ratio", [](const std::string& text, double q_prime) {
    const Scenario s = parse(text);
    const MaximalRatio r = maximal_ratio_experiment(s, q_prime > 0.0 ? q_prime : s.q_prime);
    return Json{{"ratio", r.ratio}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"degenerate", r.degenerate},
                {"samples", r.samples}}
        .dump();
  });

  m.def("analytic_bound", [](const std::string& text) {
    const AnalyticBound r = analytic_bound_experiment(parse(text));
    return Json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"ratio", r.ratio}, {"constant", r.constant},
                {"samples", r.samples}}
        .dump();
  });

  m.def(
      "haar_project",
      [](unsigned n, const Matrix& values) {
        const auto order = static_cast<unsigned>(std::lround(std::log2(static_cast<double>(values.cols()))));
        return haar_project(n, SampledFunction(order, values)).values();
      },
      py::arg("n"), py::arg("values"), "values: d x 2^m samples on the uniform cells of [0, 1]");
  m.def(
      "shifted_haar_project",
      [](unsigned n, const Matrix& values) {
        const auto order = static_cast<unsigned>(std::lround(std::log2(static_cast<double>(values.cols()))));
        return shifted_haar_project(n, SampledFunction(order, values)).values();
      },
      py::arg("n"), py::arg("values"));
  m.def(
      "lp_norm",
      [](const Matrix& values, double p) {
        const auto order = static_cast<unsigned>(std::lround(std::log2(static_cast<double>(values.cols()))));
        return lp_norm(SampledFunction(order, values), p);
      },
      py::arg("values"), py::arg("p"));

  m.def(
      "dyadic_project",
      [](unsigned n, const std::vector<double>& times, const Matrix& values, double horizon) {
        return path_tuple(dyadic_project(n, path_of(times, values, horizon)));
      },
      py::arg("n"), py::arg("times"), py::arg("values"), py::arg("horizon") = 1.0);

  m.def(
      "d0_upper",
      [](const std::vector<double>& tx, const Matrix& vx, const std::vector<double>& ty, const Matrix& vy,
         unsigned grid, double horizon) {
        const D0Bound r = d0_upper(path_of(tx, vx, horizon), path_of(ty, vy, horizon), grid);
        py::dict out;
        out["bound"] = r.bound;
        out["log_norm"] = r.log_norm;
        out["sup_term"] = r.sup_term;
        out["witness"] = py::make_tuple(r.witness.times(), r.witness.images());
        return out;
      },
      py::arg("x_times"), py::arg("x_values"), py::arg("y_times"), py::arg("y_values"), py::arg("grid"),
      py::arg("horizon") = 1.0);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
