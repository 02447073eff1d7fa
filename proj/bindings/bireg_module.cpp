#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "bireg/runner.hpp"
#include "bireg/version.hpp"

namespace py = pybind11;
using bireg::Complex;
using bireg::ComplexMatrix;

namespace {

using NumpyComplex =
    py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

ComplexMatrix from_array(const NumpyComplex& a) {
  if (a.ndim() != 2)
    throw bireg::InvalidInput("expected a 2-d complex array");
  const auto rows = static_cast<int>(a.shape(0));
  const auto cols = static_cast<int>(a.shape(1));
  std::vector<Complex> entries(static_cast<std::size_t>(rows) *
                               static_cast<std::size_t>(cols));
  const std::complex<double>* data = a.data();
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = data[k];
  return ComplexMatrix(rows, cols, std::move(entries));
}

py::array_t<std::complex<double>> to_array(const ComplexMatrix& m) {
  py::array_t<std::complex<double>> out({m.rows(), m.cols()});
  std::complex<double>* data = out.mutable_data();
  const std::span<const Complex> entries = m.entries();
  for (std::size_t k = 0; k < entries.size(); ++k) data[k] = entries[k];
  return out;
}

py::object optional_complex(const std::optional<Complex>& z) {
  if (!z.has_value()) return py::none();
  return py::cast(*z);
}

py::dict grid_scenario_dict(const bireg::GridScenarioResult& r) {
  py::dict out;
  bireg::LimitGrid const& g = r.grid;
  py::array_t<std::complex<double>> entries({g.n, g.n});
  std::complex<double>* data = entries.mutable_data();
  for (std::size_t k = 0; k < g.entries.size(); ++k) data[k] = g.entries[k];
  out["scenario"] = g.scenario_id;
  out["entries"] = entries;
  out["row_then_col"] = optional_complex(g.row_then_col);
  out["col_then_row"] = optional_complex(g.col_then_row);
  out["status"] = std::string(bireg::to_string(r.verdict.status));
  out["discrepancy"] = r.verdict.discrepancy.has_value()
                           ? py::cast(*r.verdict.discrepancy)
                           : py::object(py::none());
  out["bound_excess"] = r.bound_excess;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Finite-truncation biregularity diagnostics and projective tensor-norm "
      "estimation (native core)";
  m.attr("__version__") = bireg::kVersion;

  m.def(
      "schatten_norm",
      [](const NumpyComplex& a, double p) {
        return bireg::schatten_norm(from_array(a), bireg::SchattenExponent(p));
      },
      py::arg("a"), py::arg("p"),
      "Schatten p-norm of a complex matrix (p = inf gives the operator "
      "norm).");

  m.def(
      "operator_norm",
      [](const NumpyComplex& a) { return bireg::operator_norm(from_array(a)); },
      py::arg("a"), "Largest singular value.");

  m.def(
      "schur_product",
      [](const NumpyComplex& a, const NumpyComplex& b) {
        return to_array(bireg::schur(from_array(a), from_array(b)));
      },
      py::arg("a"), py::arg("b"), "Entrywise (Schur) product.");

  m.def(
      "nuclear_oracle",
      [](const NumpyComplex& coefficients) {
        return bireg::nuclear_oracle(bireg::TensorElement(
            from_array(coefficients), bireg::SchattenExponent(2.0),
            bireg::SchattenExponent(2.0)));
      },
      py::arg("coefficients"),
      "Exact projective norm for Hilbert legs: the trace norm of the "
      "coefficient grid.");

  m.def(
      "projective_bounds",
      [](const NumpyComplex& coefficients, double p, double q, int rank_budget,
         int iters, int trials, std::uint64_t seed) {
        ComplexMatrix c = from_array(coefficients);
        const int full_rank = std::min(c.rows(), c.cols());
        const bireg::TensorElement u(std::move(c), bireg::SchattenExponent(p),
                                     bireg::SchattenExponent(q));
        const bireg::ProjectiveNormEstimate est = bireg::estimate_projective_norm(
            u, rank_budget > 0 ? rank_budget : full_rank, iters, trials, seed);
        return std::make_pair(est.upper, est.lower);
      },
      py::arg("coefficients"), py::arg("p") = 2.0, py::arg("q") = 2.0,
      py::arg("rank_budget") = 0, py::arg("iters") = 800, py::arg("trials") = 8,
      py::arg("seed") = 2026,
      "Certified (upper, lower) bounds for the projective tensor norm; "
      "rank_budget 0 means full rank.");

  m.def(
      "estimate_limits",
      [](const NumpyComplex& grid, int window, double eps) {
        if (grid.ndim() != 2 || grid.shape(0) != grid.shape(1))
          throw bireg::InvalidInput("expected a square 2-d grid");
        bireg::LimitGrid g;
        g.n = static_cast<int>(grid.shape(0));
        const std::complex<double>* data = grid.data();
        g.entries.assign(data, data + static_cast<std::size_t>(g.n) * g.n);
        g = bireg::iterated_limits(std::move(g), window, eps);
        return std::make_pair(optional_complex(g.row_then_col),
                              optional_complex(g.col_then_row));
      },
      py::arg("grid"), py::arg("window") = 8, py::arg("eps") = 1e-9,
      "Tail-window iterated-limit estimates (rows-outer, cols-outer); None "
      "where the window did not stabilize.");

  m.def(
      "run_scenario_grid",
      [](const std::string& scenario, int n, int window, double eps, double tol,
         double p, double q) {
        if (scenario == "hs-hs")
          return grid_scenario_dict(
              bireg::run_triangular_scenario(n, window, eps, tol));
        if (scenario == "bk-k" || scenario == "b0k-k")
          return grid_scenario_dict(bireg::run_point_scenario(
              n, window, eps, tol, scenario == "b0k-k"));
        if (scenario == "bk-sp") {
          bireg::TaggedScenarioResult t = bireg::run_tagged_scenario(
              n, bireg::SchattenExponent(p), bireg::SchattenExponent(q), window,
              eps, tol);
          py::dict out = grid_scenario_dict(t.base);
          out["excess_p"] = t.excess_p;
          out["excess_q"] = t.excess_q;
          return out;
        }
        throw bireg::InvalidInput(
            "run_scenario_grid handles hs-hs, bk-k, b0k-k, bk-sp");
      },
      py::arg("scenario"), py::arg("n") = 64, py::arg("window") = 8,
      py::arg("eps") = 1e-9, py::arg("tol") = 1e-6, py::arg("p") = 2.0,
      py::arg("q") = 2.0,
      "Run a grid scenario and return its entries, limit estimates, and "
      "verdict.");

  m.def(
      "run_json",
      [](const std::string& scenario, int n, int dim, double p, double q,
         int window, double eps, double tol, std::uint64_t seed, int trials) {
        bireg::RunConfig config;
        config.scenario = scenario;
        config.n = n;
        config.dim = dim;
        config.p = p;
        config.q = q;
        config.tail_window = window;
        config.eps = eps;
        config.tol = tol;
        config.seed = seed;
        config.trials = trials;
        return bireg::run(config).document.dump(2);
      },
      py::arg("scenario"), py::arg("n") = 64, py::arg("dim") = 4,
      py::arg("p") = 2.0, py::arg("q") = 2.0, py::arg("window") = 8,
      py::arg("eps") = 1e-9, py::arg("tol") = 1e-6, py::arg("seed") = 2026,
      py::arg("trials") = 0,
      "Full run report (any scenario) as a JSON document string.");

  m.def("list_scenarios_json", &bireg::list_scenarios_json,
        "Scenario catalog as a JSON array string.");

  // Map the toolkit's error types onto natural Python exceptions.
  py::register_exception<bireg::InvalidInput>(m, "InvalidInput",
                                              PyExc_ValueError);
  py::register_exception<bireg::NumericalFailure>(m, "NumericalFailure",
                                                  PyExc_ArithmeticError);
}
