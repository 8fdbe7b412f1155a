#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sparsetls/adcd.hpp"
#include "sparsetls/experiments.hpp"
#include "sparsetls/kernel.hpp"
#include "sparsetls/metrics.hpp"
#include "sparsetls/pg.hpp"
#include "sparsetls/problem.hpp"

namespace py = pybind11;
using namespace sparsetls;

namespace {

SolveOptions make_options(int iterations, std::optional<Vector> ground_truth, double tol) {
  SolveOptions o;
  o.iterations = iterations;
  o.ground_truth = std::move(ground_truth);
  o.stop_tolerance = tol;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sparse total least-squares solvers for perturbed compressive sensing";

  py::enum_<Ensemble>(m, "Ensemble")
      .value("Gaussian", Ensemble::Gaussian)
      .value("Rademacher", Ensemble::Rademacher);

  py::enum_<Schedule>(m, "Schedule").value("S1", Schedule::S1).value("S2", Schedule::S2);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def(py::init([](int N, int M, int K, Ensemble ensemble, double xi, std::uint64_t seed) {
             ScenarioConfig c{N, M, K, ensemble, xi, seed};
             c.validate();
             return c;
           }),
           py::arg("N"), py::arg("M"), py::arg("K"), py::arg("ensemble") = Ensemble::Gaussian,
           py::arg("xi") = 0.01, py::arg("seed") = 0)
      .def_readwrite("N", &ScenarioConfig::N)
      .def_readwrite("M", &ScenarioConfig::M)
      .def_readwrite("K", &ScenarioConfig::K)
      .def_readwrite("ensemble", &ScenarioConfig::ensemble)
      .def_readwrite("xi", &ScenarioConfig::xi)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_static("scenario1", &ScenarioConfig::scenario1, py::arg("xi") = 0.01, py::arg("seed") = 0)
      .def_static("scenario2", &ScenarioConfig::scenario2, py::arg("xi") = 0.01, py::arg("seed") = 0);

  py::class_<ProblemInstance>(m, "ProblemInstance")
      .def_readonly("A_o", &ProblemInstance::A_o)
      .def_readonly("x_o", &ProblemInstance::x_o)
      .def_readonly("b_o", &ProblemInstance::b_o)
      .def_readonly("E_o", &ProblemInstance::E_o)
      .def_readonly("e_o", &ProblemInstance::e_o)
      .def_readonly("A", &ProblemInstance::A)
      .def_readonly("b", &ProblemInstance::b);

  m.def(
      "generate_instance",
      [](const ScenarioConfig& cfg, std::uint64_t master_seed, std::uint64_t scenario_tag,
         std::uint64_t trial) {
        RngStream rng = derive_stream(master_seed, scenario_tag, trial);
        return generate_instance(cfg, rng);
      },
      py::arg("config"), py::arg("master_seed") = 0, py::arg("scenario_tag") = 0,
      py::arg("trial") = 0);

  py::class_<CostEval>(m, "CostEval")
      .def_readonly("f", &CostEval::f)
      .def_readonly("y", &CostEval::y)
      .def_readonly("r", &CostEval::r)
      .def_readonly("c", &CostEval::c);

  m.def("eval_cost", &eval_cost, py::arg("A"), py::arg("b"), py::arg("x"), py::arg("lam"));
  m.def(
      "gradient",
      [](const Matrix& A, const Vector& b, const Vector& x) {
        const CostEval c = eval_cost(A, b, x, 1.0);
        const Matrix AtA = A.transpose() * A;
        const Vector Atb = A.transpose() * b;
        FlopCounter flops;
        return gradient(AtA, Atb, x, c.y, c.f, flops);
      },
      py::arg("A"), py::arg("b"), py::arg("x"),
      "Gradient of ||Ax - b||^2 / (||x||^2 + 1) at x.");
  m.def("shrink", &shrink, py::arg("z"), py::arg("t"));
  m.def("adaptive_step", &adaptive_step, py::arg("dx"), py::arg("dg"), py::arg("mu_prev"));
  m.def("line_search_ok", &line_search_ok, py::arg("f_next"), py::arg("f_cur"), py::arg("dx"),
        py::arg("g"), py::arg("mu"));

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("iteration", &TraceRecord::iteration)
      .def_readonly("cost", &TraceRecord::cost)
      .def_readonly("f", &TraceRecord::f)
      .def_readonly("step", &TraceRecord::step)
      .def_readonly("backtracks", &TraceRecord::backtracks)
      .def_readonly("flops", &TraceRecord::flops)
      .def_readonly("sq_error", &TraceRecord::sq_error);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("x", &SolveResult::x)
      .def_readonly("trace", &SolveResult::trace)
      .def_readonly("precompute_flops", &SolveResult::precompute_flops)
      .def_property_readonly("total_flops", &SolveResult::total_flops);

  m.def(
      "pg_solve",
      [](const Matrix& A, const Vector& b, double lam, int iterations,
         std::optional<Vector> ground_truth, double tol) {
        return pg_solve(A, b, lam, make_options(iterations, std::move(ground_truth), tol));
      },
      py::arg("A"), py::arg("b"), py::arg("lam"), py::arg("iterations"),
      py::arg("ground_truth") = std::nullopt, py::arg("stop_tolerance") = 0.0,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "adcd_solve",
      [](const Matrix& A, const Vector& b, double lam, int iterations,
         std::optional<Vector> ground_truth, double tol) {
        return adcd_solve(A, b, lam, make_options(iterations, std::move(ground_truth), tol));
      },
      py::arg("A"), py::arg("b"), py::arg("lam"), py::arg("iterations"),
      py::arg("ground_truth") = std::nullopt, py::arg("stop_tolerance") = 0.0,
      py::call_guard<py::gil_scoped_release>());

  m.def("iteration_schedule", &iteration_schedule, py::arg("lam"), py::arg("schedule"));
  m.def("squared_error", &squared_error, py::arg("x_hat"), py::arg("x_o"));
  m.def(
      "support_errors",
      [](const Vector& x_hat, const Vector& x_o) {
        const auto s = support_errors(x_hat, x_o);
        return py::make_tuple(s.false_negatives, s.false_positives);
      },
      py::arg("x_hat"), py::arg("x_o"), "Returns (false_negatives, false_positives).");

  py::register_exception<BacktrackingError>(m, "BacktrackingError", PyExc_RuntimeError);
}
