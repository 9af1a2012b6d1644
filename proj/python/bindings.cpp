#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ddh/analysis.hpp"
#include "ddh/spectral.hpp"

namespace py = pybind11;
using namespace ddh;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Delta-delta discretization of the finite Hilbert transform "
              "singular integral equation on an interval";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<Cell>(m, "Cell")
        .def_readonly("index", &Cell::index)
        .def_readonly("lo", &Cell::lo)
        .def_readonly("hi", &Cell::hi);

    py::class_<Grid>(m, "Grid", "Regular midpoint mesh on (a, b)")
        .def(py::init<double, double, int>(), py::arg("a"), py::arg("b"), py::arg("cells"))
        .def_static("from_N", &Grid::from_N, py::arg("a"), py::arg("b"), py::arg("n"),
                    "Mesh of width h = 1/n; (b - a) n must be an integer")
        .def_property_readonly("a", &Grid::a)
        .def_property_readonly("b", &Grid::b)
        .def_property_readonly("cells", &Grid::cells)
        .def_property_readonly("h", &Grid::h)
        .def_property_readonly("nodes",
                               [](const Grid& g) {
                                   return std::vector<double>(g.nodes().begin(), g.nodes().end());
                               })
        .def("node", &Grid::node, py::arg("i"))
        .def("cell", &Grid::cell, py::arg("i"))
        .def("interior_indices", &Grid::interior_indices, py::arg("lo"), py::arg("hi"));

    py::enum_<ExactKind>(m, "ExactKind")
        .value("Constant", ExactKind::Constant)
        .value("SqrtBump", ExactKind::SqrtBump)
        .value("Power", ExactKind::Power);

    py::class_<SpectralParameter>(m, "SpectralParameter")
        .def(py::init<Complex>(), py::arg("lam"))
        .def_property_readonly("lam", &SpectralParameter::lambda)
        .def_property_readonly("dist", &SpectralParameter::dist);

    m.def("check_stability", &check_stability, py::arg("lam"),
          "Validate lambda against the segment [-1, 1]");

    py::class_<ExactCase>(m, "ExactCase",
                          "Closed-form (u, Hu, f) triples for the interval transform")
        .def(py::init<ExactKind, double, double, double>(), py::arg("kind"), py::arg("a"),
             py::arg("b"), py::arg("alpha") = 0.25)
        .def_property_readonly("kind", &ExactCase::kind)
        .def_property_readonly("alpha", &ExactCase::alpha)
        .def("u", &ExactCase::u, py::arg("x"))
        .def("Hu", &ExactCase::Hu, py::arg("x"))
        .def("f", &ExactCase::f, py::arg("lam"), py::arg("x"));

    py::class_<ToeplitzOperator>(m, "ToeplitzOperator",
                                 "Finite section with entries 1/(i pi (n - m)), zero diagonal")
        .def(py::init<int>(), py::arg("size"))
        .def_property_readonly("size", &ToeplitzOperator::size)
        .def("entry", &ToeplitzOperator::entry, py::arg("row"), py::arg("col"))
        .def("matvec_direct",
             [](const ToeplitzOperator& op, const std::vector<Complex>& v) {
                 return op.matvec_direct(v);
             },
             py::arg("v"))
        .def("matvec_fft",
             [](const ToeplitzOperator& op, const std::vector<Complex>& v) {
                 return op.matvec_fft(v);
             },
             py::arg("v"))
        .def("apply",
             [](const ToeplitzOperator& op, const std::vector<Complex>& v) { return op.apply(v); },
             py::arg("v"));

    py::class_<SymbolValues>(m, "SymbolValues")
        .def_readonly("partial", &SymbolValues::partial)
        .def_readonly("closed_form", &SymbolValues::closed_form);
    m.def("symbol", &symbol, py::arg("tau"), py::arg("terms"));

    py::enum_<SolveMethod>(m, "SolveMethod")
        .value("Dense", SolveMethod::Dense)
        .value("Levinson", SolveMethod::Levinson);
    py::enum_<SolverChoice>(m, "SolverChoice")
        .value("Dense", SolverChoice::Dense)
        .value("Levinson", SolverChoice::Levinson)
        .value("Auto", SolverChoice::Auto);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("U", &SolveResult::U)
        .def_readonly("method", &SolveResult::method)
        .def_readonly("residual_rel", &SolveResult::residual_rel)
        .def_readonly("bound_ratio", &SolveResult::bound_ratio)
        .def_readonly("dense_fallback", &SolveResult::dense_fallback)
        .def_readonly("refinement_sweeps", &SolveResult::refinement_sweeps);

    m.def("solve_dense",
          [](const ToeplitzOperator& op, const SpectralParameter& lam,
             const std::vector<Complex>& rhs) { return solve_dense(op, lam, rhs); },
          py::arg("op"), py::arg("lam"), py::arg("rhs"));
    m.def("solve_levinson",
          [](const ToeplitzOperator& op, const SpectralParameter& lam,
             const std::vector<Complex>& rhs) { return solve_levinson(op, lam, rhs); },
          py::arg("op"), py::arg("lam"), py::arg("rhs"));
    m.def("solve",
          [](const ToeplitzOperator& op, const SpectralParameter& lam,
             const std::vector<Complex>& rhs, SolverChoice choice) {
              return solve(op, lam, rhs, choice);
          },
          py::arg("op"), py::arg("lam"), py::arg("rhs"),
          py::arg("choice") = SolverChoice::Auto);

    py::class_<ErrorReport>(m, "ErrorReport")
        .def_readonly("c", &ErrorReport::c)
        .def_readonly("E", &ErrorReport::E)
        .def_readonly("s", &ErrorReport::s)
        .def_readonly("norm_c_l2", &ErrorReport::norm_c_l2)
        .def_readonly("norm_c_linf", &ErrorReport::norm_c_linf)
        .def_readonly("norm_E_l2", &ErrorReport::norm_E_l2)
        .def_readonly("norm_E_l2_interior", &ErrorReport::norm_E_l2_interior)
        .def_readonly("norm_E_scaled", &ErrorReport::norm_E_scaled)
        .def_readonly("norm_e_L2", &ErrorReport::norm_e_L2);

    m.def("midpoint_defect", &midpoint_defect, py::arg("grid"));
    m.def("midpoint_defect_at", &midpoint_defect_at, py::arg("grid"), py::arg("index"));
    m.def("consistency_error",
          [](const Grid& g, const ExactCase& exact) { return consistency_error(g, exact); },
          py::arg("grid"), py::arg("exact"));
    m.def("discrete_error",
          [](const Grid& g, const ExactCase& exact, const SpectralParameter& lam,
             const ToeplitzOperator& op, const SolveResult& sol, double interior_lo,
             double interior_hi) {
              return discrete_error(g, exact, lam, op, sol, interior_lo, interior_hi);
          },
          py::arg("grid"), py::arg("exact"), py::arg("lam"), py::arg("op"), py::arg("sol"),
          py::arg("interior_lo") = 0.0, py::arg("interior_hi") = 1.2);
    m.def("pw_constant_l2_error",
          [](const Grid& g, const ExactCase& exact, const std::vector<Complex>& u,
             int gauss_points, int boundary_depth) {
              return pw_constant_l2_error(g, exact, u, gauss_points, boundary_depth);
          },
          py::arg("grid"), py::arg("exact"), py::arg("U"), py::arg("gauss_points") = 8,
          py::arg("boundary_depth") = 40);
    m.def("nystrom_reconstruct",
          [](const Grid& g, const SpectralParameter& lam, const std::vector<Complex>& u,
             const std::function<Complex(double)>& f, double x) {
              return nystrom_reconstruct(g, lam, u, f, x);
          },
          py::arg("grid"), py::arg("lam"), py::arg("U"), py::arg("f"), py::arg("x"));
    m.def("fit_loglog_slope",
          [](const std::vector<double>& n, const std::vector<double>& v, int window) {
              return fit_loglog_slope(n, v, window);
          },
          py::arg("n"), py::arg("v"), py::arg("window"));

    py::class_<StudyConfig>(m, "StudyConfig")
        .def(py::init<>())
        .def_readwrite("a", &StudyConfig::a)
        .def_readwrite("b", &StudyConfig::b)
        .def_readwrite("lam", &StudyConfig::lambda)
        .def_readwrite("example", &StudyConfig::example)
        .def_readwrite("alpha", &StudyConfig::alpha)
        .def_readwrite("Ns", &StudyConfig::Ns)
        .def_readwrite("interior_lo", &StudyConfig::interior_lo)
        .def_readwrite("interior_hi", &StudyConfig::interior_hi)
        .def_readwrite("solver", &StudyConfig::solver)
        .def_readwrite("slope_window", &StudyConfig::slope_window)
        .def_readwrite("seed", &StudyConfig::seed);

    py::class_<ConvergenceStudy>(m, "ConvergenceStudy")
        .def_readonly("Ns", &ConvergenceStudy::Ns)
        .def_readonly("reports", &ConvergenceStudy::reports)
        .def_readonly("slopes", &ConvergenceStudy::slopes)
        .def_readonly("slope_window", &ConvergenceStudy::slope_window)
        .def("slope", &ConvergenceStudy::slope, py::arg("key"));

    m.def("run_study", &run_study, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<ResolventSample>(m, "ResolventSample")
        .def_readonly("lam", &ResolventSample::lambda)
        .def_readonly("dist", &ResolventSample::dist)
        .def_readonly("norm_ratio", &ResolventSample::norm_ratio);

    py::class_<SpectralReport>(m, "SpectralReport")
        .def_readonly("size", &SpectralReport::size)
        .def_readonly("samples", &SpectralReport::samples)
        .def_readonly("seed", &SpectralReport::seed)
        .def_readonly("rayleigh_min", &SpectralReport::rayleigh_min)
        .def_readonly("rayleigh_max", &SpectralReport::rayleigh_max)
        .def_readonly("max_imag_rayleigh", &SpectralReport::max_imag_rayleigh)
        .def_readonly("resolvent", &SpectralReport::resolvent);

    m.def("rayleigh_scan", &rayleigh_scan, py::arg("op"), py::arg("samples"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());
    m.def("resolvent_probe",
          [](const ToeplitzOperator& op, const std::vector<Complex>& lambdas, int trials,
             std::uint64_t seed) { return resolvent_probe(op, lambdas, trials, seed); },
          py::arg("op"), py::arg("lambdas"), py::arg("trials"), py::arg("seed"));

    m.def("error_norm_keys", [] {
        std::vector<std::string> keys;
        for (const char* key : error_norm_keys()) keys.emplace_back(key);
        return keys;
    });
}
