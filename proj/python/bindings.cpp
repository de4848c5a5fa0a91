#include <pybind11/pybind11.h>
#include <pybind11/functional.h>
#include <pybind11/stl.h>

#include "paneitz/fourdim.hpp"
#include "paneitz/models.hpp"
#include "paneitz/report.hpp"
#include "paneitz/solver.hpp"
#include "paneitz/suites.hpp"

namespace py = pybind11;
using namespace paneitz;

PYBIND11_MODULE(_paneitz, m) {
    m.doc() = "Paneitz operator, boundary operators and model checks";

    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<CheckReport>(m, "CheckReport")
        .def_readonly("id", &CheckReport::id)
        .def_readonly("topic", &CheckReport::topic)
        .def_readonly("sizes", &CheckReport::sizes)
        .def_readonly("residuals", &CheckReport::residuals)
        .def_readonly("order", &CheckReport::order)
        .def_readonly("min_order", &CheckReport::min_order)
        .def_readonly("tolerance", &CheckReport::tolerance)
        .def_readonly("passed", &CheckReport::pass)
        .def_readonly("values", &CheckReport::values)
        .def_readonly("note", &CheckReport::note)
        .def("__repr__", [](const CheckReport& r) {
            return "<CheckReport " + r.id + (r.pass ? " pass>" : " FAIL>");
        });

    py::class_<SuiteConfig>(m, "SuiteConfig")
        .def(py::init<>())
        .def_readwrite("suites", &SuiteConfig::suites)
        .def_readwrite("n", &SuiteConfig::n)
        .def_readwrite("sizes", &SuiteConfig::sizes)
        .def_readwrite("draws", &SuiteConfig::draws)
        .def_readwrite("seed", &SuiteConfig::seed)
        .def_readwrite("tol", &SuiteConfig::tol)
        .def_readwrite("jobs", &SuiteConfig::jobs);

    m.def("suite_names", &suite_names);
    m.def("run_suites", &run_suites, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("report_json", &report_json, py::arg("config"), py::arg("checks"), py::arg("with_timing") = true);
    m.def("report_csv", &report_csv, py::arg("checks"));

    py::enum_<Model>(m, "Model").value("Flat", Model::Flat).value("Hemisphere", Model::Hemisphere);
    py::class_<SeparableProblem>(m, "SeparableProblem")
        .def_static("flat", &SeparableProblem::flat, py::arg("xi"), py::arg("nodes") = 32, py::arg("length") = 0.0)
        .def_static("hemisphere", &SeparableProblem::hemisphere, py::arg("n"), py::arg("ell"), py::arg("nodes") = 0)
        .def_readonly("model", &SeparableProblem::model)
        .def_readonly("xi", &SeparableProblem::xi)
        .def_readonly("n", &SeparableProblem::n)
        .def_readonly("ell", &SeparableProblem::ell);

    py::class_<Profile>(m, "Profile")
        .def("__call__", &Profile::operator())
        .def("f", &Profile::f)
        .def("psi", &Profile::psi);

    py::class_<ExtensionSolution>(m, "ExtensionSolution")
        .def_readonly("u", &ExtensionSolution::u)
        .def_readonly("f", &ExtensionSolution::f)
        .def_readonly("psi", &ExtensionSolution::psi)
        .def_readonly("b2", &ExtensionSolution::b2)
        .def_readonly("b3", &ExtensionSolution::b3)
        .def_readonly("energy", &ExtensionSolution::energy)
        .def_readonly("residual_interior", &ExtensionSolution::residual_interior);

    m.def("solve_extension", &solve_extension, py::arg("problem"), py::arg("f"), py::arg("psi"), py::arg("source") = 0.0);
    m.def("induced_operator", &induced_operator, py::arg("problem"), py::arg("k"));
    m.def("estimate_lambda1", &estimate_lambda1, py::arg("problem"));

    py::class_<ScatteringExpansion>(m, "ScatteringExpansion")
        .def_readonly("gamma", &ScatteringExpansion::gamma)
        .def_readonly("G", &ScatteringExpansion::G)
        .def("multiplier", &ScatteringExpansion::multiplier)
        .def("__call__", &ScatteringExpansion::operator());
    m.def("hyperbolic_scattering", &hyperbolic_scattering, py::arg("gamma"), py::arg("n"), py::arg("xi"), py::arg("datum"));
    m.def("scattering_by_ode", &scattering_by_ode, py::arg("gamma"), py::arg("n"), py::arg("xi"), py::arg("datum"),
          py::arg("nodes") = 40);

    m.def("hemisphere_spectrum", &hemisphere_spectrum, py::arg("n"), py::arg("ell"), py::arg("k"));
    m.def("sharp_constant", [](int n, int k) { return sharp_constant(n, k).value; }, py::arg("n"), py::arg("k"));
    m.def("beckner_constant", &beckner_constant, py::arg("n"), py::arg("gamma"));
    m.def("sphere_volume", &sphere_volume, py::arg("m"));

    py::class_<ZonalDatum>(m, "ZonalDatum")
        .def(py::init([](int n, std::vector<double> c) { return ZonalDatum{n, std::move(c)}; }), py::arg("n"), py::arg("c"))
        .def_readonly("n", &ZonalDatum::n)
        .def_readonly("c", &ZonalDatum::c)
        .def("__call__", &ZonalDatum::operator());
    m.def("project_zonal", &project_zonal, py::arg("n"), py::arg("lmax"), py::arg("fn"));

    py::class_<SobolevDeficit>(m, "SobolevDeficit")
        .def_readonly("lhs", &SobolevDeficit::lhs)
        .def_readonly("rhs", &SobolevDeficit::rhs)
        .def_readonly("deficit", &SobolevDeficit::deficit);
    m.def("sobolev_deficit", py::overload_cast<const ZonalDatum&, const ZonalDatum&>(&sobolev_deficit), py::arg("f"),
          py::arg("psi"));

    py::class_<CriticalSharpDeficit>(m, "CriticalSharpDeficit")
        .def_readonly("lhs", &CriticalSharpDeficit::lhs)
        .def_readonly("rhs", &CriticalSharpDeficit::rhs)
        .def_readonly("deficit", &CriticalSharpDeficit::deficit)
        .def_readonly("beckner_f", &CriticalSharpDeficit::beckner_f)
        .def_readonly("beckner_psi", &CriticalSharpDeficit::beckner_psi);
    m.def("critical_sharp_deficit",
          py::overload_cast<const ZonalDatum&, const ZonalDatum&>(&critical_sharp_deficit), py::arg("f"), py::arg("psi"));

    m.def("hemisphere_t_curvature", [] { return compute_t_curvature(FourModel::Hemisphere).T; });
    m.def("q3_by_scattering", &q3_by_scattering, py::arg("nodes") = 32);
}
