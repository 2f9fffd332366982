#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scatpos/acceptance.hpp"
#include "scatpos/bochner.hpp"
#include "scatpos/marchenko.hpp"
#include "scatpos/phase_shift.hpp"
#include "scatpos/potential.hpp"
#include "scatpos/schrodinger.hpp"
#include "scatpos/transforms.hpp"

namespace py = pybind11;
using namespace scatpos;

PYBIND11_MODULE(_scatpos, m) {
    m.doc() = "Half-line scattering solutions, translation kernels and positivity checks";

    py::class_<RadialGrid>(m, "RadialGrid")
        .def(py::init<std::vector<double>>())
        .def_static("uniform", &RadialGrid::uniform)
        .def_static("graded", &RadialGrid::graded, py::arg("r_max"), py::arg("n"),
                    py::arg("ratio") = 1.05)
        .def_property_readonly("nodes", &RadialGrid::nodes)
        .def("__len__", &RadialGrid::size)
        .def_property_readonly("r_max", &RadialGrid::r_max);

    py::class_<KGrid>(m, "KGrid")
        .def(py::init<std::vector<double>>())
        .def_static("uniform", &KGrid::uniform)
        .def_property_readonly("nodes", &KGrid::nodes)
        .def("__len__", &KGrid::size)
        .def_property_readonly("k_max", &KGrid::k_max);

    py::class_<Potential>(m, "Potential")
        .def_static("zero", &Potential::zero)
        .def_static("exponential", &Potential::exponential)
        .def_static("square_barrier", &Potential::square_barrier)
        .def_static("gaussian", &Potential::gaussian)
        .def_static("tabulated", &Potential::tabulated)
        .def("__call__", &Potential::operator())
        .def("tail_integral", &Potential::tail_integral)
        .def("tail_first_moment", &Potential::tail_first_moment);

    m.def("make_potential",
          py::overload_cast<const std::string&, const std::map<std::string, double>&>(
              &make_potential));

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("target_phase_step", &SolverOptions::target_phase_step);

    py::class_<WaveSolution>(m, "WaveSolution")
        .def_property_readonly("grid", &WaveSolution::grid)
        .def_property_readonly("k", &WaveSolution::k)
        .def_property_readonly("values", &WaveSolution::value)
        .def_property_readonly("derivs", &WaveSolution::deriv)
        .def_property_readonly("error_estimate", &WaveSolution::error_estimate);

    m.def("regular_solution", &regular_solution, py::arg("v"), py::arg("k"), py::arg("grid"),
          py::arg("opts") = SolverOptions{});
    m.def("jost_solution", &jost_solution, py::arg("v"), py::arg("k"), py::arg("grid"),
          py::arg("opts") = SolverOptions{});
    m.def("asymptotic_fit",
          [](const WaveSolution& sol, double k) {
              const AsymptoticFit f = asymptotic_fit(sol, k);
              return py::make_tuple(f.amplitude, f.delta, f.residual);
          });

    py::class_<TriangularKernel>(m, "TriangularKernel")
        .def_property_readonly("grid", &TriangularKernel::grid)
        .def("at", &TriangularKernel::at)
        .def("interpolate", &TriangularKernel::interpolate)
        .def_property_readonly("converged", &TriangularKernel::converged)
        .def_property_readonly("iteration_count", &TriangularKernel::iteration_count)
        .def("max_value", &TriangularKernel::max_value);

    m.def("solve_kernel", &solve_kernel, py::arg("v"), py::arg("grid"), py::arg("tol") = 1e-12,
          py::arg("max_iter") = 60);
    m.def("jost_from_kernel", &jost_from_kernel);

    py::class_<SampledFunction>(m, "SampledFunction")
        .def(py::init<RadialGrid, std::vector<double>>())
        .def_property_readonly("grid", &SampledFunction::grid)
        .def_property_readonly("values", &SampledFunction::values)
        .def("interpolate", &SampledFunction::interpolate);

    py::class_<StieltjesMeasure::Atom>(m, "Atom")
        .def(py::init([](double location, double weight) {
                 return StieltjesMeasure::Atom{location, weight};
             }),
             py::arg("location"), py::arg("weight"))
        .def_readonly("location", &StieltjesMeasure::Atom::location)
        .def_readonly("weight", &StieltjesMeasure::Atom::weight);

    py::class_<StieltjesMeasure>(m, "StieltjesMeasure")
        .def(py::init<std::vector<StieltjesMeasure::Atom>, SampledFunction, bool>(),
             py::arg("atoms"), py::arg("density"), py::arg("signed_density") = false)
        .def_static("density_only", &StieltjesMeasure::density_only)
        .def_static("atoms_only", &StieltjesMeasure::atoms_only)
        .def("total_mass", &StieltjesMeasure::total_mass);

    py::class_<TransformResult>(m, "TransformResult")
        .def_property_readonly("k", [](const TransformResult& t) { return t.kgrid.nodes(); })
        .def_readonly("values", &TransformResult::values)
        .def_readonly("errors", &TransformResult::errors);

    m.def("sine_transform", &sine_transform);
    m.def("generalized_transform", &generalized_transform, py::arg("f"), py::arg("v"),
          py::arg("kgrid"), py::arg("opts") = SolverOptions{});
    m.def("stieltjes_transform", &stieltjes_transform, py::arg("alpha"), py::arg("v"),
          py::arg("kgrid"), py::arg("opts") = SolverOptions{});
    m.def("bochner_transform", &bochner_transform);
    m.def("push_measure", &push_measure);
    m.def("invert_volterra", &invert_volterra);

    py::class_<PositiveTypeOptions>(m, "PositiveTypeOptions")
        .def(py::init<>())
        .def_readwrite("seed", &PositiveTypeOptions::seed)
        .def_readwrite("x_max", &PositiveTypeOptions::x_max)
        .def_readwrite("close_pair", &PositiveTypeOptions::close_pair);

    py::class_<PositiveTypeReport>(m, "PositiveTypeReport")
        .def_readonly("pass_", &PositiveTypeReport::pass)
        .def_readonly("min_eigenvalue", &PositiveTypeReport::min_eigenvalue)
        .def_readonly("trace", &PositiveTypeReport::trace)
        .def_readonly("sample_points", &PositiveTypeReport::sample_points);

    m.def("positive_type_check", &positive_type_check, py::arg("f"), py::arg("s"),
          py::arg("trials"), py::arg("tol"), py::arg("opts") = PositiveTypeOptions{});

    py::class_<PhaseShiftTable>(m, "PhaseShiftTable")
        .def_property_readonly("k", [](const PhaseShiftTable& t) { return t.kgrid.nodes(); })
        .def_readonly("delta", &PhaseShiftTable::delta);

    py::class_<GammaProfile>(m, "GammaProfile")
        .def_readonly("t", &GammaProfile::tgrid)
        .def_readonly("values", &GammaProfile::values);

    py::class_<FractionTable>(m, "FractionTable")
        .def("at", &FractionTable::at);

    m.def("build_fraction_table", &build_fraction_table, py::arg("v"), py::arg("rgrid"),
          py::arg("kgrid"), py::arg("opts") = SolverOptions{});
    m.def("delta_table_from_fraction", &delta_table_from_fraction);
    m.def("delta_table_from_fit", &delta_table_from_fit, py::arg("v"), py::arg("kgrid"),
          py::arg("grid"), py::arg("opts") = SolverOptions{});
    m.def("delta_via_integral", &delta_via_integral, py::arg("v"), py::arg("k"),
          py::arg("grid"), py::arg("opts") = SolverOptions{});
    m.def("gamma_profile_from_delta", &gamma_profile_from_delta);
    m.def("gamma_profile_from_omega",
          py::overload_cast<const FractionTable&, const Potential&,
                            const std::vector<double>&>(&gamma_profile_from_omega));
    m.def("omega", &omega, py::arg("v"), py::arg("r"), py::arg("tgrid"), py::arg("kgrid"),
          py::arg("opts") = SolverOptions{});
    m.def("reconstruct_delta", &reconstruct_delta);

    m.def("run_acceptance",
          [](const std::string& out_dir, std::uint64_t seed) {
              py::list out;
              for (const CriterionResult& r : run_acceptance(out_dir, seed)) {
                  py::dict d;
                  d["name"] = r.name;
                  d["pass"] = r.pass;
                  d["margin"] = r.margin;
                  d["detail"] = r.detail;
                  out.append(d);
              }
              return out;
          },
          py::arg("out_dir"), py::arg("seed") = 1234);
}
