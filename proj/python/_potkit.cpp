#include "potkit/capacity.hpp"
#include "potkit/cones.hpp"
#include "potkit/density.hpp"
#include "potkit/plaplace.hpp"
#include "potkit/riesz.hpp"
#include "potkit/tasks.hpp"
#include "potkit/wolff.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace potkit;

namespace {

Point pt(const std::vector<double>& v) { return Point(v); }

Measure atoms(const std::vector<std::pair<std::vector<double>, double>>& list)
{
    std::vector<Atom> out;
    for (const auto& [x, m] : list) out.push_back({Point(x), m});
    return Measure(AtomicMeasure(std::move(out)));
}

ConeSpec cone(const std::string& kind, double parameter)
{
    if (kind == "A") return ConeSpec::A(parameter);
    if (kind == "R") return ConeSpec::R(static_cast<int>(parameter));
    if (kind == "Gamma") return ConeSpec::Gamma(static_cast<int>(parameter));
    fail(ErrorKind::InvalidArgument, "cone kind must be A, R or Gamma");
}

}  // namespace

PYBIND11_MODULE(_potkit, m)
{
    m.doc() = "Riesz and Wolff potentials, capacities, curvature cones and density diagnostics";
    py::register_exception<Error>(m, "PotkitError");

    py::class_<Measure>(m, "Measure")
        .def_static("atoms", &atoms, py::arg("atoms"), "Atomic measure from [(point, mass), ...]")
        .def_static("power_profile",
                    [](const std::vector<double>& c, double coef, double exponent, double radius) {
                        return Measure(RadialProfileMeasure(Point(c), RadialProfile::power(coef, exponent, radius)));
                    },
                    py::arg("center"), py::arg("c"), py::arg("m"), py::arg("radius"))
        .def_static("uniform_ball",
                    [](const std::vector<double>& c, double radius, double density, double h, double halfWidth) {
                        return Measure(uniformBallGrid(Point(c), radius, density, h, halfWidth));
                    },
                    py::arg("center"), py::arg("radius"), py::arg("density"), py::arg("h"), py::arg("half_width"))
        .def_static("sum", &Measure::sum)
        .def_property_readonly("dim", &Measure::dim)
        .def("total_mass", &Measure::totalMass)
        .def("ball_mass", [](const Measure& mu, const std::vector<double>& x, double t) { return ballMass(mu, pt(x), t); });

    m.def("riesz_potential",
          [](const Measure& mu, double alpha, const std::vector<double>& x, double diameter) {
              return rieszPotential(mu, {alpha, diameter}, pt(x));
          },
          py::arg("mu"), py::arg("alpha"), py::arg("x"), py::arg("diameter") = 0.0);
    m.def("wolff_potential",
          [](const Measure& mu, double p, double r, const std::vector<double>& x) { return wolffPotential(mu, {p, r}, pt(x)); },
          py::arg("mu"), py::arg("p"), py::arg("r"), py::arg("x"));
    m.def("wolff_single_atom", &wolffSingleAtom, py::arg("n"), py::arg("p"), py::arg("a"), py::arg("d"), py::arg("r"));
    m.def("radial_condenser_capacity", &radialCondenserCapacity, py::arg("n"), py::arg("p"), py::arg("r"), py::arg("R"));
    m.def("unit_mass_coefficient", &FundamentalSolution::unitMassCoefficient, py::arg("n"), py::arg("p"));

    m.def("elementary_symmetric", &elementarySymmetric, py::arg("lam"), py::arg("k"));
    m.def("cone_member",
          [](const std::vector<double>& lam, const std::string& kind, double parameter) {
              return member(lam, cone(kind, parameter));
          },
          py::arg("lam"), py::arg("kind"), py::arg("parameter"));
    m.def("p_gamma",
          [](std::size_t n, const std::string& kind, double parameter) { return pGamma(n, cone(kind, parameter)); },
          py::arg("n"), py::arg("kind"), py::arg("parameter"));
    m.def("p_gamma_k", &pGammaK, py::arg("n"), py::arg("k"));

    m.def("upper_density",
          [](const Measure& mu, const std::vector<double>& x, double d, const std::vector<double>& ladder) {
              const DensityProfile prof = upperDensity(mu, pt(x), d, ladder);
              return py::make_tuple(prof.limsupEstimate, prof.values);
          },
          py::arg("mu"), py::arg("x"), py::arg("d"), py::arg("ladder"));

    m.def("run_scene",
          [](const std::string& text, const std::string& type, const std::string& verb, std::optional<std::uint64_t> seed) {
              const Scene scene = parseScene(text);
              RunContext ctx;
              ctx.seed = seed;
              Artifacts out;
              const RunOutcome res = runScene(scene, type, verb, ctx, out);
              return py::make_tuple(out.report.dump(), res.failedChecks);
          },
          py::arg("text"), py::arg("type") = "all", py::arg("verb") = "", py::arg("seed") = std::nullopt,
          "Runs a scene given as JSON text; returns (report JSON text, failed check count)");
}
