#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eulerslip/config.hpp"
#include "eulerslip/construct.hpp"
#include "eulerslip/curvcalc.hpp"
#include "eulerslip/errors.hpp"
#include "eulerslip/geometry.hpp"
#include "eulerslip/persistence.hpp"
#include "eulerslip/report.hpp"
#include "eulerslip/sampling.hpp"

namespace py = pybind11;
using namespace eulerslip;

namespace {

using Triple = std::array<double, 3>;

Triple to_triple(const Vec3d& v) { return {v[0], v[1], v[2]}; }
Vec3d to_vec(const Triple& t) { return Vec3d{t[0], t[1], t[2]}; }

SurfaceChart chart_from_json(const std::string& text) {
  nlohmann::json doc = {{"chart", nlohmann::json::parse(text)}, {"field", {{"family", "slab"}}}};
  return build_chart(parse_config(doc.dump()).chart);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Admissible fields, boundary identity checks and persistence scans";
  m.attr("__version__") = EULERSLIP_VERSION;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SingularChartError>(m, "SingularChartError", base.ptr());
  py::register_exception<DegenerateCoordinatesError>(m, "DegenerateCoordinatesError", base.ptr());
  py::register_exception<DegenerateBetaError>(m, "DegenerateBetaError", base.ptr());
  py::register_exception<ConstraintViolationError>(m, "ConstraintViolationError", base.ptr());
  py::register_exception<RegularityError>(m, "RegularityError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<SurfaceChart>(m, "SurfaceChart")
      .def_static("sphere", &SurfaceChart::sphere, py::arg("radius"),
                  py::arg("pole_band") = kDefaultPoleBand)
      .def_static("spheroid", &SurfaceChart::spheroid, py::arg("equatorial"), py::arg("polar"),
                  py::arg("pole_band") = kDefaultPoleBand)
      .def_static("torus", &SurfaceChart::torus, py::arg("major"), py::arg("minor"))
      .def_static("cylinder", &SurfaceChart::cylinder, py::arg("radius"), py::arg("height"))
      .def_static("slab", &SurfaceChart::slab, py::arg("period"))
      .def_static("from_json", &chart_from_json, py::arg("text"),
                  "Chart from a JSON chart block, as in the CLI config.")
      .def_property_readonly("tag", &SurfaceChart::tag)
      .def_property_readonly("kind", [](const SurfaceChart& c) { return to_string(c.kind()); })
      .def_property_readonly("parameters", &SurfaceChart::parameters)
      .def_property_readonly("closed", &SurfaceChart::closed)
      .def_property_readonly("diameter", &SurfaceChart::diameter)
      .def_property_readonly("focal_distance", &SurfaceChart::focal_distance)
      .def("range", [](const SurfaceChart& c, int j) {
        const ParamRange r = c.range(j);
        return std::make_tuple(r.lo, r.hi, r.periodic);
      })
      .def("position", [](const SurfaceChart& c, double xi1, double xi2) {
        return to_triple(c.position(xi1, xi2));
      })
      .def("__repr__", [](const SurfaceChart& c) { return "SurfaceChart(" + c.tag() + ")"; });

  py::class_<BoundaryFrame>(m, "BoundaryFrame")
      .def_readonly("xi1", &BoundaryFrame::xi1)
      .def_readonly("xi2", &BoundaryFrame::xi2)
      .def_property_readonly("position", [](const BoundaryFrame& f) { return to_triple(f.position); })
      .def_property_readonly("i1", [](const BoundaryFrame& f) { return to_triple(f.i1); })
      .def_property_readonly("i2", [](const BoundaryFrame& f) { return to_triple(f.i2); })
      .def_property_readonly("n", [](const BoundaryFrame& f) { return to_triple(f.n); })
      .def_readonly("h1", &BoundaryFrame::h1)
      .def_readonly("h2", &BoundaryFrame::h2)
      .def_readonly("kappa1", &BoundaryFrame::kappa1)
      .def_readonly("kappa2", &BoundaryFrame::kappa2)
      .def_property_readonly("gaussian", &BoundaryFrame::gaussian);

  m.def("surface_frame", &surface_frame, py::arg("chart"), py::arg("xi1"), py::arg("xi2"));
  m.def(
      "curvatures_via_kapa",
      [](const SurfaceChart& c, double xi1, double xi2, double delta) {
        const CurvaturePair k = curvatures_via_kapa(c, xi1, xi2, delta);
        return std::make_pair(k.kappa1, k.kappa2);
      },
      py::arg("chart"), py::arg("xi1"), py::arg("xi2"), py::arg("delta"));
  m.def(
      "classify_point",
      [](const BoundaryFrame& f, double tol, double scale) {
        return to_string(classify_point(f, tol, scale));
      },
      py::arg("frame"), py::arg("tol") = kUmbilicalTolerance, py::arg("length_scale") = 1.0);
  m.def("sigma_membership", &sigma_membership, py::arg("frame"), py::arg("tol"));
  m.def(
      "boundary_samples",
      [](const SurfaceChart& c, std::size_t n, std::uint64_t seed) {
        std::vector<std::pair<double, double>> out;
        for (const ChartPoint& p : stratified_boundary_samples(c, n, seed)) {
          out.emplace_back(p.xi1, p.xi2);
        }
        return out;
      },
      py::arg("chart"), py::arg("count"), py::arg("seed"));

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("samples", &Certificate::samples)
      .def_readonly("seed", &Certificate::seed)
      .def_readonly("tolerance", &Certificate::tolerance)
      .def_readonly("max_divergence", &Certificate::max_divergence)
      .def_readonly("max_normal_velocity", &Certificate::max_normal_velocity)
      .def_readonly("max_tangential_vorticity", &Certificate::max_tangential_vorticity)
      .def_readonly("beta_fidelity", &Certificate::beta_fidelity)
      .def_readonly("flux", &Certificate::flux)
      .def_readonly("constraint_residual", &Certificate::constraint_residual)
      .def_readonly("admissible", &Certificate::admissible)
      .def("to_json", [](const Certificate& c) { return to_json(c).dump(); });

  py::class_<AdmissibleField>(m, "AdmissibleField")
      .def_readonly("certificate", &AdmissibleField::certificate)
      .def_readonly("provenance", &AdmissibleField::provenance)
      .def_property_readonly("admissible", &AdmissibleField::admissible)
      .def("a", [](const AdmissibleField& f, const Triple& x) { return to_triple(f.a(to_vec(x))); })
      .def("b", [](const AdmissibleField& f, const Triple& x) { return to_triple(f.b(to_vec(x))); })
      .def("beta", [](const AdmissibleField& f, double xi1) -> std::optional<double> {
        if (!f.beta) {
          return std::nullopt;
        }
        return f.beta->beta(xi1);
      })
      .def("scaled", &scale_admissible, py::arg("c"));

  m.def(
      "ball_field",
      [](const std::vector<double>& coefficients, bool gaussian, double radius, std::size_t n) {
        BallProfile g;
        g.kind = gaussian ? BallProfile::Kind::gaussian : BallProfile::Kind::polynomial;
        g.coefficients = coefficients;
        return named_ball_field(g, radius, n);
      },
      py::arg("coefficients") = std::vector<double>{2.0, -1.0}, py::arg("gaussian") = false,
      py::arg("radius") = 1.0, py::arg("samples") = 2000);
  m.def("slab_field", &slab_field, py::arg("period"), py::arg("mode") = 1,
        py::arg("samples") = 2000);
  m.def(
      "field_from_beta",
      [](const SurfaceChart& chart, const std::string& basis, const std::vector<double>& coef,
         double center, double width, double cutoff_width, std::size_t n) {
        nlohmann::json f = {{"family", "beta"}, {"basis", basis}, {"coefficients", coef},
                            {"center", center},  {"width", width}};
        const nlohmann::json doc = {{"chart", {{"kind", "slab"}}}, {"field", f}};
        BetaSpec spec = parse_config(doc.dump()).field.beta;
        return admissible_from_beta(chart, make_beta(spec, chart), cutoff_width, n);
      },
      py::arg("chart"), py::arg("basis"), py::arg("coefficients"), py::arg("center") = 0.0,
      py::arg("width") = 0.0, py::arg("cutoff_width") = 0.0, py::arg("samples") = 2000);
  m.def(
      "check_admissible",
      [](const AdmissibleField& f, const SurfaceChart& c, std::size_t n, std::uint64_t seed) {
        return check_admissible(f.a, c, n, seed);
      },
      py::arg("field"), py::arg("chart"), py::arg("samples"), py::arg("seed") = 1);

  py::class_<ScanTolerances>(m, "ScanTolerances")
      .def(py::init<>())
      .def_readwrite("identity", &ScanTolerances::identity)
      .def_readwrite("criterion", &ScanTolerances::criterion)
      .def_readwrite("sigma", &ScanTolerances::sigma)
      .def_readwrite("lambda_", &ScanTolerances::lambda);

  py::class_<ScanReport>(m, "ScanReport")
      .def_readonly("max_deviation", &ScanReport::max_deviation)
      .def_readonly("field_scale", &ScanReport::field_scale)
      .def_readonly("criterion_threshold", &ScanReport::criterion_threshold)
      .def_readonly("fraction_flagged", &ScanReport::fraction_flagged)
      .def_property_readonly("verdict", [](const ScanReport& r) { return to_string(r.verdict); })
      .def_property_readonly("identity_passes", &ScanReport::identity_passes)
      .def_property_readonly("sample_count", [](const ScanReport& r) { return r.samples.size(); })
      .def("to_json", [](const ScanReport& r, bool per_sample) { return to_json(r, per_sample).dump(); },
           py::arg("per_sample") = false);

  m.def("verify_identity", &verify_identity, py::arg("field"), py::arg("chart"),
        py::arg("samples"), py::arg("seed"), py::arg("tol") = ScanTolerances{},
        py::arg("threads") = 0u, py::call_guard<py::gil_scoped_release>());
  m.def("criterion_scan", &criterion_scan, py::arg("field"), py::arg("chart"), py::arg("samples"),
        py::arg("seed"), py::arg("tol") = ScanTolerances{}, py::arg("threads") = 0u,
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "identity_sides",
      [](const AdmissibleField& f, const SurfaceChart& c, double xi1, double xi2) {
        const IdentitySample s = evaluate_identity(f, c, xi1, xi2);
        return std::make_tuple(to_triple(s.lhs), to_triple(s.rhs), s.deviation);
      },
      py::arg("field"), py::arg("chart"), py::arg("xi1"), py::arg("xi2"));

  py::class_<Witness>(m, "Witness")
      .def_readonly("radius", &Witness::radius)
      .def_readonly("found", &Witness::found)
      .def_readonly("xi1", &Witness::xi1)
      .def_readonly("xi2", &Witness::xi2)
      .def_readonly("distance", &Witness::distance)
      .def_readonly("component", &Witness::component)
      .def_readonly("value", &Witness::value);
  py::class_<PropositionResult>(m, "PropositionResult")
      .def_readonly("witnesses", &PropositionResult::witnesses)
      .def_readonly("all_found", &PropositionResult::all_found)
      .def_readonly("b3_exact", &PropositionResult::b3_exact)
      .def_readonly("b3_surface_curl", &PropositionResult::b3_surface_curl);
  m.def("proposition_witness", &proposition_witness, py::arg("field"), py::arg("chart"),
        py::arg("xi1"), py::arg("xi2"), py::arg("radii"), py::arg("step") = 1e-4,
        py::arg("b3_tol") = 1e-6, py::arg("witness_tol") = 1e-9);
  m.def("proof_step_residuals", &proof_step_residuals, py::arg("field"), py::arg("chart"),
        py::arg("xi1"), py::arg("xi2"), py::arg("step") = 1e-4);
  m.def(
      "navier_stress_gap",
      [](const AdmissibleField& f, const SurfaceChart& c, double xi1, double xi2,
         const Triple& tau, double nu) {
        const BoundaryFrame fr = surface_frame(c, xi1, xi2);
        const NavierStressGap g = navier_stress_gap(f, fr.position, fr, to_vec(tau), nu);
        return std::make_pair(g.slip_term, g.curvature_term);
      },
      py::arg("field"), py::arg("chart"), py::arg("xi1"), py::arg("xi2"), py::arg("tau"),
      py::arg("nu"));
}
