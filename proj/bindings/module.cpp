// Python bindings for the core library: rotation numbers, multi-angles,
// polynomial families, Siegel models, bubble trees, the correspondence and
// parameter map, and the deterministic renderers.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sdyn/bubbles.hpp"
#include "sdyn/dynamics.hpp"
#include "sdyn/model.hpp"
#include "sdyn/multiangle.hpp"
#include "sdyn/render.hpp"
#include "sdyn/rotation.hpp"
#include "sdyn/siegel.hpp"

namespace py = pybind11;
using namespace sdyn;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Siegel disks, bubbles, multi-angles, and the cubic parameter map";
    m.attr("__version__") = "0.1.0";
    m.attr("version_string") = kVersion;

    // ------------------------------------------------------------- rotation
    py::class_<Angle>(m, "Angle", "Angle on the circle R/Z, stored in turns")
        .def_static("from_turns", &Angle::from_turns, py::arg("turns"))
        .def_property_readonly("turns", &Angle::turns)
        .def_property_readonly("point", &Angle::point)
        .def("__repr__",
             [](const Angle& a) { return "Angle(" + std::to_string(a.turns()) + ")"; });

    py::class_<RotationNumber>(m, "RotationNumber",
                               "Bounded-type rotation number from an eventually periodic "
                               "continued fraction")
        .def_static("golden", &RotationNumber::golden)
        .def_static("sqrt2_over_2", &RotationNumber::sqrt2_over_2)
        .def_static("parse", &RotationNumber::parse, py::arg("text"),
                    "Parse 'golden', 'sqrt2over2', or 'pre:period' syntax such as '1:2'")
        .def_static("from_quadratic_surd", &RotationNumber::from_quadratic_surd,
                    py::arg("preperiod"), py::arg("period"))
        .def_property_readonly("value", &RotationNumber::value)
        .def_property_readonly("bound", &RotationNumber::bound)
        .def_property_readonly("preperiod", &RotationNumber::preperiod)
        .def_property_readonly("period", &RotationNumber::period)
        .def("cf_terms", &RotationNumber::cf_terms, py::arg("n"))
        .def("convergents", &RotationNumber::convergents, py::arg("n"))
        .def("legal_angle", &RotationNumber::legal_angle, py::arg("m"),
             "The angle (-m*theta) mod 1 carried by the m-th legal ray")
        .def("multiplier", &RotationNumber::multiplier)
        .def("describe", &RotationNumber::describe)
        .def("__repr__", &RotationNumber::describe);

    // ------------------------------------------------------------ multiangle
    py::class_<MultiAngleViolation>(m, "MultiAngleViolation")
        .def_readonly("index", &MultiAngleViolation::index)
        .def_readonly("message", &MultiAngleViolation::message);

    m.def("check_multiangle", &check_multiangle, py::arg("ma"),
          "None when legal, else the first violation");
    m.def("validate_multiangle", &validate_multiangle, py::arg("ma"),
          "Raises ValueError when the sequence is not legal");
    m.def("pi_step", &pi_step, py::arg("ma"), "One step of the angle shift map");
    m.def("pi_orbit", &pi_orbit, py::arg("ma"),
          "Angle-shift orbit from ma (inclusive) to the terminal (0) or (0,0)");
    m.def("is_legal_bubble_address", &is_legal_bubble_address, py::arg("ma"),
          py::arg("crit") = std::nullopt);

    py::class_<MultiAngleStream>(m, "MultiAngleStream",
                                 "Lazily evaluated infinite legal sequence")
        .def(py::init<std::function<std::int64_t(size_t)>, size_t>(), py::arg("pair_rule"),
             py::arg("depth"))
        .def_static("periodic_increments", &MultiAngleStream::periodic_increments,
                    py::arg("pattern"), py::arg("depth"))
        .def("pair_value", &MultiAngleStream::pair_value, py::arg("i"))
        .def("prefix", &MultiAngleStream::prefix, py::arg("pairs"))
        .def_property_readonly("depth", &MultiAngleStream::depth);

    // -------------------------------------------------------------- dynamics
    py::class_<PolyMap>(m, "PolyMap",
                        "f(z) = lambda*z + a2*z^2 + a3*z^3 (the shared family shape)")
        .def(py::init([](cplx lambda, cplx a2, cplx a3) {
                 return PolyMap{lambda, a2, a3};
             }),
             py::arg("lambda_"), py::arg("a2"), py::arg("a3") = cplx(0.0))
        .def_readonly("lambda_", &PolyMap::lambda)
        .def_readonly("a2", &PolyMap::a2)
        .def_readonly("a3", &PolyMap::a3)
        .def_property_readonly("degree", &PolyMap::degree)
        .def("eval", &PolyMap::eval, py::arg("z"))
        .def("deriv", &PolyMap::deriv, py::arg("z"))
        .def("iterate", &PolyMap::iterate, py::arg("z"), py::arg("n"))
        .def("__call__", &PolyMap::eval, py::arg("z"));

    py::class_<QuadraticMap>(m, "QuadraticMap", "q(z) = lambda*z*(1 - z/2), critical point 1")
        .def(py::init<cplx>(), py::arg("lambda_"))
        .def(py::init<const RotationNumber&>(), py::arg("rot"))
        .def_readonly("lambda_", &QuadraticMap::lambda)
        .def("poly", &QuadraticMap::poly);

    py::class_<CubicMap>(m, "CubicMap",
                         "p_c(z) = lambda*z*(1 - (1+1/c)z/2 + z^2/(3c)), critical points 1, c")
        .def(py::init<cplx, cplx>(), py::arg("lambda_"), py::arg("c"))
        .def_readonly("lambda_", &CubicMap::lambda)
        .def_readonly("c", &CubicMap::c)
        .def("poly", &CubicMap::poly);

    py::class_<FigOneMap>(m, "FigOneMap", "f(z) = lambda*z + sqrt(a)*z^2 + z^3")
        .def(py::init<cplx, cplx>(), py::arg("lambda_"), py::arg("a"))
        .def_readonly("lambda_", &FigOneMap::lambda)
        .def_readonly("a", &FigOneMap::a)
        .def("poly", &FigOneMap::poly);

    m.def("critical_points", &critical_points, py::arg("f"));
    m.def("preimages", &preimages, py::arg("f"), py::arg("w"),
          "All solutions of f(z) = w, degree-many with multiplicity");

    py::class_<EscapeResult>(m, "EscapeResult")
        .def_readonly("escaped", &EscapeResult::escaped)
        .def_readonly("iterations", &EscapeResult::iterations);
    m.def("escape_time", &escape_time, py::arg("f"), py::arg("z0"), py::arg("radius"),
          py::arg("max_iter"));

    py::class_<ConjugateParameter>(m, "ConjugateParameter")
        .def_readonly("c_out", &ConjugateParameter::c_out)
        .def_readonly("scale", &ConjugateParameter::scale)
        .def_readonly("residual", &ConjugateParameter::residual);
    m.def("conjugate_parameter", &conjugate_parameter, py::arg("lambda_"), py::arg("c"),
          "Linear conjugacy data between p_c and p_{1/c}");

    py::class_<FigOneToCubic>(m, "FigOneToCubic")
        .def_readonly("c", &FigOneToCubic::c)
        .def_readonly("scale", &FigOneToCubic::scale)
        .def_readonly("residual", &FigOneToCubic::residual);
    m.def("figone_to_cubic", &figone_to_cubic, py::arg("f"));
    m.def("cubic_to_figone", &cubic_to_figone, py::arg("lambda_"), py::arg("c"));

    py::class_<BlaschkeFraction>(m, "BlaschkeFraction",
                                 "Degree-1 circle restriction of a degree-3 Blaschke fraction")
        .def(py::init<double, cplx, cplx>(), py::arg("t"), py::arg("p"), py::arg("q"))
        .def_readonly("t", &BlaschkeFraction::t)
        .def_readonly("p", &BlaschkeFraction::p)
        .def_readonly("q", &BlaschkeFraction::q)
        .def("eval", &BlaschkeFraction::eval, py::arg("z"))
        .def("circle_image", &BlaschkeFraction::circle_image, py::arg("x"));

    m.def(
        "circle_rotation_number",
        [](const BlaschkeFraction& B, int iters) { return circle_rotation_number(B, iters); },
        py::arg("B"), py::arg("iters") = 20000,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "circle_rotation_number",
        [](const std::function<double(double)>& f, int iters) {
            return circle_rotation_number(f, iters);
        },
        py::arg("map_turns"), py::arg("iters") = 20000,
        "Rotation number of a degree-1 circle map given in turn coordinates");
    m.def("tune_blaschke_parameter", &tune_blaschke_parameter, py::arg("p"), py::arg("q"),
          py::arg("target_theta"), py::arg("tol") = 1e-10, py::arg("iters") = 20000,
          py::call_guard<py::gil_scoped_release>());

    // ---------------------------------------------------------------- siegel
    py::class_<PolarPoint>(m, "PolarPoint")
        .def_readonly("rho", &PolarPoint::rho)
        .def_readonly("angle", &PolarPoint::angle)
        .def_readonly("residual", &PolarPoint::residual);

    py::class_<BoundarySample>(m, "BoundarySample")
        .def_readonly("angle", &BoundarySample::angle)
        .def_readonly("point", &BoundarySample::point)
        .def_readonly("k", &BoundarySample::k);

    py::class_<SiegelModel> siegel_model(m, "SiegelModel",
                                         "Numerical model of the Siegel disk: linearization "
                                         "series plus the boundary critical orbit");
    py::class_<SiegelModel::BoundaryLocation>(siegel_model, "BoundaryLocation")
        .def_readonly("angle", &SiegelModel::BoundaryLocation::angle)
        .def_readonly("distance", &SiegelModel::BoundaryLocation::distance)
        .def_readonly("gap", &SiegelModel::BoundaryLocation::gap);
    siegel_model
        .def(py::init<PolyMap, const RotationNumber&, cplx, int, int>(), py::arg("map"),
             py::arg("rot"), py::arg("boundary_crit"), py::arg("series_terms") = 200,
             py::arg("orbit_samples") = 2000, py::call_guard<py::gil_scoped_release>())
        .def_property_readonly("map", &SiegelModel::map)
        .def_property_readonly("rotation", &SiegelModel::rotation)
        .def_property_readonly("theta", &SiegelModel::theta)
        .def_property_readonly("coefficients", &SiegelModel::coefficients)
        .def_property_readonly("conformal_radius", &SiegelModel::conformal_radius)
        .def_property_readonly("radius_low_confidence", &SiegelModel::radius_low_confidence)
        .def_property_readonly("is_rigid_rotation", &SiegelModel::is_rigid_rotation)
        .def_property_readonly("boundary", &SiegelModel::boundary)
        .def_property_readonly("boundary_phase", &SiegelModel::boundary_phase)
        .def_property_readonly("min_boundary_distance", &SiegelModel::min_boundary_distance)
        .def("psi", &SiegelModel::psi, py::arg("w"))
        .def("psi_deriv", &SiegelModel::psi_deriv, py::arg("w"))
        .def("point_at", &SiegelModel::point_at, py::arg("rho"), py::arg("angle_turns"))
        .def("boundary_point", &SiegelModel::boundary_point, py::arg("angle_turns"))
        .def("locate_on_boundary", &SiegelModel::locate_on_boundary, py::arg("z"))
        .def("polar", &SiegelModel::polar, py::arg("z"))
        .def("contains", &SiegelModel::contains, py::arg("z"), py::arg("band") = 1e-6)
        .def_static("trust_rho", &SiegelModel::trust_rho);

    m.def("linearization_series", &linearization_series, py::arg("map"), py::arg("terms"));
    m.def("conformal_radius_estimate", &conformal_radius_estimate, py::arg("coeffs"));
    m.def("linearization_defect", &linearization_defect, py::arg("model"),
          py::arg("rho_fraction") = 0.5, py::arg("samples") = 64,
          "Max functional-equation defect |psi(lambda w) - f(psi(w))| on a circle");

    // --------------------------------------------------------------- bubbles
    py::enum_<BubbleKind>(m, "BubbleKind")
        .value("siegel_disk", BubbleKind::siegel_disk)
        .value("off_critical", BubbleKind::off_critical)
        .value("critical", BubbleKind::critical)
        .value("precritical", BubbleKind::precritical);

    py::class_<BoundaryVertex>(m, "BoundaryVertex")
        .def_readonly("param", &BoundaryVertex::param)
        .def_readonly("point", &BoundaryVertex::point);

    py::class_<Bubble>(m, "Bubble", "A component of an iterated preimage of the Siegel disk")
        .def_readonly("address", &Bubble::address)
        .def_readonly("generation", &Bubble::generation)
        .def_readonly("root", &Bubble::root)
        .def_readonly("center", &Bubble::center)
        .def_readonly("boundary", &Bubble::boundary)
        .def_readonly("parent", &Bubble::parent)
        .def_readonly("image", &Bubble::image)
        .def_readonly("kind", &Bubble::kind)
        .def_readonly("diameter", &Bubble::diameter)
        .def_readonly("separatrices", &Bubble::separatrices)
        .def("boundary_at", &Bubble::boundary_at, py::arg("param"))
        .def("winding_contains", &Bubble::winding_contains, py::arg("z"))
        .def("boundary_distance", &Bubble::boundary_distance, py::arg("z"));

    py::class_<BubbleRay>(m, "BubbleRay")
        .def_readonly("chain", &BubbleRay::chain)
        .def_readonly("pattern", &BubbleRay::pattern)
        .def_readonly("period", &BubbleRay::period)
        .def_readonly("landing_estimate", &BubbleRay::landing_estimate)
        .def_readonly("tail_diameter", &BubbleRay::tail_diameter)
        .def_readonly("landing_residual", &BubbleRay::landing_residual)
        .def_readonly("multiplier_modulus", &BubbleRay::multiplier_modulus)
        .def_readonly("resolved", &BubbleRay::resolved);

    py::class_<BubbleTree>(m, "BubbleTree",
                           "Lazily built tree of legal bubbles over a Siegel model")
        .def(py::init<SiegelModel, std::optional<MultiAngle>>(), py::arg("model"),
             py::arg("crit_address") = std::nullopt)
        .def_property_readonly("model", &BubbleTree::model,
                               py::return_value_policy::reference_internal)
        .def_property_readonly("disk", &BubbleTree::disk,
                               py::return_value_policy::reference_internal)
        .def_property_readonly("crit_address", &BubbleTree::crit_address)
        .def("ensure", &BubbleTree::ensure, py::arg("address"),
             py::return_value_policy::reference_internal)
        .def("find", &BubbleTree::find, py::arg("address"),
             py::return_value_policy::reference_internal)
        .def("build", &BubbleTree::build, py::arg("max_gen"), py::arg("min_diam"),
             py::call_guard<py::gil_scoped_release>())
        .def("nodes", &BubbleTree::nodes, py::arg("min_diam") = 0.0,
             py::return_value_policy::reference_internal)
        .def("attach_point", &BubbleTree::attach_point, py::arg("parent_address"), py::arg("m"))
        .def("bubble_point", &BubbleTree::bubble_point, py::arg("address"), py::arg("rho"),
             py::arg("own_angle_turns"))
        .def("chain", &BubbleTree::chain, py::arg("point_address"),
             py::return_value_policy::reference_internal)
        .def("trace_ray", &BubbleTree::trace_ray, py::arg("pattern"),
             py::arg("max_depth") = 200, py::arg("tail_tol") = 1e-6,
             py::call_guard<py::gil_scoped_release>());

    // ----------------------------------------------------------------- model
    m.attr("RHO_INFINITE") = RHO_INFINITE;

    py::class_<ModelPoint>(m, "ModelPoint",
                           "A point of the filled-Julia model: multi-angle address plus polar "
                           "data")
        .def_readonly("ma", &ModelPoint::ma)
        .def_readonly("rho", &ModelPoint::rho)
        .def_readonly("angle", &ModelPoint::angle)
        .def_readonly("embedded", &ModelPoint::embedded)
        .def_readonly("quotient_canonical", &ModelPoint::quotient_canonical)
        .def_readonly("resolved", &ModelPoint::resolved)
        .def_readonly("depth", &ModelPoint::depth)
        .def_readonly("note", &ModelPoint::note);

    py::class_<LocateOptions>(m, "LocateOptions")
        .def(py::init<>())
        .def_readwrite("boundary_tol", &LocateOptions::boundary_tol)
        .def_readwrite("rho_snap", &LocateOptions::rho_snap)
        .def_readwrite("ray_match_tol", &LocateOptions::ray_match_tol)
        .def_readwrite("escape_radius", &LocateOptions::escape_radius)
        .def_readwrite("escape_iters", &LocateOptions::escape_iters)
        .def_readwrite("max_ray_index", &LocateOptions::max_ray_index);

    py::class_<PhiOptions>(m, "PhiOptions")
        .def(py::init<>())
        .def_readwrite("max_gen", &PhiOptions::max_gen)
        .def_readwrite("min_diam", &PhiOptions::min_diam)
        .def_readwrite("series_terms", &PhiOptions::series_terms)
        .def_readwrite("orbit_samples", &PhiOptions::orbit_samples)
        .def_readwrite("rho_snap", &PhiOptions::rho_snap)
        .def_readwrite("locate", &PhiOptions::locate);

    m.def("locate_point", &locate_point, py::arg("tree"), py::arg("z"),
          py::arg("opts") = LocateOptions{}, py::call_guard<py::gil_scoped_release>());
    m.def("eta_eval", &eta_eval, py::arg("q_tree"), py::arg("ma"), py::arg("rho"),
          py::call_guard<py::gil_scoped_release>(),
          "The correspondence: realize (ma, rho) as a point of the quadratic tree");
    m.def("eta_transport", &eta_transport, py::arg("q_tree"), py::arg("located"),
          py::call_guard<py::gil_scoped_release>());
    m.def("phi", &phi, py::arg("q_tree"), py::arg("rot"), py::arg("c"),
          py::arg("opts") = PhiOptions{}, py::call_guard<py::gil_scoped_release>(),
          "Parameter map: the free critical point's address transported to the model");
    m.def("quotient_project", &quotient_project, py::arg("q_tree"), py::arg("mp"));
    m.def("symmetry_residual", &symmetry_residual, py::arg("q_tree"), py::arg("rot"),
          py::arg("c"), py::arg("opts") = PhiOptions{},
          py::call_guard<py::gil_scoped_release>());
    m.def("make_quadratic_tree", &make_quadratic_tree, py::arg("rot"),
          py::arg("series_terms") = 200, py::arg("orbit_samples") = 2000,
          py::call_guard<py::gil_scoped_release>());

    // ---------------------------------------------------------------- render
    py::enum_<ParameterPlane>(m, "ParameterPlane")
        .value("a_plane", ParameterPlane::a_plane)
        .value("c_plane", ParameterPlane::c_plane);

    py::class_<RenderConfig>(m, "RenderConfig", "Deterministic rendering configuration")
        .def(py::init<>())
        .def_readwrite("center", &RenderConfig::center)
        .def_readwrite("width", &RenderConfig::width)
        .def_readwrite("height", &RenderConfig::height)
        .def_readwrite("width_px", &RenderConfig::width_px)
        .def_readwrite("height_px", &RenderConfig::height_px)
        .def_readwrite("max_iter", &RenderConfig::max_iter)
        .def_readwrite("escape_radius", &RenderConfig::escape_radius)
        .def_readwrite("threads", &RenderConfig::threads)
        .def_readwrite("overlay_siegel", &RenderConfig::overlay_siegel)
        .def_readwrite("overlay_bubbles_to_gen", &RenderConfig::overlay_bubbles_to_gen)
        .def_readwrite("palette", &RenderConfig::palette)
        .def_static("default_palette", &RenderConfig::default_palette)
        .def("validate", &RenderConfig::validate)
        .def("pixel_center", &RenderConfig::pixel_center, py::arg("row"), py::arg("col"));

    py::class_<Raster>(m, "Raster")
        .def_readonly("width_px", &Raster::width_px)
        .def_readonly("height_px", &Raster::height_px)
        .def_readonly("meta", &Raster::meta)
        .def_property_readonly("pixels",
                               [](const Raster& r) {
                                   return py::bytes(
                                       reinterpret_cast<const char*>(r.pixels.data()),
                                       r.pixels.size());
                               })
        .def("get", &Raster::get, py::arg("row"), py::arg("col"));

    m.def("render_parameter_plane", &render_parameter_plane, py::arg("rot"), py::arg("plane"),
          py::arg("cfg"), py::call_guard<py::gil_scoped_release>());
    m.def("render_dynamical_plane", &render_dynamical_plane, py::arg("map"), py::arg("cfg"),
          py::arg("model") = nullptr, py::arg("tree") = nullptr,
          py::call_guard<py::gil_scoped_release>());
    m.def("write_ppm", &write_ppm, py::arg("raster"), py::arg("path"));
}
