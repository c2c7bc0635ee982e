#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "cli.hpp"
#include "weingarten/cyclic_r3.hpp"
#include "weingarten/error.hpp"
#include "weingarten/export.hpp"
#include "weingarten/geomcore.hpp"
#include "weingarten/parab_h3.hpp"
#include "weingarten/rot_r3.hpp"

namespace py = pybind11;
using namespace weingarten;

namespace {

template <class Point, class Get>
py::array_t<double> column(const std::vector<Point>& pts, Get get) {
  std::vector<double> v(pts.size());
  std::transform(pts.begin(), pts.end(), v.begin(), get);
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

template <class Point>
py::dict profile_columns(const std::vector<Point>& pts) {
  py::dict d;
  d["s"] = column(pts, [](const Point& p) { return p.s; });
  d["x"] = column(pts, [](const Point& p) { return p.x; });
  d["z"] = column(pts, [](const Point& p) { return p.z; });
  d["theta"] = column(pts, [](const Point& p) { return p.theta; });
  d["theta_prime"] = column(pts, [](const Point& p) { return p.theta_prime; });
  return d;
}

py::dict residual_summary(const geom::ParamSurfacePatch& patch, const WeingartenParams& p, std::size_t nu,
                          std::size_t nv) {
  const auto res = geom::weingarten_residual(patch, p, geom::SampleGrid::uniform(patch.domain, nu, nv));
  double max_h = 0, max_k = 0;
  for (const auto& s : res.field.samples) {
    max_h = std::max(max_h, std::abs(s.curv.H));
    max_k = std::max(max_k, std::abs(s.curv.K));
  }
  py::dict d;
  d["max_residual"] = res.max_abs;
  d["max_abs_H"] = max_h;
  d["max_abs_K"] = max_k;
  d["samples"] = res.field.samples.size();
  return d;
}

std::string obj_text(const io::Mesh& mesh, const std::string& comment) {
  std::ostringstream out;
  io::write_obj(out, mesh, comment);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_weingarten, m) {
  m.doc() = "Linear Weingarten surfaces: profile integration, classification and curvature checks";

  py::register_exception<Error>(m, "WeingartenError", PyExc_ValueError);

  py::class_<WeingartenParams>(m, "WeingartenParams")
      .def(py::init<double, double, double>(), py::arg("a"), py::arg("b"), py::arg("c") = 1.0)
      .def_readwrite("a", &WeingartenParams::a)
      .def_readwrite("b", &WeingartenParams::b)
      .def_readwrite("c", &WeingartenParams::c)
      .def_property_readonly("discriminant", &WeingartenParams::discriminant)
      .def_property_readonly("discriminant_class",
                             [](const WeingartenParams& p) { return std::string(to_string(p.discriminant_class())); })
      .def("normalized", &WeingartenParams::normalized)
      .def("__repr__", [](const WeingartenParams& p) {
        std::ostringstream s;
        s << "WeingartenParams(a=" << p.a << ", b=" << p.b << ", c=" << p.c << ")";
        return s.str();
      });

  py::class_<geom::ParamSurfacePatch>(m, "Surface")
      .def_property_readonly("domain",
                             [](const geom::ParamSurfacePatch& s) {
                               return py::make_tuple(s.domain.u0, s.domain.u1, s.domain.v0, s.domain.v1);
                             })
      .def("position",
           [](const geom::ParamSurfacePatch& s, double u, double v) {
             const auto x = s.position(u, v);
             return py::make_tuple(x.x(), x.y(), x.z());
           })
      .def("curvatures",
           [](const geom::ParamSurfacePatch& s, double u, double v) {
             const auto c = geom::curvatures(s, u, v);
             py::dict d;
             d["H"] = c.H;
             d["K"] = c.K;
             d["k1"] = c.k1;
             d["k2"] = c.k2;
             return d;
           })
      .def("residual", &residual_summary, py::arg("params"), py::arg("nu") = 64, py::arg("nv") = 64,
           "max |aH + bK - c| over an interior grid, with the extremes of |H| and |K|.");

  // Rotational surfaces in R^3.
  auto rot = m.def_submodule("rot", "Hyperbolic surfaces of revolution");

  py::class_<rot::HyperbolicProfile>(rot, "Profile")
      .def_readonly("params", &rot::HyperbolicProfile::params)
      .def_readonly("z0", &rot::HyperbolicProfile::z0)
      .def_readonly("n_periods", &rot::HyperbolicProfile::n_periods)
      .def_readonly("T", &rot::HyperbolicProfile::T)
      .def_readonly("T1", &rot::HyperbolicProfile::T1)
      .def_readonly("T2", &rot::HyperbolicProfile::T2)
      .def_readonly("T3", &rot::HyperbolicProfile::T3)
      .def_property_readonly("samples", [](const rot::HyperbolicProfile& p) { return profile_columns(p.samples); })
      .def("at", [](const rot::HyperbolicProfile& p, double s) {
        const auto q = p.at(s);
        return py::make_tuple(q.x, q.z, q.theta, q.theta_prime);
      });

  rot.def("integrate_profile", &rot::integrate_profile, py::arg("params"), py::arg("z0"), py::arg("n_periods") = 3,
          py::arg("tol") = 1e-10, py::arg("samples_per_period") = 2000);
  rot.def("first_integral_residual", [](const rot::HyperbolicProfile& p) {
    const auto r = rot::first_integral_residual(p);
    return py::make_tuple(r.max_first_integral, r.max_closed_form_deviation);
  });
  rot.def(
      "bounds",
      [](const rot::HyperbolicProfile& p) {
        const auto r = rot::theta_prime_bounds_check(p, false);
        py::dict d;
        d["M"] = r.bounds.M;
        d["M_corrected"] = r.bounds.M_valid;
        d["eta"] = r.bounds.eta;
        d["max_theta_prime"] = r.max_theta_prime;
        d["min_numerator"] = r.min_numerator;
        d["violations"] = r.violations.size();
        return d;
      },
      "theta' bounds; violations are counted rather than raised.");
  rot.def(
      "periodicity",
      [](const rot::HyperbolicProfile& p, std::size_t n) {
        const auto r = rot::periodicity_check(p, n);
        py::dict d;
        d["T"] = r.T;
        d["xT"] = r.xT;
        d["z_T_defect"] = r.z_T_defect;
        d["translation_defect"] = r.translation_defect;
        return d;
      },
      py::arg("profile"), py::arg("n_samples") = 50);
  rot.def("self_intersections", [](const rot::HyperbolicProfile& p) {
    std::vector<std::tuple<double, double, double, double>> out;
    for (const auto& c : rot::self_intersections(p)) out.emplace_back(c.s1, c.s2, c.x, c.z);
    return out;
  });
  rot.def(
      "revolve",
      [](const rot::HyperbolicProfile& p, std::size_t phi) {
        auto surf = rot::revolve(p, phi);
        return py::make_tuple(surf.patch, surf.max_residual, obj_text(surf.mesh, "rot surface"));
      },
      py::arg("profile"), py::arg("phi_samples") = 64, "Returns (surface, max mesh residual, OBJ text).");

  // Parabolic surfaces in H^3.
  auto parab = m.def_submodule("parab", "Parabolic surfaces in hyperbolic space");

  py::class_<parab::ParabolicProfile>(parab, "Profile")
      .def_readonly("a", &parab::ParabolicProfile::a)
      .def_readonly("b", &parab::ParabolicProfile::b)
      .def_readonly("z0", &parab::ParabolicProfile::z0)
      .def_readonly("s_bar", &parab::ParabolicProfile::s_bar)
      .def_readonly("half_turns", &parab::ParabolicProfile::half_turns)
      .def_property_readonly("end", [](const parab::ParabolicProfile& p) { return std::string(to_string(p.end)); })
      .def_property_readonly("samples",
                             [](const parab::ParabolicProfile& p) { return profile_columns(p.samples); });

  parab.def(
      "integrate",
      [](double a, double b, double z0, double tol, double horizon, std::size_t samples) {
        parab::IntegrateOptions o;
        o.tol = tol;
        o.horizon = horizon;
        o.samples = samples;
        return parab::integrate_parabolic(a, b, z0, o);
      },
      py::arg("a"), py::arg("b"), py::arg("z0") = 1.0, py::arg("tol") = 1e-10, py::arg("horizon") = 1e3,
      py::arg("samples") = 4000);
  parab.def(
      "classify",
      [](double a, double b, double z0) {
        const auto c = parab::classify(a, b, z0);
        py::dict d;
        d["label"] = std::string(to_string(c.label));
        d["theta_prime0"] = c.theta_prime0;
        d["threshold_low"] = c.threshold_low;
        d["threshold_high"] = c.threshold_high;
        d["circle_discriminant"] = c.circle_discriminant;
        d["theta1"] = c.theta1 ? py::object(py::float_(*c.theta1)) : py::object(py::none());
        d["expected_end"] = std::string(to_string(c.expected_end));
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("z0") = 1.0);
  parab.def(
      "corroborate",
      [](double a, double b, double z0) {
        const auto c = parab::corroborate(parab::classify(a, b, z0), parab::integrate_parabolic(a, b, z0));
        return py::make_tuple(c.ok, std::string(to_string(c.observed)), c.detail);
      },
      py::arg("a"), py::arg("b"), py::arg("z0") = 1.0, "Classifies, integrates and compares: (ok, observed end, detail).");
  parab.def("boundary_angle", &parab::boundary_angle, py::arg("a"), py::arg("b"));
  parab.def(
      "circle",
      [](double a, double b, double z0) {
        const auto c = parab::circle_solution(a, b, z0);
        py::dict d;
        d["center"] = py::make_tuple(c.center_x, c.center_z);
        d["radius"] = c.radius;
        d["clipped"] = c.clipped;
        d["max_distance"] = c.max_distance;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("z0") = 1.0);
  parab.def("second_derivative_residual",
            [](const parab::ParabolicProfile& p) { return parab::second_derivative_residual(p).max_abs; });
  parab.def("hyperbolic_residual",
            [](const parab::ParabolicProfile& p) { return parab::hyperbolic_curvature_check(p).max_residual; });

  // Cyclic surfaces in R^3.
  auto cyclic = m.def_submodule("cyclic", "Surfaces foliated by circles in parallel planes");

  py::class_<cyclic::CyclicSurfaceSpec>(cyclic, "Spec")
      .def_readonly("kind", &cyclic::CyclicSurfaceSpec::kind)
      .def_readonly("u0", &cyclic::CyclicSurfaceSpec::u0)
      .def_readonly("u1", &cyclic::CyclicSurfaceSpec::u1)
      .def("surface", [](const cyclic::CyclicSurfaceSpec& s) { return cyclic::cyclic_patch(s); })
      .def(
          "obj",
          [](const cyclic::CyclicSurfaceSpec& s, std::size_t nu, std::size_t nv) {
            return obj_text(cyclic::cyclic_mesh(s, nu, nv), s.kind);
          },
          py::arg("nu") = 64, py::arg("nv") = 64);

  cyclic.def("generalized_cone", &cyclic::generalized_cone, py::arg("f0"), py::arg("f1"), py::arg("g0"),
             py::arg("g1"), py::arg("r0"), py::arg("r1"), py::arg("u0") = 0.0, py::arg("u1") = 1.0);
  cyclic.def("sphere_slice", &cyclic::sphere_slice, py::arg("R"), py::arg("u0"), py::arg("u1"));
  cyclic.def(
      "riemann",
      [](double lambda, double mu, double r0, double r0p, double u0, double u1, bool second_law) {
        const auto law = second_law ? cyclic::CenterLaw::SecondDerivative : cyclic::CenterLaw::FirstDerivative;
        const auto ex = cyclic::riemann_example(lambda, mu, r0, r0p, u0, u1, law);
        const auto id = cyclic::riemann_identity(ex);
        return py::make_tuple(ex.spec, id.max_identity_residual, id.max_conserved_drift);
      },
      py::arg("lambda_"), py::arg("mu") = 0.0, py::arg("r0") = 1.0, py::arg("r0_prime") = 0.0, py::arg("u0") = -0.8,
      py::arg("u1") = 0.8, py::arg("second_law") = false,
      "Returns (spec, identity residual, conserved-quantity drift).");
  cyclic.def(
      "trig_coefficients",
      [](const cyclic::CyclicSurfaceSpec& s, const WeingartenParams& p, double u, std::size_t n, std::size_t samples) {
        const auto t = cyclic::trig_coefficients(s, p, u, n, samples);
        py::dict d;
        d["A"] = t.A;
        d["B"] = t.B;
        d["max_abs"] = t.max_abs;
        d["reconstruction_error"] = t.reconstruction_error;
        return d;
      },
      py::arg("spec"), py::arg("params"), py::arg("u"), py::arg("harmonics") = 12, py::arg("samples") = 64);

  m.def(
      "run",
      [](const std::string& config_json) {
        const auto cfg = cli::config_from_json(nlohmann::json::parse(config_json));
        std::ostringstream log;
        const auto r = cli::run(cfg, log);
        return py::make_tuple(r.exit_code, io::dump_json(r.report), log.str());
      },
      py::arg("config_json"), "Runs one CLI command from a JSON config: (exit code, report JSON, log).");
}
