#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "weingarten/cyclic_r3.hpp"
#include "weingarten/error.hpp"
#include "weingarten/export.hpp"
#include "weingarten/geomcore.hpp"
#include "weingarten/parab_h3.hpp"
#include "weingarten/rot_r3.hpp"

namespace weingarten::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

template <class T>
struct Field {
  const char* name;
  std::optional<T> RunConfig::*member;
};

constexpr std::array kDoubleFields{
    Field<double>{"a", &RunConfig::a},           Field<double>{"b", &RunConfig::b},
    Field<double>{"c", &RunConfig::c},           Field<double>{"z0", &RunConfig::z0},
    Field<double>{"lambda", &RunConfig::lambda}, Field<double>{"mu", &RunConfig::mu},
    Field<double>{"r0", &RunConfig::r0},         Field<double>{"r0_prime", &RunConfig::r0_prime},
    Field<double>{"f0", &RunConfig::f0},         Field<double>{"f1", &RunConfig::f1},
    Field<double>{"g0", &RunConfig::g0},         Field<double>{"g1", &RunConfig::g1},
    Field<double>{"r1", &RunConfig::r1},         Field<double>{"u0", &RunConfig::u0},
    Field<double>{"u1", &RunConfig::u1},         Field<double>{"u", &RunConfig::u},
    Field<double>{"radius", &RunConfig::radius}, Field<double>{"tol", &RunConfig::tol},
    Field<double>{"horizon", &RunConfig::horizon}, Field<double>{"threshold", &RunConfig::threshold},
};

constexpr std::array kIntFields{
    Field<int>{"periods", &RunConfig::periods},         Field<int>{"samples", &RunConfig::samples},
    Field<int>{"phi_samples", &RunConfig::phi_samples}, Field<int>{"harmonics", &RunConfig::harmonics},
    Field<int>{"v_samples", &RunConfig::v_samples},
};

constexpr std::array kStringFields{
    Field<std::string>{"surface", &RunConfig::surface},
    Field<std::string>{"center_law", &RunConfig::center_law},
    Field<std::string>{"output_dir", &RunConfig::output_dir},
};

// ---------------------------------------------------------------------------
// Defaults and validation

template <class T>
void set_default(std::optional<T>& field, T value) {
  if (!field) field = value;
}

void rot_defaults(RunConfig& c) {
  set_default(c.a, 2.0);
  set_default(c.b, -2.0);
  set_default(c.c, 1.0);
  set_default(c.z0, 3.0);
  set_default(c.periods, 3);
  set_default(c.tol, 1e-10);
  set_default(c.samples, 2000);
  set_default(c.phi_samples, 64);
}

void parab_defaults(RunConfig& c) {
  set_default(c.a, 0.5);
  set_default(c.b, -1.0);
  set_default(c.c, 1.0);
  set_default(c.z0, 1.0);
  set_default(c.tol, 1e-10);
  set_default(c.horizon, 1e3);
  set_default(c.samples, 4000);
  set_default(c.phi_samples, 16);
}

void riemann_defaults(RunConfig& c) {
  set_default(c.lambda, 1.0);
  set_default(c.mu, 0.0);
  set_default(c.r0, 1.0);
  set_default(c.r0_prime, 0.0);
  set_default(c.u0, -0.8);
  set_default(c.u1, 0.8);
  set_default(c.tol, 1e-13);
  set_default(c.samples, 40);
  set_default(c.center_law, std::string("first"));
}

void cone_defaults(RunConfig& c) {
  set_default(c.f0, 0.0);
  set_default(c.f1, 0.3);
  set_default(c.g0, 0.0);
  set_default(c.g1, 0.4);
  set_default(c.r0, 1.0);
  set_default(c.r1, 0.5);
  set_default(c.u0, 0.0);
  set_default(c.u1, 1.0);
  set_default(c.samples, 40);
}

void sphere_defaults(RunConfig& c) {
  set_default(c.radius, 1.0);
  set_default(c.u0, -0.9 * *c.radius);
  set_default(c.u1, 0.9 * *c.radius);
  set_default(c.samples, 40);
}

void surface_defaults(RunConfig& c) {
  const std::string& s = *c.surface;
  if (s == "rot") rot_defaults(c);
  else if (s == "parab") parab_defaults(c);
  else if (s == "riemann") riemann_defaults(c);
  else if (s == "cone") cone_defaults(c);
  else if (s == "sphere") sphere_defaults(c);
  else throw UsageError("unknown surface '" + s + "' (expected rot, parab, riemann, cone or sphere)");
}

RunConfig with_defaults(RunConfig c) {
  const std::string& cmd = c.command;
  if (cmd == "rot-r3 integrate" || cmd == "rot-r3 report") {
    rot_defaults(c);
  } else if (cmd == "parab-h3 integrate" || cmd == "parab-h3 classify") {
    parab_defaults(c);
  } else if (cmd == "cyclic riemann") {
    riemann_defaults(c);
  } else if (cmd == "cyclic cone") {
    cone_defaults(c);
  } else if (cmd == "cyclic coeffs") {
    set_default(c.surface, std::string("sphere"));
    if (*c.surface == "rot" || *c.surface == "parab")
      throw UsageError("cyclic coeffs takes --surface sphere, cone or riemann");
    surface_defaults(c);
    set_default(c.u, 0.5 * (*c.u0 + *c.u1));
    set_default(c.harmonics, 12);
    set_default(c.v_samples, 64);
    const std::string& s = *c.surface;
    if (s == "sphere") {
      set_default(c.a, 2.0 / *c.radius);
      set_default(c.b, 0.0);
      set_default(c.c, 2.0 / *c.radius);
    } else if (s == "cone") {
      set_default(c.a, 0.0);
      set_default(c.b, 1.0);
      set_default(c.c, 0.0);
    } else {
      set_default(c.a, 1.0);
      set_default(c.b, 0.0);
      set_default(c.c, 0.0);
    }
    set_default(c.threshold, s == "riemann" ? 1e-6 : 1e-8);
  } else if (cmd == "mesh export") {
    set_default(c.surface, std::string("rot"));
    surface_defaults(c);
    set_default(c.phi_samples, 64);
  } else if (cmd == "figures reproduce") {
    set_default(c.tol, 1e-10);
  } else if (cmd.empty()) {
    throw UsageError("no command given; expected one of: rot-r3 integrate|report, parab-h3 integrate|classify, "
                     "cyclic riemann|cone|coeffs, mesh export, figures reproduce");
  } else {
    throw UsageError("unknown command '" + cmd + "'");
  }
  return c;
}

void validate(const RunConfig& c) {
  for (const auto& f : kDoubleFields)
    if (const auto& v = c.*f.member; v && !std::isfinite(*v))
      throw UsageError(std::string("--") + f.name + " must be a finite number");
  auto at_least = [](const std::optional<int>& v, int lo, const char* name) {
    if (v && *v < lo) throw UsageError(std::string("--") + name + " must be at least " + std::to_string(lo));
  };
  at_least(c.periods, 1, "periods");
  at_least(c.samples, 2, "samples");
  at_least(c.phi_samples, 3, "phi-samples");
  at_least(c.harmonics, 1, "harmonics");
  at_least(c.v_samples, 5, "v-samples");
  if (c.tol && !(*c.tol > 0.0 && *c.tol < 1.0)) throw UsageError("--tol must lie in (0, 1)");
  if (c.horizon && !(*c.horizon > 0.0)) throw UsageError("--horizon must be positive");
  if (c.threshold && !(*c.threshold > 0.0)) throw UsageError("--threshold must be positive");
  if (c.center_law && *c.center_law != "first" && *c.center_law != "second")
    throw UsageError("--center-law must be 'first' or 'second'");
}

bool is_usage_kind(ErrorKind k) {
  return k == ErrorKind::InvalidParams || k == ErrorKind::OutOfScopeParams || k == ErrorKind::NonPositiveRadius ||
         k == ErrorKind::NotCircleCase || k == ErrorKind::Io;
}

// ---------------------------------------------------------------------------
// Output

class Job {
 public:
  Job(fs::path dir, RunResult& result) : dir_(std::move(dir)), result_(result) {}

  void write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream f(p, std::ios::binary);
    f << content;
    if (!f) throw Error(ErrorKind::Io, "cannot write " + p.string());
    result_.artifacts.push_back(p);
    result_.report["artifacts"].push_back(name);
  }

  template <class Fn>
  void write_with(const std::string& name, Fn&& fill) {
    std::ostringstream out;
    fill(out);
    write(name, out.str());
  }

 private:
  fs::path dir_;
  RunResult& result_;
};

json verdict_block(const std::map<std::string, bool>& verdicts) {
  json v = json::object();
  for (const auto& [k, ok] : verdicts) v[k] = ok;
  return v;
}

json point_list(const std::vector<double>& xs) { return json(xs); }

WeingartenParams normalized(const RunConfig& c) {
  const WeingartenParams p{*c.a, *c.b, *c.c};
  if (p.c == 0.0) throw UsageError("c must be non-zero for this relation");
  return p.normalized();
}

// ---------------------------------------------------------------------------
// Commands

using Verdicts = std::map<std::string, bool>;

struct Outcome {
  json results;
  Verdicts verdicts;
};

json rot_summary(const rot::HyperbolicProfile& prof, const rot::FirstIntegralReport& fi,
                 const rot::BoundsReport& bnd, const rot::PeriodicityReport& per, const rot::StructureReport& st) {
  json r;
  r["params"] = {{"a", prof.params.a}, {"b", prof.params.b}, {"c", prof.params.c}, {"z0", prof.z0}};
  r["periods"] = prof.n_periods;
  r["T"] = prof.T;
  r["T1"] = prof.T1;
  r["T2"] = prof.T2;
  r["T3"] = prof.T3;
  r["theta_prime0"] = prof.samples.front().theta_prime;
  r["first_integral_residual"] = fi.max_first_integral;
  r["closed_form_deviation"] = fi.max_closed_form_deviation;
  r["bounds"] = {{"eta", bnd.bounds.eta},
                 {"delta2", bnd.bounds.delta2},
                 {"eta2", bnd.bounds.eta2},
                 {"M", bnd.bounds.M},
                 {"M_corrected", bnd.bounds.M_valid},
                 {"max_theta_prime", bnd.max_theta_prime},
                 {"min_numerator", bnd.min_numerator},
                 {"violations", bnd.violations.size()},
                 {"max_excess_over_corrected", bnd.max_theta_prime_excess_valid}};
  r["periodicity"] = {{"xT", per.xT},
                      {"z_T_defect", per.z_T_defect},
                      {"translation_defect", per.translation_defect},
                      {"samples", per.n_samples}};
  json xs = json::array();
  for (const auto& si : st.intersections) xs.push_back({{"s1", si.s1}, {"s2", si.s2}, {"x", si.x}, {"z", si.z}});
  r["self_intersections"] = xs;
  r["self_intersection_count"] = st.intersections.size();
  r["self_intersections_per_period"] = st.intersections_per_period;
  return r;
}

Outcome cmd_rot(const RunConfig& c, Job& job, bool full) {
  const auto p = normalized(c);
  const auto prof = rot::integrate_profile(p, *c.z0, *c.periods, *c.tol, *c.samples);
  const auto fi = rot::first_integral_residual(prof);
  const auto bnd = rot::theta_prime_bounds_check(prof, false);
  const auto per = rot::periodicity_check(prof);
  const auto st = rot::structure_report(prof);

  Outcome o;
  o.results = rot_summary(prof, fi, bnd, per, st);
  o.verdicts = {
      {"first_integral", fi.max_first_integral < 1e-8},
      {"closed_form", fi.max_closed_form_deviation < 1e-8},
      {"theta_prime_bound", bnd.violations.empty()},
      {"period_closure", per.z_T_defect < 1e-6},
      {"translation", per.translation_defect < 1e-6},
      {"self_intersections", prof.n_periods >= 2 ? st.self_intersecting_each_period : !st.intersections.empty()},
  };
  job.write_with("rot_curve.csv", [&](std::ostream& out) { rot::write_curve_csv(out, prof); });
  if (!full) return o;

  const auto surf = rot::revolve(prof, static_cast<std::size_t>(*c.phi_samples));
  const auto grid = geom::SampleGrid::uniform(surf.patch.domain, 200, 24);
  const auto field = geom::weingarten_residual(surf.patch, prof.params, grid);
  o.results["structure"] = {{"monotonicity_ok", st.monotonicity_ok},
                            {"z_maxima", point_list(st.z_maxima)},
                            {"z_minima", point_list(st.z_minima)},
                            {"vertical_points", point_list(st.vertical_points)},
                            {"min_K_on_max_arcs", st.min_K_on_max_arcs},
                            {"max_K_on_min_arcs", st.max_K_on_min_arcs},
                            {"symmetry_defect", st.symmetry_defect}};
  o.results["surface_residual_mesh"] = surf.max_residual;
  o.results["surface_residual_grid"] = field.max_abs;
  o.verdicts["monotonicity"] = st.monotonicity_ok;
  o.verdicts["extrema"] = st.extrema_ok;
  o.verdicts["vertical_points"] = st.vertical_points_ok;
  o.verdicts["curvature_sign"] = st.k_sign_ok;
  o.verdicts["symmetry"] = st.symmetry_defect < 1e-7;
  o.verdicts["surface_relation"] = surf.max_residual < 1e-6 && field.max_abs < 1e-6;
  job.write_with("rot_surface_residual.csv", [&](std::ostream& out) { geom::write_residual_csv(out, field); });
  return o;
}

parab::ParabolicProfile parab_profile(const RunConfig& c, double a, double b) {
  parab::IntegrateOptions opts;
  opts.tol = *c.tol;
  opts.horizon = *c.horizon;
  opts.samples = static_cast<std::size_t>(*c.samples);
  return parab::integrate_parabolic(a, b, *c.z0, opts);
}

std::pair<double, double> parab_ab(const RunConfig& c) {
  const auto p = normalized(c);
  return {p.a, p.b};
}

json classification_json(const parab::ParabClassification& cls, const parab::ParabolicProfile& prof,
                         const parab::Corroboration& cor) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json r;
  r["params"] = {{"a", cls.a}, {"b", cls.b}, {"c", 1.0}, {"z0", cls.z0}};
  r["label"] = std::string(parab::to_string(cls.label));
  r["theta_prime0"] = cls.theta_prime0;
  r["thresholds"] = {{"low", cls.threshold_low},
                     {"high", cls.threshold_high},
                     {"a_plus_2b", cls.a_plus_2b},
                     {"a_minus_2b", cls.a_minus_2b},
                     {"circle_discriminant", cls.circle_discriminant}};
  r["theta1"] = opt(cls.theta1);
  r["alternate_angle_residual"] = opt(cls.alternate_angle_residual);
  r["termination"] = {{"expected", std::string(parab::to_string(cls.expected_end))},
                      {"observed", std::string(parab::to_string(prof.end))},
                      {"s_bar", prof.s_bar},
                      {"detail", cor.detail}};
  r["corroborated"] = cor.ok;
  return r;
}

Outcome cmd_parab_classify(const RunConfig& c, Job&) {
  const auto [a, b] = parab_ab(c);
  const auto cls = parab::classify(a, b, *c.z0);
  const auto prof = parab_profile(c, a, b);
  const auto cor = parab::corroborate(cls, prof);
  return {classification_json(cls, prof, cor), {{"corroborated", cor.ok}}};
}

Outcome cmd_parab_integrate(const RunConfig& c, Job& job) {
  const auto [a, b] = parab_ab(c);
  const auto cls = parab::classify(a, b, *c.z0);
  const auto prof = parab_profile(c, a, b);
  const auto cor = parab::corroborate(cls, prof);
  const auto inv = parab::check_invariants(prof, cls);
  const auto id = parab::second_derivative_residual(prof);
  const auto hc = parab::hyperbolic_curvature_check(prof);
  const bool circle = cls.label == parab::CaseLabel::EuclideanCircle;

  Outcome o;
  o.results = classification_json(cls, prof, cor);
  o.results["half_turns"] = point_list(prof.half_turns);
  o.results["invariants"] = {{"z_positive", inv.z_positive},
                             {"relation_residual", inv.max_relation_residual},
                             {"theta_monotone", inv.theta_monotone},
                             {"mirror_defect", inv.mirror_defect}};
  o.results["second_derivative_identity"] = {
      {"max_abs", id.max_abs}, {"used", id.used}, {"excluded", id.excluded}};
  o.results["hyperbolic_curvature"] = {{"relation_residual", hc.max_residual},
                                       {"relation_residual_extrinsic_K", hc.max_residual_extrinsic},
                                       {"conformal_mismatch", hc.max_conformal_mismatch}};
  o.verdicts = {
      {"corroborated", cor.ok},
      {"z_positive", inv.z_positive},
      {"relation", inv.max_relation_residual < 1e-9},
      {"theta_monotone", inv.theta_monotone},
      {"mirror", inv.mirror_defect < 1e-7},
      {"second_derivative_identity", id.max_abs < (circle ? 1e-6 : 1e-5)},
      {"hyperbolic_relation", hc.max_residual < 1e-8},
  };
  if (inv.translation_defect) {
    o.results["invariants"]["translation_defect"] = *inv.translation_defect;
    o.verdicts["translation"] = *inv.translation_defect < 1e-6;
  }
  if (inv.concave) {
    o.results["invariants"]["concave"] = *inv.concave;
    o.verdicts["concave"] = *inv.concave;
  }
  if (inv.lower_bound_margin) {
    o.results["invariants"]["lower_bound_margin"] = *inv.lower_bound_margin;
    o.verdicts["lower_bound"] = *inv.lower_bound_margin > -1e-8;
  }
  if (inv.upper_bound_margin) {
    o.results["invariants"]["upper_bound_margin"] = *inv.upper_bound_margin;
    o.verdicts["upper_bound"] = *inv.upper_bound_margin > -1e-8;
  }
  if (circle) {
    const auto circ = parab::circle_solution(a, b, *c.z0);
    o.results["circle"] = {{"center_x", circ.center_x}, {"center_z", circ.center_z}, {"radius", circ.radius},
                           {"clipped", circ.clipped},   {"max_distance", circ.max_distance}};
    o.verdicts["circle_distance"] = circ.max_distance < 1e-8;
  }
  job.write_with("parab_curve.csv", [&](std::ostream& out) { parab::write_curve_csv(out, prof); });
  return o;
}

cyclic::RiemannExample riemann_from(const RunConfig& c) {
  const auto law = *c.center_law == "second" ? cyclic::CenterLaw::SecondDerivative : cyclic::CenterLaw::FirstDerivative;
  return cyclic::riemann_example(*c.lambda, *c.mu, *c.r0, *c.r0_prime, *c.u0, *c.u1, law, *c.tol);
}

cyclic::CyclicSurfaceSpec cone_from(const RunConfig& c) {
  return cyclic::generalized_cone(*c.f0, *c.f1, *c.g0, *c.g1, *c.r0, *c.r1, *c.u0, *c.u1);
}

geom::ResidualResult residual_field(const cyclic::CyclicSurfaceSpec& spec, const WeingartenParams& p, int n) {
  const auto patch = cyclic::cyclic_patch(spec);
  const auto nn = static_cast<std::size_t>(n);
  return geom::weingarten_residual(patch, p, geom::SampleGrid::uniform(patch.domain, nn, nn));
}

Outcome cmd_riemann(const RunConfig& c, Job& job) {
  const auto ex = riemann_from(c);
  const auto field = residual_field(ex.spec, {1, 0, 0}, *c.samples);
  const auto e = cyclic::field_extrema(field.field);
  const auto id = cyclic::riemann_identity(ex);
  Outcome o;
  o.results = {{"lambda", ex.lambda},
               {"mu", ex.mu},
               {"center_law", *c.center_law},
               {"max_abs_H", e.max_abs_H},
               {"identity_residual", id.max_identity_residual},
               {"conserved_drift", id.max_conserved_drift},
               {"r_end", {ex.spec.r(ex.spec.u0).value, ex.spec.r(ex.spec.u1).value}}};
  o.verdicts = {{"minimal", e.max_abs_H < 1e-6}, {"r_identity", id.max_identity_residual < 1e-8}};
  job.write_with("cyclic_riemann_residual.csv", [&](std::ostream& out) { geom::write_residual_csv(out, field); });
  return o;
}

Outcome cmd_cone(const RunConfig& c, Job& job) {
  const auto spec = cone_from(c);
  const auto field = residual_field(spec, {0, 1, 0}, *c.samples);
  const auto e = cyclic::field_extrema(field.field);
  Outcome o;
  o.results = {{"max_abs_K", e.max_abs_K}, {"max_abs_H", e.max_abs_H}};
  o.verdicts = {{"flat", e.max_abs_K < 1e-9}};
  job.write_with("cyclic_cone_residual.csv", [&](std::ostream& out) { geom::write_residual_csv(out, field); });
  return o;
}

cyclic::CyclicSurfaceSpec cyclic_spec(const RunConfig& c) {
  const std::string& s = *c.surface;
  if (s == "sphere") return cyclic::sphere_slice(*c.radius, *c.u0, *c.u1);
  if (s == "cone") return cone_from(c);
  return riemann_from(c).spec;
}

Outcome cmd_coeffs(const RunConfig& c, Job&) {
  const WeingartenParams p{*c.a, *c.b, *c.c};
  const auto tc = cyclic::trig_coefficients(cyclic_spec(c), p, *c.u, static_cast<std::size_t>(*c.harmonics),
                                            static_cast<std::size_t>(*c.v_samples));
  const bool ok = tc.max_abs < *c.threshold;
  Outcome o;
  o.results = {{"surface", *c.surface},
               {"params", {{"a", p.a}, {"b", p.b}, {"c", p.c}}},
               {"u", tc.u},
               {"N", tc.A.size() - 1},
               {"n_samples", tc.n_samples},
               {"A", tc.A},
               {"B", tc.B},
               {"max_abs", tc.max_abs},
               {"reconstruction_error", tc.reconstruction_error},
               {"threshold", *c.threshold},
               {"verdict", ok ? "vanishing" : "non-vanishing"}};
  o.verdicts = {{"coefficients_vanish", ok}};
  return o;
}

Outcome cmd_mesh(const RunConfig& c, Job& job) {
  const std::string& s = *c.surface;
  const auto cols = static_cast<std::size_t>(*c.phi_samples);
  io::Mesh mesh;
  Outcome o;
  if (s == "rot") {
    const auto prof = rot::integrate_profile(normalized(c), *c.z0, *c.periods, *c.tol, *c.samples);
    const auto surf = rot::revolve(prof, cols);
    mesh = surf.mesh;
    o.results["max_residual"] = surf.max_residual;
    o.verdicts["surface_relation"] = surf.max_residual < 1e-6;
  } else if (s == "parab") {
    const auto [a, b] = parab_ab(c);
    const auto prof = parab_profile(c, a, b);
    const auto patch = parab::parab_patch(prof);
    const std::size_t stride = std::max<std::size_t>(1, prof.samples.size() / 400);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < prof.samples.size(); i += stride) rows.push_back(i);
    if (rows.back() != prof.samples.size() - 1) rows.push_back(prof.samples.size() - 1);
    mesh = io::grid_mesh(rows.size(), cols, false, [&](std::size_t i, std::size_t j) {
      const double t = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(cols - 1);
      return patch.position(prof.samples[rows[i]].s, t);
    });
  } else {
    mesh = cyclic::cyclic_mesh(cyclic_spec(c), static_cast<std::size_t>(*c.samples), cols);
  }
  o.results["surface"] = s;
  o.results["vertices"] = mesh.vertices.size();
  o.results["quads"] = mesh.quads.size();
  o.verdicts["non_empty"] = !mesh.vertices.empty() && !mesh.quads.empty();
  job.write_with(s + ".obj", [&](std::ostream& out) { io::write_obj(out, mesh, s + " surface"); });
  return o;
}

struct FigureJob {
  std::string file;
  std::string csv;
  json summary;
  bool pass = false;
};

FigureJob rot_figure(double tol) {
  const WeingartenParams p{2.0, -2.0, 1.0};
  const auto prof = rot::integrate_profile(p, 3.0, 3, tol);
  const auto fi = rot::first_integral_residual(prof);
  const auto per = rot::periodicity_check(prof);
  const auto st = rot::structure_report(prof);
  FigureJob f;
  f.file = "rot_periodic_profile.csv";
  std::ostringstream out;
  rot::write_curve_csv(out, prof);
  f.csv = out.str();
  f.pass = fi.max_first_integral < 1e-8 && per.translation_defect < 1e-6 && st.self_intersecting_each_period;
  f.summary = {{"params", {{"a", 2.0}, {"b", -2.0}, {"c", 1.0}, {"z0", 3.0}}},
               {"T", prof.T},
               {"self_intersection_count", st.intersections.size()},
               {"pass", f.pass}};
  return f;
}

FigureJob parab_figure(double b, double tol) {
  const auto cls = parab::classify(0.5, b, 1.0);
  parab::IntegrateOptions opts;
  opts.tol = tol;
  const auto prof = parab::integrate_parabolic(0.5, b, 1.0, opts);
  const auto cor = parab::corroborate(cls, prof);
  FigureJob f;
  std::string label(parab::to_string(cls.label));
  std::string snake;
  for (char ch : label) {
    if (std::isupper(static_cast<unsigned char>(ch)) && !snake.empty()) snake += '_';
    snake += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  f.file = "parab_" + snake + ".csv";
  std::ostringstream out;
  parab::write_curve_csv(out, prof);
  f.csv = out.str();
  f.pass = cor.ok;
  f.summary = {{"params", {{"a", 0.5}, {"b", b}, {"c", 1.0}, {"z0", 1.0}}},
               {"label", label},
               {"termination", std::string(parab::to_string(prof.end))},
               {"s_bar", prof.s_bar},
               {"pass", f.pass}};
  return f;
}

Outcome cmd_figures(const RunConfig& c, Job& job) {
  const double tol = *c.tol;
  std::vector<std::future<FigureJob>> jobs;
  jobs.push_back(std::async(std::launch::async, rot_figure, tol));
  for (double b : {-1.0, -0.8, -0.2, 0.3}) jobs.push_back(std::async(std::launch::async, parab_figure, b, tol));
  Outcome o;
  o.results["figures"] = json::array();
  for (auto& fut : jobs) {
    auto f = fut.get();
    job.write(f.file, f.csv);
    f.summary["file"] = f.file;
    o.results["figures"].push_back(f.summary);
    o.verdicts[f.file] = f.pass;
  }
  return o;
}

using Command = std::function<Outcome(const RunConfig&, Job&)>;

const std::map<std::string, std::pair<std::string, Command>>& command_table() {
  static const std::map<std::string, std::pair<std::string, Command>> table{
      {"rot-r3 integrate", {"rot_integrate", [](const RunConfig& c, Job& j) { return cmd_rot(c, j, false); }}},
      {"rot-r3 report", {"rot_report", [](const RunConfig& c, Job& j) { return cmd_rot(c, j, true); }}},
      {"parab-h3 integrate", {"parab_integrate", cmd_parab_integrate}},
      {"parab-h3 classify", {"parab_classify", cmd_parab_classify}},
      {"cyclic riemann", {"cyclic_riemann", cmd_riemann}},
      {"cyclic cone", {"cyclic_cone", cmd_cone}},
      {"cyclic coeffs", {"cyclic_coeffs", cmd_coeffs}},
      {"mesh export", {"mesh_export", cmd_mesh}},
      {"figures reproduce", {"figures", cmd_figures}},
  };
  return table;
}

fs::path output_dir(const RunConfig& c) {
  if (const char* env = std::getenv("WEINGARTEN_OUT"); env && *env) return env;
  return c.output_dir.value_or(".");
}

// ---------------------------------------------------------------------------
// Argument parsing

template <class T>
void add_flag(CLI::App* app, const std::string& name, std::optional<T>& dst, const std::string& desc) {
  if (app->get_option_no_throw("--" + name)) return;
  app->add_option_function<T>("--" + name, [&dst](const T& v) { dst = v; }, desc);
}

void rot_flags(CLI::App* app, RunConfig& f) {
  add_flag(app, "a", f.a, "coefficient of H");
  add_flag(app, "b", f.b, "coefficient of K");
  add_flag(app, "c", f.c, "right-hand side (the relation is divided by it)");
  add_flag(app, "z0", f.z0, "initial height");
  add_flag(app, "periods", f.periods, "number of periods to integrate");
  add_flag(app, "tol", f.tol, "relative tolerance");
  add_flag(app, "samples", f.samples, "samples per period");
  add_flag(app, "phi-samples", f.phi_samples, "samples around the axis");
}

void parab_flags(CLI::App* app, RunConfig& f) {
  add_flag(app, "a", f.a, "coefficient of H");
  add_flag(app, "b", f.b, "coefficient of K");
  add_flag(app, "c", f.c, "right-hand side (the relation is divided by it)");
  add_flag(app, "z0", f.z0, "initial height");
  add_flag(app, "tol", f.tol, "relative tolerance");
  add_flag(app, "horizon", f.horizon, "largest arc length to integrate");
  add_flag(app, "samples", f.samples, "curve samples");
}

void riemann_flags(CLI::App* app, RunConfig& f) {
  add_flag(app, "lambda", f.lambda, "x-drift of the circle centres");
  add_flag(app, "mu", f.mu, "y-drift of the circle centres");
  add_flag(app, "r0", f.r0, "radius at u = 0");
  add_flag(app, "r0-prime", f.r0_prime, "r'(0)");
  add_flag(app, "u0", f.u0, "lower end of the u-range");
  add_flag(app, "u1", f.u1, "upper end of the u-range");
  add_flag(app, "tol", f.tol, "integration tolerance");
  add_flag(app, "samples", f.samples, "grid points per direction");
  add_flag(app, "center-law", f.center_law, "'first' (f' = lambda r^2) or 'second' (f'' = lambda r^2)");
}

void cone_flags(CLI::App* app, RunConfig& f) {
  add_flag(app, "f0", f.f0, "centre x at u = 0");
  add_flag(app, "f1", f.f1, "centre x slope");
  add_flag(app, "g0", f.g0, "centre y at u = 0");
  add_flag(app, "g1", f.g1, "centre y slope");
  add_flag(app, "r0", f.r0, "radius at u = 0");
  add_flag(app, "r1", f.r1, "radius slope");
  add_flag(app, "u0", f.u0, "lower end of the u-range");
  add_flag(app, "u1", f.u1, "upper end of the u-range");
  add_flag(app, "samples", f.samples, "grid points per direction");
}

void sphere_flags(CLI::App* app, RunConfig& f) {
  add_flag(app, "radius", f.radius, "sphere radius");
  add_flag(app, "u0", f.u0, "lower slicing height");
  add_flag(app, "u1", f.u1, "upper slicing height");
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> list = [] {
    std::vector<std::string> v;
    for (const auto& [name, entry] : command_table()) v.push_back(name);
    return v;
  }();
  return list;
}

json to_json(const RunConfig& cfg) {
  json j = json::object();
  if (!cfg.command.empty()) j["command"] = cfg.command;
  for (const auto& f : kDoubleFields)
    if (const auto& v = cfg.*f.member) j[f.name] = *v;
  for (const auto& f : kIntFields)
    if (const auto& v = cfg.*f.member) j[f.name] = *v;
  for (const auto& f : kStringFields)
    if (const auto& v = cfg.*f.member) j[f.name] = *v;
  if (cfg.seed) j["seed"] = *cfg.seed;
  return j;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  RunConfig c;
  for (const auto& [key, value] : j.items()) {
    auto wrong = [&key = key](const char* what) { return UsageError("config key '" + key + "' must be " + what); };
    if (key == "command") {
      if (!value.is_string()) throw wrong("a string");
      c.command = value.get<std::string>();
      continue;
    }
    if (key == "seed") {
      if (!value.is_number_unsigned()) throw wrong("a non-negative integer");
      c.seed = value.get<std::uint64_t>();
      continue;
    }
    bool known = false;
    for (const auto& f : kDoubleFields)
      if (key == f.name) {
        if (!value.is_number()) throw wrong("a number");
        const double v = value.get<double>();
        if (!std::isfinite(v)) throw wrong("finite");
        c.*f.member = v;
        known = true;
      }
    for (const auto& f : kIntFields)
      if (key == f.name) {
        if (!value.is_number_integer()) throw wrong("an integer");
        c.*f.member = value.get<int>();
        known = true;
      }
    for (const auto& f : kStringFields)
      if (key == f.name) {
        if (!value.is_string()) throw wrong("a string");
        c.*f.member = value.get<std::string>();
        known = true;
      }
    if (!known) throw UsageError("unknown config key '" + key + "'");
  }
  return c;
}

RunConfig merge(RunConfig base, const RunConfig& over) {
  if (!over.command.empty()) base.command = over.command;
  for (const auto& f : kDoubleFields)
    if (over.*f.member) base.*f.member = over.*f.member;
  for (const auto& f : kIntFields)
    if (over.*f.member) base.*f.member = over.*f.member;
  for (const auto& f : kStringFields)
    if (over.*f.member) base.*f.member = over.*f.member;
  if (over.seed) base.seed = over.seed;
  return base;
}

RunResult run(const RunConfig& cfg, std::ostream& log) {
  RunResult result;
  RunConfig resolved;
  try {
    validate(cfg);
    resolved = with_defaults(cfg);
    validate(resolved);
  } catch (const UsageError& e) {
    log << "usage error: " << e.what() << "\n";
    result.exit_code = Usage;
    return result;
  }

  const fs::path dir = output_dir(resolved);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    log << "usage error: cannot create output directory " << dir << "\n";
    result.exit_code = Usage;
    return result;
  }

  const auto& [stem, fn] = command_table().at(resolved.command);
  RunConfig shown = resolved;
  shown.output_dir.reset();  // the report must not depend on where it is written
  result.report = {{"schema_version", 1}, {"command", resolved.command}, {"config", to_json(shown)}};
  result.report["artifacts"] = json::array();
  Job job(dir, result);
  try {
    Outcome o = fn(resolved, job);
    bool pass = true;
    for (const auto& [k, ok] : o.verdicts) pass = pass && ok;
    result.report["results"] = std::move(o.results);
    result.report["verdicts"] = verdict_block(o.verdicts);
    result.report["pass"] = pass;
    result.exit_code = pass ? Pass : VerdictFailure;
  } catch (const UsageError& e) {
    log << "usage error: " << e.what() << "\n";
    result.exit_code = Usage;
    return result;
  } catch (const Error& e) {
    if (is_usage_kind(e.kind())) {
      log << "usage error: " << e.what() << "\n";
      result.exit_code = Usage;
      return result;
    }
    result.report["results"] = json::object();
    result.report["verdicts"] = json::object();
    result.report["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    result.report["pass"] = false;
    result.exit_code = VerdictFailure;
  }
  const std::string report_name = stem + ".json";
  result.report["artifacts"].push_back(report_name);
  const std::string text = io::dump_json(result.report) + "\n";
  std::ofstream f(dir / report_name, std::ios::binary);
  f << text;
  if (!f) {
    log << "error: cannot write " << (dir / report_name) << "\n";
    result.exit_code = Usage;
    return result;
  }
  result.artifacts.push_back(dir / report_name);
  for (const auto& [k, ok] : result.report["verdicts"].items())
    log << (ok.get<bool>() ? "PASS " : "FAIL ") << k << "\n";
  if (result.report.contains("error")) log << "FAIL " << result.report["error"]["message"].get<std::string>() << "\n";
  for (const auto& p : result.artifacts) log << "wrote " << p.string() << "\n";
  return result;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical workbench for linear Weingarten surfaces aH + bK = c", "weingarten"};
  app.require_subcommand(0, 1);
  RunConfig flags;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  add_flag(&app, "out", flags.output_dir, "output directory (WEINGARTEN_OUT overrides it)");
  add_flag(&app, "seed", flags.seed, "seed recorded with the run");

  struct Leaf {
    CLI::App* app;
    std::string command;
  };
  std::vector<Leaf> leaves;
  auto group = [&](const std::string& name, const std::string& desc) {
    auto* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    auto* l = parent->add_subcommand(name, desc);
    l->fallthrough();
    leaves.push_back({l, parent->get_name() + " " + name});
    return l;
  };

  auto* rot = group("rot-r3", "surfaces of revolution in Euclidean space");
  rot_flags(leaf(rot, "integrate", "integrate the profile and check conservation and periodicity"), flags);
  rot_flags(leaf(rot, "report", "full report including the revolved surface"), flags);

  auto* parab = group("parab-h3", "parabolic surfaces in hyperbolic space");
  parab_flags(leaf(parab, "integrate", "integrate the profile and check its invariants"), flags);
  parab_flags(leaf(parab, "classify", "case label, thresholds and boundary angle"), flags);

  auto* cyc = group("cyclic", "surfaces foliated by circles in parallel planes");
  riemann_flags(leaf(cyc, "riemann", "Riemann example from the r-equation"), flags);
  cone_flags(leaf(cyc, "cone", "generalized cone"), flags);
  auto* coeffs = leaf(cyc, "coeffs", "Fourier coefficients of the relation residual on one circle");
  add_flag(coeffs, "surface", flags.surface, "sphere, cone or riemann");
  add_flag(coeffs, "a", flags.a, "coefficient of H");
  add_flag(coeffs, "b", flags.b, "coefficient of K");
  add_flag(coeffs, "c", flags.c, "right-hand side");
  add_flag(coeffs, "u", flags.u, "height of the circle");
  add_flag(coeffs, "harmonics", flags.harmonics, "highest harmonic N");
  add_flag(coeffs, "v-samples", flags.v_samples, "samples on the circle (at least 2N + 3)");
  add_flag(coeffs, "threshold", flags.threshold, "largest coefficient accepted as zero");
  riemann_flags(coeffs, flags);
  cone_flags(coeffs, flags);
  sphere_flags(coeffs, flags);

  auto* mesh = leaf(group("mesh", "mesh output"), "export", "write an OBJ mesh of a surface");
  add_flag(mesh, "surface", flags.surface, "rot, parab, riemann, cone or sphere");
  rot_flags(mesh, flags);
  parab_flags(mesh, flags);
  riemann_flags(mesh, flags);
  cone_flags(mesh, flags);
  sphere_flags(mesh, flags);

  auto* figs = leaf(group("figures", "batch jobs"), "reproduce", "plot data for the reference curves");
  add_flag(figs, "tol", flags.tol, "relative tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Pass : Usage;
  }
  for (const auto& l : leaves)
    if (l.app->parsed()) flags.command = l.command;

  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) {
      err << "usage error: cannot read config file " << config_path << "\n";
      return Usage;
    }
    try {
      cfg = config_from_json(json::parse(f));
    } catch (const json::exception& e) {
      err << "usage error: config file " << config_path << ": " << e.what() << "\n";
      return Usage;
    } catch (const UsageError& e) {
      err << "usage error: " << config_path << ": " << e.what() << "\n";
      return Usage;
    }
  }
  cfg = merge(cfg, flags);
  std::ostringstream log;
  const auto result = run(cfg, log);
  (result.exit_code == Usage ? err : out) << log.str();
  return result.exit_code;
}

}  // namespace weingarten::cli
