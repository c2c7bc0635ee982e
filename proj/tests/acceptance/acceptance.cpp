// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "weingarten/cyclic_r3.hpp"
#include "weingarten/error.hpp"
#include "weingarten/geomcore.hpp"
#include "weingarten/parab_h3.hpp"
#include "weingarten/rot_r3.hpp"

using namespace weingarten;

namespace {

constexpr double kPi = std::numbers::pi;
const WeingartenParams kRef{2.0, -2.0, 1.0};
constexpr double kRefZ0 = 3.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects named checks and formats the first failures.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }

  bool ok() const { return failures_.empty(); }

  std::string summary() const {
    std::ostringstream out;
    out << total_ - failures_.size() << "/" << total_ << " checks";
    for (const auto& n : notes_) out << "; " << n;
    for (std::size_t i = 0; i < failures_.size() && i < 6; ++i) out << "; failed: " << failures_[i];
    if (failures_.size() > 6) out << "; ... " << failures_.size() - 6 << " more";
    return out.str();
  }

 private:
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

const rot::HyperbolicProfile& reference_profile(double* elapsed = nullptr) {
  static double t = 0.0;
  static const rot::HyperbolicProfile prof = [] {
    const auto t0 = Clock::now();
    auto p = rot::integrate_profile(kRef, kRefZ0, 3, 1e-10);
    t = seconds_since(t0);
    return p;
  }();
  if (elapsed) *elapsed = t;
  return prof;
}

Checks criterion_1() {
  Checks c;
  double elapsed = 0.0;
  const auto& prof = reference_profile(&elapsed);
  c.note("integration " + fmt("%.3f s", elapsed));
  c.expect(elapsed < 1.0, "integration time");

  const auto fi = rot::first_integral_residual(prof);
  c.note("first integral " + fmt("%.2e", fi.max_first_integral));
  c.expect(fi.max_first_integral < 1e-8, "first integral");

  const double zT = prof.trajectory.at(prof.T, 1);
  c.note("|z(T) - 3| " + fmt("%.2e", std::abs(zT - kRefZ0)));
  c.expect(std::abs(zT - kRefZ0) < 1e-6, "z(T)");

  const auto per = rot::periodicity_check(prof, 50);
  c.note("translation " + fmt("%.2e", per.translation_defect));
  c.expect(per.translation_defect < 1e-6 && per.n_samples == 50, "translation defect");

  const auto st = rot::structure_report(prof);
  for (std::size_t k = 0; k < st.intersections_per_period.size(); ++k)
    c.expect(st.intersections_per_period[k] >= 1, "self-intersection in period " + std::to_string(k + 1));
  c.note(std::to_string(st.intersections.size()) + " self-intersections");

  // One maximum at s = kT and one minimum at s = kT + T2 per period.
  c.expect(st.z_maxima.size() == 4 && st.z_minima.size() == 3, "extremum count");
  for (std::size_t k = 0; k < st.z_maxima.size(); ++k)
    c.expect(std::abs(st.z_maxima[k] - static_cast<double>(k) * prof.T) < 1e-6, "maximum position");
  for (std::size_t k = 0; k < st.z_minima.size(); ++k)
    c.expect(std::abs(st.z_minima[k] - (static_cast<double>(k) * prof.T + prof.T2)) < 1e-6, "minimum position");
  c.expect(st.monotonicity_ok && st.monotonicity.size() == 3, "monotonicity table");
  for (const auto& row : st.monotonicity)
    for (bool q : row) c.expect(q, "quarter monotonicity");
  return c;
}

Checks criterion_2() {
  Checks c;
  const auto& prof = reference_profile();
  const double M = prof.bounds.M;
  // eta2 / delta2 evaluated by hand: -sqrt(a^2 + 4b + 4 f(-2b/a)) / (a sqrt(f(z0))) with f(t) = t^2 - at - b.
  const double a = kRef.a, b = kRef.b;
  const double f_star = 4.0 - 2.0 * 2.0 + 2.0;  // f(1) at a = 2, b = -2
  const double f_z0 = kRefZ0 * kRefZ0 - a * kRefZ0 - b;
  const double M_formula = -std::sqrt(a * a + 4.0 * b + 4.0 * f_star) / (a * std::sqrt(f_z0));
  c.note("M " + fmt("%.17g", M));
  c.expect(std::abs(M + 1.0 / std::sqrt(5.0)) < 1e-12, "M = -1/sqrt(5)");
  c.expect(std::abs(M - M_formula) < 1e-12, "M against the formula");
  const auto r = rot::theta_prime_bounds_check(prof, false);
  c.note("max theta' " + fmt("%.6f", r.max_theta_prime));
  c.expect(r.violations.empty(), "theta' <= M at every sample");
  const double tp0 = prof.samples.front().theta_prime;
  c.expect(std::abs(tp0 + 2.0) < 1e-9, "theta'(0) = -2");
  return c;
}

Checks criterion_3() {
  Checks c;
  const auto surf = rot::revolve(reference_profile(), 64);
  const auto grid = geom::SampleGrid::uniform(surf.patch.domain, 300, 32);
  const auto res = geom::weingarten_residual(surf.patch, kRef, grid);
  c.note("mesh residual " + fmt("%.2e", surf.max_residual) + ", interior grid " + fmt("%.2e", res.max_abs));
  c.expect(surf.max_residual < 1e-6, "mesh vertices");
  c.expect(res.max_abs < 1e-6, "interior grid");
  return c;
}

Checks criterion_4() {
  Checks c;
  const std::pair<double, parab::CaseLabel> cases[] = {
      {-1.0, parab::CaseLabel::CompleteConcaveGraph},
      {-0.8, parab::CaseLabel::IncompleteGraph},
      {-0.2, parab::CaseLabel::PeriodicComplete},
      {0.3, parab::CaseLabel::IncompleteNonGraph},
  };
  const double a = 0.5, root = std::sqrt(1.0 - a * a);
  for (const auto& [b, want] : cases) {
    const auto cls = parab::classify(a, b, 1.0);
    const auto prof = parab::integrate_parabolic(a, b, 1.0);
    const auto cor = parab::corroborate(cls, prof);
    const std::string tag = "b=" + fmt("%g", b);
    c.expect(cls.label == want, tag + " label " + std::string(parab::to_string(cls.label)));
    c.expect(cor.ok, tag + " corroboration: " + cor.detail);
    c.expect(std::abs(cls.threshold_low + (1.0 + root) / 2.0) < 1e-12, tag + " lower threshold");
    c.expect(std::abs(cls.threshold_high + (1.0 - root) / 2.0) < 1e-12, tag + " upper threshold");
    c.note(tag + " " + std::string(parab::to_string(prof.end)));
  }
  return c;
}

Checks criterion_5() {
  Checks c;
  const double t = parab::boundary_angle(0.5, -1.0);
  c.note("theta1 " + fmt("%.17g", t));
  c.expect(std::abs(t + kPi / 3.0) < 1e-9, "theta1 = -pi/3");
  c.expect(std::abs(0.5 * std::cos(t) + std::sin(t) * std::sin(t) - 1.0) < 1e-12, "angle equation");
  return c;
}

Checks criterion_6() {
  Checks c;
  const double a = 0.8, b = -0.2;
  const double disc = a * a + 4.0 * b * b + 4.0 * b;
  c.expect(std::abs(disc) < 1e-12, "a^2 + 4b^2 + 4b = 0");
  const auto circ = parab::circle_solution(a, b, 1.0);
  c.note("radius " + fmt("%.17g", circ.radius) + ", max distance " + fmt("%.2e", circ.max_distance));
  c.expect(std::abs(circ.radius - 1.0) < 1e-12, "radius 1");
  c.expect(circ.max_distance < 1e-8, "distance to the circle");
  return c;
}

Checks criterion_7() {
  Checks c;
  for (double b : {-1.0, -0.8, -0.2, 0.3}) {
    const auto r = parab::second_derivative_residual(parab::integrate_parabolic(0.5, b, 1.0));
    c.note("b=" + fmt("%g", b) + " " + fmt("%.1e", r.max_abs));
    c.expect(r.max_abs < 1e-5 && r.used > 100, "identity at b=" + fmt("%g", b));
  }
  const auto r = parab::second_derivative_residual(parab::integrate_parabolic(0.8, -0.2, 1.0));
  c.note("circle " + fmt("%.1e", r.max_abs));
  c.expect(r.max_abs < 1e-6 && r.used > 100, "identity on the circle");
  return c;
}

cyclic::FieldExtrema extrema(const cyclic::CyclicSurfaceSpec& spec) {
  const auto patch = cyclic::cyclic_patch(spec);
  return cyclic::field_extrema(geom::curvature_field(patch, geom::SampleGrid::uniform(patch.domain, 60, 60)));
}

Checks criterion_8() {
  Checks c;
  const auto cone = cyclic::generalized_cone(0, 0.3, 0, 0.4, 1, 0.5, 0, 1);
  const double k_cone = extrema(cone).max_abs_K;
  c.note("cone max|K| " + fmt("%.1e", k_cone));
  c.expect(k_cone < 1e-9, "cone flat");

  for (auto [lambda, mu] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.5}}) {
    const auto ex = cyclic::riemann_example(lambda, mu, 1.0, 0.0, -0.8, 0.8);
    const double h = extrema(ex.spec).max_abs_H;
    const auto id = cyclic::riemann_identity(ex);
    const std::string tag = "(" + fmt("%g", lambda) + "," + fmt("%g", mu) + ")";
    c.note(tag + " max|H| " + fmt("%.1e", h) + " identity " + fmt("%.1e", id.max_identity_residual));
    c.expect(h < 1e-6, tag + " minimal");
    c.expect(id.max_identity_residual < 1e-8, tag + " r-identity");
  }

  const auto sphere = cyclic::sphere_slice(1.0, -0.9, 0.9);
  double worst = 0.0;
  for (double u : {-0.6, 0.0, 0.3, 0.7}) {
    const auto tc = cyclic::trig_coefficients(sphere, {2.0, 0.0, 2.0}, u, 12, 64);
    worst = std::max(worst, tc.max_abs);
  }
  c.note("sphere coefficients " + fmt("%.1e", worst));
  c.expect(worst < 1e-8, "sphere coefficients");

  const auto bent = cyclic::add_cubic(cone, cyclic::Component::R, {0.0, 0.0, 0.1, 0.0});
  const double k_bent = extrema(bent).max_abs_K;
  c.note("perturbed cone max|K| " + fmt("%.3f", k_bent));
  c.expect(k_bent > 1e-3, "negative control");
  return c;
}

struct SweepCase {
  std::string tag;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
};

SweepCase rot_case(double a, double b, double z0) {
  SweepCase r;
  char tag[96];
  std::snprintf(tag, sizeof tag, "rot(%.4f,%.4f,%.4f)", a, b, z0);
  r.tag = tag;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) r.failures.push_back(r.tag + " " + what);
  };
  try {
    const WeingartenParams p{a, b, 1.0};
    const auto prof = rot::integrate_profile(p, z0, 3);
    const auto fi = rot::first_integral_residual(prof);
    expect(fi.max_first_integral < 1e-8, "first integral");
    expect(fi.max_closed_form_deviation < 1e-8, "closed form");
    bool decreasing = true;
    for (const auto& s : prof.samples) decreasing = decreasing && s.theta_prime < 0.0;
    expect(decreasing, "theta decreasing");
    const auto bnd = rot::theta_prime_bounds_check(prof, false);
    if (!bnd.violations.empty()) {
      char note[160];
      std::snprintf(note, sizeof note, "%s max theta' %.4f above M %.4f (corrected bound %.4f)", r.tag.c_str(),
                    bnd.max_theta_prime, bnd.bounds.M, bnd.bounds.M_valid);
      r.notes.push_back(note);
    }
    expect(bnd.violations.empty(), "theta' <= M");
    expect(bnd.max_theta_prime_excess_valid <= 1e-9, "theta' <= corrected M");
    const auto per = rot::periodicity_check(prof);
    expect(per.translation_defect < 1e-6, "periodicity");
    expect(rot::revolve(prof, 16).max_residual < 1e-6, "revolved surface");
  } catch (const Error& e) {
    r.failures.push_back(r.tag + " threw " + e.what());
  }
  return r;
}

SweepCase parab_case(double a, double b) {
  SweepCase r;
  char tag[64];
  std::snprintf(tag, sizeof tag, "parab(%.4f,%.4f)", a, b);
  r.tag = tag;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) r.failures.push_back(r.tag + " " + what);
  };
  try {
    const auto cls = parab::classify(a, b, 1.0);
    const auto prof = parab::integrate_parabolic(a, b, 1.0);
    expect(parab::corroborate(cls, prof).ok, "corroboration");
    const auto inv = parab::check_invariants(prof, cls);
    expect(inv.z_positive, "z > 0");
    expect(inv.max_relation_residual < 1e-9, "relation");
    expect(inv.theta_monotone, "theta monotone");
    expect(inv.mirror_defect < 1e-7, "mirror");
    if (inv.translation_defect) expect(*inv.translation_defect < 1e-6, "translation");
    if (inv.concave) expect(*inv.concave, "concave");
    if (inv.lower_bound_margin) expect(*inv.lower_bound_margin > -1e-8, "lower bound");
    if (inv.upper_bound_margin) expect(*inv.upper_bound_margin > -1e-8, "upper bound");
    if (cls.label == parab::CaseLabel::IncompleteGraph)
      expect(prof.end == parab::EndCause::CurvatureBlowUp && prof.samples.back().z > 0.0, "finite end above z = 0");
  } catch (const Error& e) {
    r.failures.push_back(r.tag + " threw " + e.what());
  }
  return r;
}

Checks criterion_9(Clock::time_point suite_start) {
  Checks c;
  // Admissible rotational triples: a > 0, a^2 + 4b < 0, z0 > -2b/a. Also z0 > a,
  // since otherwise the profile reaches the axis and there is no surface.
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> ua(0.5, 3.0), ub(0.3, 2.0), uz(0.1, 2.0);
  std::vector<std::future<SweepCase>> jobs;
  for (int i = 0; i < 20; ++i) {
    const double a = ua(rng);
    const double b = -(a * a / 4.0) * (1.0 + ub(rng));
    const double z0 = std::max(a, -2.0 * b / a) + uz(rng);
    jobs.push_back(std::async(std::launch::async, rot_case, a, b, z0));
  }
  // Classified pairs 0 < a < 1, kept 0.02 away from the case boundaries.
  std::mt19937_64 prng(99);
  std::uniform_real_distribution<double> pa(0.05, 0.95), pb(-1.5, 1.0);
  for (int n = 0; n < 20;) {
    const double a = pa(prng), b = pb(prng);
    const double low = -(1.0 + std::sqrt(1.0 - a * a)) / 2.0;
    if (std::min({std::abs(a + 2.0 * b), std::abs(a - 2.0 * b), std::abs(b - low), std::abs(b)}) < 0.02) continue;
    jobs.push_back(std::async(std::launch::async, parab_case, a, b));
    ++n;
  }
  std::size_t failed_cases = 0;
  for (auto& j : jobs) {
    const auto r = j.get();
    failed_cases += r.failures.empty() ? 0 : 1;
    for (const auto& f : r.failures) c.expect(false, f);
    if (r.failures.empty()) c.expect(true, r.tag);
    for (const auto& n : r.notes) c.note(n);
  }
  c.note(std::to_string(jobs.size() - failed_cases) + "/" + std::to_string(jobs.size()) + " cases clean");
  const double elapsed = seconds_since(suite_start);
  c.note("suite " + fmt("%.1f s", elapsed));
  c.expect(elapsed < 60.0, "suite runtime");
  return c;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const std::vector<std::pair<std::string, std::function<Checks()>>> criteria{
      {"reference rotational profile", criterion_1},
      {"theta' bounds", criterion_2},
      {"revolved surface satisfies the relation", criterion_3},
      {"parabolic classification suite", criterion_4},
      {"boundary angle", criterion_5},
      {"circle case", criterion_6},
      {"second-derivative identity", criterion_7},
      {"cyclic suite", criterion_8},
      {"property sweep", [start] { return criterion_9(start); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checks c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    failed += c.ok() ? 0 : 1;
    std::printf("%s %zu %s: %s\n", c.ok() ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), c.summary().c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
