#include "weingarten/rot_r3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "weingarten/error.hpp"

namespace weingarten::rot {

namespace {

constexpr double kPi = std::numbers::pi;

enum Component : std::size_t { X = 0, Z = 1, THETA = 2 };

ode::IvpSpec profile_ivp(const WeingartenParams& p, double z0, double tol) {
  ode::IvpSpec spec;
  spec.dimension = 3;
  spec.rhs = [p](double, std::span<const double> y, std::span<double> dy) {
    dy[X] = std::cos(y[THETA]);
    dy[Z] = std::sin(y[THETA]);
    dy[THETA] = theta_prime(p, y[Z], y[THETA]);
  };
  spec.y0 = {0.0, z0, 0.0};
  spec.rtol = tol;
  spec.atol = tol * 1e-2;
  // The continuous extension is one order lower than the steps, so cap the
  // step at a fraction of the smallest radius of curvature (at the extrema),
  // scaled like the interpolation error, h^5 ~ tol.
  const double turn = std::max(std::abs(theta_prime(p, z0, 0.0)),
                               std::abs(theta_prime(p, closed_form_height(p, z0, kPi), kPi)));
  spec.max_step = 0.05 * std::pow(tol / 1e-10, 0.2) / turn;
  return spec;
}

ode::Guard denominator_guard(const WeingartenParams& p) {
  return [p](double, std::span<const double> y) { return p.a * y[Z] + 2.0 * p.b * std::cos(y[THETA]) > 0.0; };
}

ProfilePoint make_point(const WeingartenParams& p, double s, std::span<const double> y) {
  return {s, y[X], y[Z], y[THETA], theta_prime(p, y[Z], y[THETA])};
}

}  // namespace

double height_function(const WeingartenParams& p, double z) { return z * z - p.a * z - p.b; }

double theta_prime(const WeingartenParams& p, double z, double theta) {
  const double c = std::cos(theta);
  return (p.a * c - 2.0 * z) / (p.a * z + 2.0 * p.b * c);
}

double closed_form_height(const WeingartenParams& p, double z0, double theta) {
  const double c = std::cos(theta);
  const double rad = (p.a * p.a + 4.0 * p.b) * c * c + 4.0 * height_function(p, z0);
  return 0.5 * (p.a * c + std::sqrt(std::max(rad, 0.0)));
}

double first_integral(const WeingartenParams& p, double z0, double z, double theta) {
  const double c = std::cos(theta);
  return z * z - p.a * z * c - p.b * c * c - height_function(p, z0);
}

BoundConstants bound_constants(const WeingartenParams& p, double z0) {
  BoundConstants b;
  const double fz0 = height_function(p, z0);
  b.eta = -2.0 * std::sqrt(fz0);
  b.delta2 = p.a * std::sqrt(fz0);
  b.eta2 = -std::sqrt((p.a * p.a + 4.0 * p.b) + 4.0 * height_function(p, -2.0 * p.b / p.a));
  b.M = b.eta2 / b.delta2;
  b.delta2_valid = b.delta2 - 0.5 * (p.a * p.a + 4.0 * p.b);
  b.M_valid = b.eta2 / b.delta2_valid;
  return b;
}

void check_admissible(const WeingartenParams& p, double z0) {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::InvalidParams, m); };
  if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.c) || !std::isfinite(z0))
    fail("parameters must be finite");
  if (p.c != 1.0) fail("c must be normalized to 1 (use WeingartenParams::normalized)");
  if (!(p.a > 0.0)) fail("a must be positive");
  if (p.b == 0.0) fail("b must be non-zero");
  if (p.discriminant_class() != DiscriminantClass::Hyperbolic) fail("relation is not hyperbolic: a^2 + 4b >= 0");
  if (!(z0 > -2.0 * p.b / p.a)) {
    std::ostringstream msg;
    msg << "initial height z0=" << z0 << " must exceed -2b/a=" << -2.0 * p.b / p.a;
    fail(msg.str());
  }
  if (!(height_function(p, z0) > 0.0)) fail("z0^2 - a z0 - b must be positive");
}

ProfilePoint HyperbolicProfile::at(double s) const {
  const auto y = trajectory.at(s);
  return make_point(params, s, y);
}

std::vector<ProfilePoint> HyperbolicProfile::check_points() const {
  std::vector<ProfilePoint> out = samples;
  out.reserve(samples.size() + trajectory.size());
  for (std::size_t i = 0; i < trajectory.size(); ++i)
    out.push_back(make_point(params, trajectory.grid()[i], trajectory.state(i)));
  return out;
}

HyperbolicProfile integrate_profile(const WeingartenParams& p, double z0, int n_periods, double tol,
                                    int samples_per_period) {
  check_admissible(p, z0);
  if (n_periods < 1) throw Error(ErrorKind::InvalidParams, "n_periods must be at least 1");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidParams, "tolerance must be positive");
  if (samples_per_period < 8) throw Error(ErrorKind::InvalidParams, "samples_per_period must be at least 8");

  HyperbolicProfile prof;
  prof.params = p;
  prof.z0 = z0;
  prof.n_periods = n_periods;
  prof.bounds = bound_constants(p, z0);

  auto spec = profile_ivp(p, z0, tol);
  const int quarters = 4 * n_periods;
  for (int k = 1; k <= quarters; ++k) {
    const double target = -k * kPi / 2.0;
    spec.events.push_back({"quarter", [target](double, std::span<const double> y) { return y[THETA] - target; },
                           ode::Crossing::Falling, k == quarters});
  }
  // theta' <= M < 0, so theta reaches -2 pi n before this.
  const double s_max = 1.05 * 2.0 * kPi * n_periods / std::abs(prof.bounds.M) + 1.0;
  prof.trajectory = ode::integrate(spec, s_max, denominator_guard(p));

  if (prof.trajectory.termination() == ode::Termination::GuardViolation) {
    throw Error(ErrorKind::GuardViolation, "denominator a z + 2b cos(theta) vanished along the profile");
  }
  if (prof.trajectory.termination() != ode::Termination::EventStop) {
    throw Error(ErrorKind::InvariantViolated, "theta did not reach -2 pi n within the bound implied by M");
  }
  for (const auto& ev : prof.trajectory.events()) prof.quarter_times.push_back(ev.s);
  if (prof.quarter_times.size() != static_cast<std::size_t>(quarters)) {
    throw Error(ErrorKind::InvariantViolated, "missing quarter-turn events");
  }
  prof.T1 = prof.quarter_times[0];
  prof.T2 = prof.quarter_times[1];
  prof.T3 = prof.quarter_times[2];
  prof.T = prof.quarter_times[3];

  const double s_end = prof.trajectory.s_end();
  const std::size_t n = static_cast<std::size_t>(samples_per_period) * static_cast<std::size_t>(n_periods);
  prof.samples.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double s = i == n ? s_end : s_end * static_cast<double>(i) / static_cast<double>(n);
    prof.samples.push_back(prof.at(s));
  }

  for (const auto& pt : prof.check_points()) {
    if (!(pt.theta_prime < 0.0)) {
      std::ostringstream msg;
      msg << "theta' = " << pt.theta_prime << " is not negative at s=" << pt.s;
      throw Error(ErrorKind::BoundViolated, msg.str());
    }
  }
  return prof;
}

FirstIntegralReport first_integral_residual(const HyperbolicProfile& prof) {
  FirstIntegralReport r;
  for (const auto& pt : prof.check_points()) {
    r.max_first_integral =
        std::max(r.max_first_integral, std::abs(first_integral(prof.params, prof.z0, pt.z, pt.theta)));
    r.max_closed_form_deviation = std::max(r.max_closed_form_deviation,
                                           std::abs(pt.z - closed_form_height(prof.params, prof.z0, pt.theta)));
  }
  return r;
}

BoundsReport theta_prime_bounds_check(const HyperbolicProfile& prof, bool strict) {
  constexpr double slack = 1e-9;
  BoundsReport r;
  r.bounds = prof.bounds;
  r.max_theta_prime = -std::numeric_limits<double>::infinity();
  r.min_numerator = std::numeric_limits<double>::infinity();
  const auto& p = prof.params;
  for (const auto& pt : prof.check_points()) {
    const double num = p.a * std::cos(pt.theta) - 2.0 * pt.z;
    r.max_theta_prime = std::max(r.max_theta_prime, pt.theta_prime);
    r.min_numerator = std::min(r.min_numerator, num);
    r.max_theta_prime_excess_valid = std::max(r.max_theta_prime_excess_valid, pt.theta_prime - r.bounds.M_valid);
    if (pt.theta_prime > r.bounds.M + slack || num < r.bounds.eta - slack) {
      if (strict) {
        std::ostringstream msg;
        msg << "at s=" << pt.s << ": theta'=" << pt.theta_prime << " (M=" << r.bounds.M << "), numerator=" << num
            << " (eta=" << r.bounds.eta << ")";
        throw Error(ErrorKind::BoundViolated, msg.str());
      }
      r.violations.push_back(pt);
    }
  }
  return r;
}

PeriodicityReport periodicity_check(const HyperbolicProfile& prof, std::size_t n_samples) {
  PeriodicityReport r;
  r.T = prof.T;
  r.xT = prof.trajectory.at(prof.T, X);
  r.z_T_defect = std::abs(prof.trajectory.at(prof.T, Z) - prof.z0);
  r.n_samples = n_samples;
  const double span = prof.trajectory.s_end() - prof.T;
  if (span <= 0.0 || n_samples == 0) return r;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double s = span * (static_cast<double>(i) + 0.5) / static_cast<double>(n_samples);
    const auto a = prof.trajectory.at(s);
    const auto b = prof.trajectory.at(s + prof.T);
    r.x_defect = std::max(r.x_defect, std::abs(b[X] - a[X] - r.xT));
    r.z_defect = std::max(r.z_defect, std::abs(b[Z] - a[Z]));
    r.theta_defect = std::max(r.theta_defect, std::abs(b[THETA] - a[THETA] + 2.0 * kPi));
  }
  r.translation_defect = std::max({r.x_defect, r.z_defect, r.theta_defect});
  return r;
}

std::vector<SelfIntersection> self_intersections(const HyperbolicProfile& prof) {
  const auto& pts = prof.samples;
  struct Seg {
    std::size_t i;
    double xmin, xmax;
  };
  std::vector<Seg> segs;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    segs.push_back({i, std::min(pts[i].x, pts[i + 1].x), std::max(pts[i].x, pts[i + 1].x)});
  std::sort(segs.begin(), segs.end(), [](const Seg& l, const Seg& r) { return l.xmin < r.xmin; });

  auto refine = [&](double s1, double s2) {
    const double lo = prof.trajectory.s_begin(), hi = prof.trajectory.s_end();
    for (int it = 0; it < 30; ++it) {
      const auto a = prof.trajectory.at(s1);
      const auto b = prof.trajectory.at(s2);
      const double fx = a[X] - b[X], fz = a[Z] - b[Z];
      if (std::hypot(fx, fz) < 1e-14) break;
      const double c1 = std::cos(a[THETA]), n1 = std::sin(a[THETA]);
      const double c2 = std::cos(b[THETA]), n2 = std::sin(b[THETA]);
      const double det = -c1 * n2 + c2 * n1;
      if (std::abs(det) < 1e-14) break;
      const double d1 = (-n2 * fx + c2 * fz) / det;
      const double d2 = (-n1 * fx + c1 * fz) / det;
      s1 = std::clamp(s1 - d1, lo, hi);
      s2 = std::clamp(s2 - d2, lo, hi);
    }
    return std::pair{s1, s2};
  };

  std::vector<SelfIntersection> out;
  for (std::size_t a = 0; a < segs.size(); ++a) {
    for (std::size_t b = a + 1; b < segs.size() && segs[b].xmin <= segs[a].xmax; ++b) {
      std::size_t i = segs[a].i, j = segs[b].i;
      if (i > j) std::swap(i, j);
      if (j == i + 1) continue;
      const double px = pts[i].x, pz = pts[i].z;
      const double rx = pts[i + 1].x - px, rz = pts[i + 1].z - pz;
      const double qx = pts[j].x, qz = pts[j].z;
      const double sx = pts[j + 1].x - qx, sz = pts[j + 1].z - qz;
      const double denom = rx * sz - rz * sx;
      if (denom == 0.0) continue;
      const double t = ((qx - px) * sz - (qz - pz) * sx) / denom;
      const double u = ((qx - px) * rz - (qz - pz) * rx) / denom;
      if (t < 0.0 || t >= 1.0 || u < 0.0 || u >= 1.0) continue;
      const double s1 = pts[i].s + t * (pts[i + 1].s - pts[i].s);
      const double s2 = pts[j].s + u * (pts[j + 1].s - pts[j].s);
      const auto [r1, r2] = refine(s1, s2);
      const auto y = prof.trajectory.at(r1);
      out.push_back({std::min(r1, r2), std::max(r1, r2), y[X], y[Z]});
    }
  }
  std::sort(out.begin(), out.end(), [](const SelfIntersection& l, const SelfIntersection& r) {
    return l.s1 < r.s1 || (l.s1 == r.s1 && l.s2 < r.s2);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const SelfIntersection& l, const SelfIntersection& r) {
                          return std::abs(l.s1 - r.s1) < 1e-8 && std::abs(l.s2 - r.s2) < 1e-8;
                        }),
            out.end());
  return out;
}

namespace {

bool strictly_monotone(const HyperbolicProfile& prof, double s0, double s1, std::size_t comp, bool increasing) {
  constexpr int n = 64;
  double prev = prof.trajectory.at(s0, comp);
  for (int k = 1; k <= n; ++k) {
    const double cur = prof.trajectory.at(s0 + (s1 - s0) * k / n, comp);
    if (increasing ? !(cur > prev) : !(cur < prev)) return false;
    prev = cur;
  }
  return true;
}

// Root of g on [lo, hi] where g changes sign.
double refine_root(const HyperbolicProfile& prof, double lo, double hi, const std::function<double(std::span<const double>)>& g) {
  return ode::find_root([&](double s) { return g(prof.trajectory.at(s)); }, lo, hi, 1e-13);
}

}  // namespace

StructureReport structure_report(const HyperbolicProfile& prof) {
  StructureReport r;
  const double T = prof.T;
  const auto& q = prof.quarter_times;
  const auto& pts = prof.samples;

  // Monotonicity table.
  r.monotonicity_ok = true;
  for (int k = 0; k < prof.n_periods; ++k) {
    const double b0 = k == 0 ? 0.0 : q[4 * k - 1];
    const double b1 = q[4 * k], b2 = q[4 * k + 1], b3 = q[4 * k + 2], b4 = q[4 * k + 3];
    std::array<bool, 4> row = {
        strictly_monotone(prof, b0, b1, X, true) && strictly_monotone(prof, b0, b1, Z, false),
        strictly_monotone(prof, b1, b2, X, false) && strictly_monotone(prof, b1, b2, Z, false),
        strictly_monotone(prof, b2, b3, X, false) && strictly_monotone(prof, b2, b3, Z, true),
        strictly_monotone(prof, b3, b4, X, true) && strictly_monotone(prof, b3, b4, Z, true),
    };
    r.monotonicity.push_back(row);
    for (bool ok : row) r.monotonicity_ok = r.monotonicity_ok && ok;
  }

  // Extrema of z: sign changes of z' = sin(theta) between samples, plus s = 0.
  auto sin_theta = [](std::span<const double> y) { return std::sin(y[THETA]); };
  auto cos_theta = [](std::span<const double> y) { return std::cos(y[THETA]); };
  if (pts.size() > 1 && pts[1].z < pts[0].z) r.z_maxima.push_back(0.0);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double d0 = pts[i].z - pts[i - 1].z, d1 = pts[i + 1].z - pts[i].z;
    if (d0 > 0 && d1 <= 0) r.z_maxima.push_back(refine_root(prof, pts[i - 1].s, pts[i + 1].s, sin_theta));
    if (d0 < 0 && d1 >= 0) r.z_minima.push_back(refine_root(prof, pts[i - 1].s, pts[i + 1].s, sin_theta));
  }
  if (pts.size() > 1 && pts[pts.size() - 2].z < pts.back().z) r.z_maxima.push_back(pts.back().s);
  r.z_maxima.erase(std::unique(r.z_maxima.begin(), r.z_maxima.end(),
                               [](double l, double rr) { return std::abs(l - rr) < 1e-9; }),
                   r.z_maxima.end());

  const double spacing = pts.size() > 1 ? pts[1].s - pts[0].s : T;
  const double loc_tol = std::max(1e-8, 1e-6 * T);
  r.extrema_ok = r.z_maxima.size() == static_cast<std::size_t>(prof.n_periods) + 1 &&
                 r.z_minima.size() == static_cast<std::size_t>(prof.n_periods);
  if (r.extrema_ok) {
    for (int k = 0; k <= prof.n_periods; ++k) {
      const double expected = k == 0 ? 0.0 : q[4 * k - 1];
      r.extrema_ok = r.extrema_ok && std::abs(r.z_maxima[static_cast<std::size_t>(k)] - expected) < loc_tol;
    }
    for (int k = 0; k < prof.n_periods; ++k) {
      r.extrema_ok = r.extrema_ok && std::abs(r.z_minima[static_cast<std::size_t>(k)] - q[4 * k + 1]) < loc_tol;
    }
  }
  (void)spacing;

  // Vertical points: zeros of x' = cos(theta).
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double c0 = std::cos(pts[i].theta), c1 = std::cos(pts[i + 1].theta);
    if ((c0 > 0) != (c1 > 0) && c0 != 0.0) r.vertical_points.push_back(refine_root(prof, pts[i].s, pts[i + 1].s, cos_theta));
  }
  std::vector<double> extrema = r.z_maxima;
  extrema.insert(extrema.end(), r.z_minima.begin(), r.z_minima.end());
  std::sort(extrema.begin(), extrema.end());
  r.vertical_points_ok = extrema.size() >= 2;
  for (std::size_t i = 0; i + 1 < extrema.size(); ++i) {
    const auto count = std::count_if(r.vertical_points.begin(), r.vertical_points.end(),
                                     [&](double s) { return s > extrema[i] && s < extrema[i + 1]; });
    r.vertical_points_ok = r.vertical_points_ok && count == 1;
  }

  // Self-intersections. The loops close across adjacent periods, so a crossing
  // counts for every period whose arc passes through it.
  r.intersections = self_intersections(prof);
  r.intersections_per_period.assign(static_cast<std::size_t>(prof.n_periods), 0);
  auto period_of = [&](double s) {
    return static_cast<std::size_t>(std::clamp(std::floor(s / T), 0.0, prof.n_periods - 1.0));
  };
  for (const auto& si : r.intersections) {
    const auto k1 = period_of(si.s1), k2 = period_of(si.s2);
    ++r.intersections_per_period[k1];
    if (k2 != k1) ++r.intersections_per_period[k2];
  }
  r.self_intersecting_each_period =
      std::all_of(r.intersections_per_period.begin(), r.intersections_per_period.end(), [](int c) { return c >= 1; });

  // Sign of K on arcs between vertical points, via the revolved surface.
  const auto patch = revolve_curve(
      [&prof](double s) {
        const auto pt = prof.at(s);
        return CurveJet{pt.x, pt.z, pt.theta, pt.theta_prime};
      },
      prof.trajectory.s_begin(), prof.trajectory.s_end());
  std::vector<double> bounds = {prof.trajectory.s_begin()};
  bounds.insert(bounds.end(), r.vertical_points.begin(), r.vertical_points.end());
  bounds.push_back(prof.trajectory.s_end());
  r.min_K_on_max_arcs = std::numeric_limits<double>::infinity();
  r.max_K_on_min_arcs = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a + 1 < bounds.size(); ++a) {
    const double lo = bounds[a], hi = bounds[a + 1];
    auto inside = [&](double s) { return s >= lo && s <= hi; };
    const bool has_max = std::any_of(r.z_maxima.begin(), r.z_maxima.end(), inside);
    const bool has_min = std::any_of(r.z_minima.begin(), r.z_minima.end(), inside);
    if (has_max == has_min) continue;
    for (const auto& pt : pts) {
      if (pt.s <= lo + 1e-6 || pt.s >= hi - 1e-6) continue;
      const double K = geom::curvatures(patch, pt.s, 0.7).K;
      if (has_max) r.min_K_on_max_arcs = std::min(r.min_K_on_max_arcs, K);
      if (has_min) r.max_K_on_min_arcs = std::max(r.max_K_on_min_arcs, K);
    }
  }
  r.k_sign_ok = r.min_K_on_max_arcs > 0.0 && r.max_K_on_min_arcs < 0.0;

  // Mirror symmetry about x = 0 by integrating the same problem backward.
  auto spec = profile_ivp(prof.params, prof.z0, 1e-11);
  const auto back = ode::integrate(spec, -T, denominator_guard(prof.params));
  double dx = 0.0, dz = 0.0;
  if (back.termination() == ode::Termination::ReachedEnd) {
    constexpr int n = 200;
    for (int k = 1; k <= n; ++k) {
      const double s = T * k / n;
      dx = std::max(dx, std::abs(back.at(-s, X) + prof.trajectory.at(s, X)));
      dz = std::max(dz, std::abs(back.at(-s, Z) - prof.trajectory.at(s, Z)));
    }
    r.symmetry_defect = dx + dz;
  } else {
    r.symmetry_defect = std::numeric_limits<double>::infinity();
  }
  return r;
}

geom::ParamSurfacePatch revolve_curve(std::function<CurveJet(double)> curve, double s0, double s1) {
  geom::ParamSurfacePatch patch;
  patch.domain = {s0, s1, 0.0, 2.0 * kPi};
  patch.jet = [curve = std::move(curve)](double s, double phi) {
    const CurveJet c = curve(s);
    if (!(c.z > 0.0)) {
      std::ostringstream msg;
      msg << "profile height z=" << c.z << " at s=" << s << " is not positive";
      throw Error(ErrorKind::DegeneratePoint, msg.str());
    }
    const double ct = std::cos(c.theta), st = std::sin(c.theta);
    const double cp = std::cos(phi), sp = std::sin(phi);
    geom::SurfaceJet j;
    j.x = {c.x, c.z * cp, c.z * sp};
    j.xu = {ct, st * cp, st * sp};
    j.xv = {0.0, -c.z * sp, c.z * cp};
    j.xuu = {-st * c.theta_prime, ct * c.theta_prime * cp, ct * c.theta_prime * sp};
    j.xuv = {0.0, -st * sp, st * cp};
    j.xvv = {0.0, -c.z * cp, -c.z * sp};
    return j;
  };
  return patch;
}

RevolvedSurface revolve(const HyperbolicProfile& prof, std::size_t phi_samples) {
  if (phi_samples < 3) throw Error(ErrorKind::InvalidParams, "phi_samples must be at least 3");
  RevolvedSurface out;
  out.patch = revolve_curve(
      [&prof](double s) {
        const auto pt = prof.at(s);
        return CurveJet{pt.x, pt.z, pt.theta, pt.theta_prime};
      },
      prof.trajectory.s_begin(), prof.trajectory.s_end());

  geom::SampleGrid grid;
  for (const auto& pt : prof.samples) grid.u.push_back(pt.s);
  for (std::size_t j = 0; j < phi_samples; ++j)
    grid.v.push_back(2.0 * kPi * static_cast<double>(j) / static_cast<double>(phi_samples));
  out.max_residual = geom::weingarten_residual(out.patch, prof.params, grid).max_abs;

  out.mesh = io::grid_mesh(grid.u.size(), phi_samples, true, [&](std::size_t i, std::size_t j) {
    const auto& pt = prof.samples[i];
    const double phi = grid.v[j];
    return Eigen::Vector3d(pt.x, pt.z * std::cos(phi), pt.z * std::sin(phi));
  });
  return out;
}

void write_curve_csv(std::ostream& out, const HyperbolicProfile& prof) {
  io::CsvWriter csv(out, {"s", "x", "z", "theta", "theta_prime", "first_integral_residual"});
  for (const auto& pt : prof.samples) {
    csv.row({pt.s, pt.x, pt.z, pt.theta, pt.theta_prime, first_integral(prof.params, prof.z0, pt.z, pt.theta)});
  }
}

}  // namespace weingarten::rot
