#include "weingarten/parab_h3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "weingarten/error.hpp"
#include "weingarten/export.hpp"

namespace weingarten::parab {

namespace {

constexpr double kPi = std::numbers::pi;
enum Component : std::size_t { X = 0, Z = 1, THETA = 2 };

// Layer around the blow-up and the ideal boundary where theta' or theta''
// lose relative accuracy.
constexpr double kSingularLayer = 1e-2;
constexpr double kMaxTurning = 1e2;
constexpr double kStencilVariation = 5e-3;

double numerator(double a, double b, double theta) {
  const double s = std::sin(theta);
  return 1.0 - a * std::cos(theta) + b * s * s;
}

double denominator(double a, double b, double theta) { return a + 2.0 * b * std::cos(theta); }

double sign(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

void require_finite(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) throw Error(ErrorKind::InvalidParams, "parameters must be finite");
}

double theta_prime_impl(double a, double b, double z, double theta) {
  return 2.0 * numerator(a, b, theta) / (z * denominator(a, b, theta));
}

ode::IvpSpec flow_spec(double a, double b) {
  ode::IvpSpec spec;
  spec.dimension = 3;
  spec.rhs = [a, b](double, std::span<const double> y, std::span<double> dy) {
    dy[X] = std::cos(y[THETA]);
    dy[Z] = std::sin(y[THETA]);
    dy[THETA] = theta_prime_impl(a, b, y[Z], y[THETA]);
  };
  return spec;
}

ode::IvpSpec profile_spec(double a, double b, double z0, double tol) {
  auto spec = flow_spec(a, b);
  spec.y0 = {0.0, z0, 0.0};
  spec.rtol = tol;
  spec.atol = tol * 1e-2;
  spec.stop_on_underflow = true;
  spec.max_step = 0.05 * std::max(1.0, z0);
  return spec;
}

// theta' never vanishes off the degenerate line, so the numerator keeps its
// initial sign as well as the denominator. Near z = 0 the flow is stiff and a
// trial stage may overshoot; the guard turns that into a shorter step.
ode::Guard profile_guard(double a, double b) {
  const double dsign = sign(a + 2.0 * b);
  const double nsign = sign(numerator(a, b, 0.0));
  return [a, b, dsign, nsign](double, std::span<const double> y) {
    return y[Z] > 0.0 && dsign * denominator(a, b, y[THETA]) > 1e-9 &&
           (nsign == 0.0 || nsign * numerator(a, b, y[THETA]) > 0.0);
  };
}

ParabPoint make_point(double a, double b, double s, std::span<const double> y) {
  ParabPoint p;
  p.s = s;
  p.x = y[X];
  p.z = y[Z];
  p.theta = y[THETA];
  p.theta_prime = theta_prime(a, b, p.z, p.theta);
  p.kappa2 = std::cos(p.theta);
  p.kappa1 = p.z * p.theta_prime + p.kappa2;
  return p;
}

}  // namespace

double theta_prime(double a, double b, double z, double theta) { return theta_prime_impl(a, b, z, theta); }

double relation_residual(double a, double b, double z, double theta, double tp) {
  const double s = std::sin(theta), c = std::cos(theta);
  return (0.5 * a + b * c) * z * tp + a * c - b * s * s - 1.0;
}

double initial_theta_prime(double a, double b, double z0) { return 2.0 / z0 * (1.0 - a) / (a + 2.0 * b); }

double second_derivative_identity(double a, double b, double z, double theta, double tp, double tpp) {
  const double p = 0.5 * a + b * std::cos(theta);
  return -tp * std::sin(theta) * (b * z * tp + p) + p * z * tpp;
}

double analytic_theta_second(double a, double b, double z, double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  const double n = numerator(a, b, theta), d = denominator(a, b, theta);
  const double tp = 2.0 * n / (z * d);
  const double n_s = (a * s + 2.0 * b * s * c) * tp;
  const double d_s = -2.0 * b * s * tp;
  const double zd = z * d;
  return 2.0 * (n_s * zd - n * (s * d + z * d_s)) / (zd * zd);
}

std::string_view to_string(EndCause c) {
  switch (c) {
    case EndCause::Horizon: return "Horizon";
    case EndCause::BoundaryReached: return "BoundaryReached";
    case EndCause::CurvatureBlowUp: return "CurvatureBlowUp";
    case EndCause::Unresolved: return "Unresolved";
  }
  return "?";
}

std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::DegenerateLine: return "DegenerateLine";
    case CaseLabel::EuclideanCircle: return "EuclideanCircle";
    case CaseLabel::CompleteConcaveGraph: return "CompleteConcaveGraph";
    case CaseLabel::IncompleteGraph: return "IncompleteGraph";
    case CaseLabel::PeriodicComplete: return "PeriodicComplete";
    case CaseLabel::IncompleteNonGraph: return "IncompleteNonGraph";
  }
  return "?";
}

ParabPoint ParabolicProfile::at(double s) const { return make_point(a, b, s, trajectory.at(s)); }

ParabolicProfile integrate_parabolic(double a, double b, double z0, const IntegrateOptions& opts) {
  require_finite({a, b, z0, opts.tol, opts.horizon});
  if (!(z0 > 0.0)) throw Error(ErrorKind::InvalidParams, "z0 must be positive (upper half-space)");
  if (a + 2.0 * b == 0.0) throw Error(ErrorKind::InvalidParams, "a + 2b = 0: theta'(0) is undefined");
  if (!(opts.tol > 0.0) || !(opts.horizon > 0.0) || opts.samples < 2)
    throw Error(ErrorKind::InvalidParams, "tolerance, horizon and sample count must be positive");

  ParabolicProfile prof;
  prof.a = a;
  prof.b = b;
  prof.z0 = z0;
  prof.tol = opts.tol;
  prof.theta_prime0 = initial_theta_prime(a, b, z0);

  auto spec = profile_spec(a, b, z0, opts.tol);
  const double dir = sign(prof.theta_prime0);
  if (dir != 0.0) {
    for (int k = 1; k <= opts.max_half_turns; ++k) {
      const double target = dir * k * kPi;
      spec.events.push_back({"half_turn", [target](double, std::span<const double> y) { return y[THETA] - target; },
                             dir > 0 ? ode::Crossing::Rising : ode::Crossing::Falling, false});
    }
  }

  prof.trajectory = ode::integrate(spec, opts.horizon, profile_guard(a, b));
  for (const auto& ev : prof.trajectory.events()) prof.half_turns.push_back(ev.s);
  prof.s_bar = prof.trajectory.s_end();

  const auto last = prof.at(prof.s_bar);
  if (prof.trajectory.termination() == ode::Termination::ReachedEnd) {
    prof.end = EndCause::Horizon;
  } else if (last.z < 1e-6 * std::max(1.0, z0)) {
    prof.end = EndCause::BoundaryReached;
  } else if (std::abs(denominator(a, b, last.theta)) < 1e-3 || std::abs(last.theta_prime) > 1e3) {
    prof.end = EndCause::CurvatureBlowUp;
  } else {
    prof.end = EndCause::Unresolved;
  }

  prof.samples.reserve(opts.samples + 1);
  for (std::size_t i = 0; i <= opts.samples; ++i) {
    const double s =
        i == opts.samples ? prof.s_bar : prof.s_bar * static_cast<double>(i) / static_cast<double>(opts.samples);
    prof.samples.push_back(prof.at(s));
  }

  for (const auto& pt : prof.samples) {
    if (!(pt.z > 0.0)) {
      std::ostringstream msg;
      msg << "z = " << pt.z << " left the half-space at s=" << pt.s;
      throw Error(ErrorKind::InvariantViolated, msg.str());
    }
    if (sign(pt.theta_prime) != dir) {
      std::ostringstream msg;
      msg << "theta' = " << pt.theta_prime << " at s=" << pt.s << " does not keep the sign of theta'(0) = "
          << prof.theta_prime0;
      throw Error(ErrorKind::InvariantViolated, msg.str());
    }
  }
  return prof;
}

double boundary_angle(double a, double b) {
  require_finite({a, b});
  auto g = [a, b](double t) {
    const double s = std::sin(t);
    return a * std::cos(t) - b * s * s - 1.0;
  };
  constexpr int n = 4096;
  double prev_t = 0.0, prev = g(0.0);
  if (prev == 0.0) return 0.0;
  for (int k = 1; k <= n; ++k) {
    const double t = -0.5 * kPi * k / n;
    const double cur = g(t);
    if ((prev < 0) != (cur < 0) || cur == 0.0) return ode::find_root(g, t, prev_t, 1e-15);
    prev_t = t;
    prev = cur;
  }
  std::ostringstream msg;
  msg << "a cos(theta) - b sin^2(theta) = 1 has no root on (-pi/2, 0) for a=" << a << ", b=" << b;
  throw Error(ErrorKind::NoRoot, msg.str());
}

ParabClassification classify(double a, double b, double z0) {
  require_finite({a, b, z0});
  if (!(z0 > 0.0)) throw Error(ErrorKind::InvalidParams, "z0 must be positive (upper half-space)");
  ParabClassification c;
  c.a = a;
  c.b = b;
  c.z0 = z0;
  c.a_plus_2b = a + 2.0 * b;
  c.a_minus_2b = a - 2.0 * b;
  c.circle_discriminant = a * a + 4.0 * b * b + 4.0 * b;
  if (std::abs(a) <= 1.0) {
    const double r = std::sqrt(1.0 - a * a);
    c.threshold_low = -0.5 * (1.0 + r);
    c.threshold_high = -0.5 * (1.0 - r);
  } else {
    c.threshold_low = c.threshold_high = std::numeric_limits<double>::quiet_NaN();
  }
  auto out_of_scope = [&](const std::string& why) {
    std::ostringstream msg;
    msg << "(a, b) = (" << a << ", " << b << "): " << why;
    throw Error(ErrorKind::OutOfScopeParams, msg.str());
  };
  if (c.a_plus_2b == 0.0) out_of_scope("a + 2b = 0 leaves theta'(0) undefined");
  c.theta_prime0 = initial_theta_prime(a, b, z0);

  if (c.theta_prime0 == 0.0) {
    c.label = CaseLabel::DegenerateLine;
    c.expected_end = EndCause::Horizon;
    return c;
  }
  if (std::abs(c.circle_discriminant) < 1e-12 && b != 0.0) {
    c.label = CaseLabel::EuclideanCircle;
    const double k = -(a + 2.0 * b) / (2.0 * b * z0);
    const double lowest = z0 + 1.0 / k - 1.0 / std::abs(k);
    c.expected_end = lowest > 0.0 ? EndCause::Horizon : EndCause::BoundaryReached;
    return c;
  }
  if (!(a > 0.0 && a < 1.0)) out_of_scope("only 0 < a < 1 is classified");
  if (b == 0.0) out_of_scope("b = 0 is excluded");

  if (c.a_plus_2b < 0.0) {
    if (b < c.threshold_low) {
      c.label = CaseLabel::CompleteConcaveGraph;
      c.expected_end = EndCause::BoundaryReached;
      c.theta1 = boundary_angle(a, b);
      const double s = std::sin(*c.theta1);
      c.alternate_angle_residual = 2.0 * std::cos(*c.theta1) - b * s * s;
    } else if (b > c.threshold_low) {
      c.label = CaseLabel::IncompleteGraph;
      c.expected_end = EndCause::CurvatureBlowUp;
    } else {
      out_of_scope("b equals -(1 + sqrt(1 - a^2))/2");
    }
  } else {
    if (c.a_minus_2b > 0.0) {
      c.label = CaseLabel::PeriodicComplete;
      c.expected_end = EndCause::Horizon;
    } else {
      c.label = CaseLabel::IncompleteNonGraph;
      c.expected_end = EndCause::CurvatureBlowUp;
    }
  }
  return c;
}

Corroboration corroborate(const ParabClassification& cls, const ParabolicProfile& prof) {
  Corroboration r;
  r.observed = prof.end;
  const auto last = prof.samples.back();
  std::ostringstream d;
  d << "expected " << to_string(cls.expected_end) << ", observed " << to_string(prof.end) << " at s=" << prof.s_bar;
  bool extra = true;
  switch (cls.label) {
    case CaseLabel::CompleteConcaveGraph:
      extra = cls.theta1 && std::abs(last.theta - *cls.theta1) < 1e-3;
      d << "; final angle " << last.theta;
      break;
    case CaseLabel::IncompleteGraph:
      extra = last.z > 1e-3 * prof.z0 && std::abs(0.5 * prof.a + prof.b * std::cos(last.theta)) < 1e-3;
      d << "; z(s_bar)=" << last.z << ", a/2 + b cos(theta)=" << 0.5 * prof.a + prof.b * std::cos(last.theta);
      break;
    case CaseLabel::PeriodicComplete:
      extra = !prof.half_turns.empty();
      d << "; theta reached pi: " << (extra ? "yes" : "no");
      break;
    case CaseLabel::IncompleteNonGraph:
      extra = last.theta > 0.5 * kPi && std::abs(std::cos(last.theta) + prof.a / (2.0 * prof.b)) < 1e-3;
      d << "; final angle " << last.theta;
      break;
    default:
      break;
  }
  r.ok = prof.end == cls.expected_end && extra;
  r.detail = d.str();
  return r;
}

CircleSolution circle_solution(double a, double b, double z0, double tol) {
  require_finite({a, b, z0});
  if (!(std::abs(a * a + 4.0 * b * b + 4.0 * b) < 1e-12) || b == 0.0) {
    std::ostringstream msg;
    msg << "a^2 + 4b^2 + 4b = " << a * a + 4.0 * b * b + 4.0 * b << " is not zero";
    throw Error(ErrorKind::NotCircleCase, msg.str());
  }
  if (!(z0 > 0.0)) throw Error(ErrorKind::InvalidParams, "z0 must be positive (upper half-space)");
  CircleSolution c;
  c.theta_prime = -(a + 2.0 * b) / (2.0 * b * z0);
  c.radius = 1.0 / std::abs(c.theta_prime);
  c.center_x = 0.0;
  c.center_z = z0 + 1.0 / c.theta_prime;
  c.clipped = c.center_z - c.radius <= 0.0;

  IntegrateOptions opts;
  opts.tol = tol;
  opts.horizon = 2.0 * 2.0 * kPi * c.radius;
  const auto prof = integrate_parabolic(a, b, z0, opts);
  c.arc_length = prof.s_bar;
  auto dist = [&](double x, double z) { return std::abs(std::hypot(x - c.center_x, z - c.center_z) - c.radius); };
  for (const auto& pt : prof.samples) c.max_distance = std::max(c.max_distance, dist(pt.x, pt.z));
  for (std::size_t i = 0; i < prof.trajectory.size(); ++i)
    c.max_distance = std::max(c.max_distance, dist(prof.trajectory.value(i, X), prof.trajectory.value(i, Z)));
  return c;
}

IdentityResidual second_derivative_residual(const ParabolicProfile& prof, double h) {
  IdentityResidual r;
  const double lo = prof.trajectory.s_begin(), hi = prof.trajectory.s_end();
  auto spec = flow_spec(prof.a, prof.b);
  spec.rtol = 1e-13;
  spec.atol = 1e-15;
  for (const auto& pt : prof.samples) {
    // The stencil must resolve theta': skip samples where it varies by more
    // than kStencilVariation relative over one step.
    const double variation = h * std::abs(analytic_theta_second(prof.a, prof.b, pt.z, pt.theta) / pt.theta_prime);
    const bool singular = std::abs(0.5 * prof.a + prof.b * std::cos(pt.theta)) < kSingularLayer ||
                          pt.z < kSingularLayer || std::abs(pt.theta_prime) > kMaxTurning ||
                          !(variation < kStencilVariation);
    if (singular || pt.s - h < lo || pt.s + h > hi) {
      ++r.excluded;
      continue;
    }
    // Central differences of theta' along the flow through the sample at
    // steps h and h/2, combined by Richardson extrapolation. The dense output
    // is not used here: its interpolation error, divided by h, would swamp the
    // identity near the blow-up.
    spec.s0 = pt.s;
    spec.y0 = {pt.x, pt.z, pt.theta};
    auto tp_at = [&](double ds) {
      const auto run = ode::integrate(spec, pt.s + ds);
      const auto y = run.state(run.size() - 1);
      return theta_prime(prof.a, prof.b, y[Z], y[THETA]);
    };
    const double d1 = (tp_at(h) - tp_at(-h)) / (2.0 * h);
    const double d2 = (tp_at(0.5 * h) - tp_at(-0.5 * h)) / h;
    const double tpp = (4.0 * d2 - d1) / 3.0;
    r.max_abs = std::max(
        r.max_abs, std::abs(second_derivative_identity(prof.a, prof.b, pt.z, pt.theta, pt.theta_prime, tpp)));
    ++r.used;
  }
  return r;
}

InvariantReport check_invariants(const ParabolicProfile& prof, const ParabClassification& cls) {
  InvariantReport r;
  const double a = prof.a, b = prof.b;
  r.z_positive = std::all_of(prof.samples.begin(), prof.samples.end(), [](const ParabPoint& p) { return p.z > 0; });
  const double dir = sign(prof.theta_prime0);
  r.theta_monotone = std::all_of(prof.samples.begin(), prof.samples.end(),
                                 [dir](const ParabPoint& p) { return sign(p.theta_prime) == dir; });
  for (const auto& pt : prof.samples)
    r.max_relation_residual =
        std::max(r.max_relation_residual, std::abs(relation_residual(a, b, pt.z, pt.theta, pt.theta_prime)));

  // Mirror image through x = 0 by integrating the same problem backward.
  {
    // Same solver settings as the forward run, so the comparison isolates the
    // symmetry of the equations from the drift of the global error.
    const auto back = ode::integrate(profile_spec(a, b, prof.z0, prof.tol), -prof.s_bar, profile_guard(a, b));
    const double reach = std::min(prof.s_bar, -back.s_end());
    for (const auto& pt : prof.samples) {
      if (pt.s > reach) break;
      if (std::abs(pt.theta_prime) > kMaxTurning || pt.z < kSingularLayer) continue;
      const auto y = back.at(-pt.s);
      r.mirror_defect = std::max({r.mirror_defect, std::abs(y[X] + pt.x), std::abs(y[Z] - pt.z)});
    }
  }

  if (cls.label == CaseLabel::PeriodicComplete && prof.half_turns.size() >= 4) {
    const double T = prof.half_turns[1];
    const double xT = prof.trajectory.at(T, X);
    double defect = 0.0;
    constexpr int n = 50;
    for (int k = 0; k < n; ++k) {
      const double s = T * (k + 0.5) / n;
      const auto p = prof.trajectory.at(s);
      const auto q = prof.trajectory.at(s + T);
      defect = std::max({defect, std::abs(q[X] - p[X] - xT), std::abs(q[Z] - p[Z]),
                         std::abs(q[THETA] - p[THETA] - 2.0 * kPi)});
    }
    r.translation_defect = defect;
  }

  if (cls.label == CaseLabel::CompleteConcaveGraph) {
    const double root = std::sqrt(cls.circle_discriminant);
    bool concave = true;
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& pt : prof.samples) {
      concave = concave && pt.theta_prime * std::cos(pt.theta) < 0.0;
      margin = std::min(margin, -root - denominator(a, b, pt.theta));
    }
    r.concave = concave;
    r.lower_bound_margin = margin;
    if (cls.theta1) r.theta1_trajectory_gap = std::abs(prof.samples.back().theta - *cls.theta1);
  }
  if (cls.label == CaseLabel::IncompleteGraph) {
    const double floor = cls.circle_discriminant / (4.0 * b);
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& pt : prof.samples) margin = std::min(margin, numerator(a, b, pt.theta) - floor);
    r.upper_bound_margin = margin;
  }
  return r;
}

geom::ParamSurfacePatch parab_patch(const ParabolicProfile& prof, double t0, double t1) {
  geom::ParamSurfacePatch patch;
  patch.domain = {prof.trajectory.s_begin(), prof.trajectory.s_end(), t0, t1};
  patch.jet = [&prof](double s, double t) {
    const auto p = prof.at(s);
    if (!(p.z > 0.0)) {
      std::ostringstream msg;
      msg << "z=" << p.z << " at s=" << s << " is outside the half-space";
      throw Error(ErrorKind::DegeneratePoint, msg.str());
    }
    const double c = std::cos(p.theta), sn = std::sin(p.theta);
    geom::SurfaceJet j;
    j.x = {p.x, t, p.z};
    j.xu = {c, 0.0, sn};
    j.xv = {0.0, 1.0, 0.0};
    j.xuu = {-sn * p.theta_prime, 0.0, c * p.theta_prime};
    return j;
  };
  return patch;
}

HyperbolicCurvatureCheck hyperbolic_curvature_check(const ParabolicProfile& prof) {
  HyperbolicCurvatureCheck r;
  const auto patch = parab_patch(prof);
  for (const auto& pt : prof.samples) {
    const double H = 0.5 * (pt.kappa1 + pt.kappa2);
    const double kext = pt.kappa1 * pt.kappa2;
    r.max_residual = std::max(r.max_residual, std::abs(prof.a * H + prof.b * (kext - 1.0) - 1.0));
    r.max_residual_extrinsic = std::max(r.max_residual_extrinsic, std::abs(prof.a * H + prof.b * kext - 1.0));

    // Conformal change of the metric by 1/z^2: k_hyp = z k_euc + N_z.
    const auto ce = geom::curvatures(patch, pt.s, 0.0);
    const double nz = std::cos(pt.theta);
    double h1 = pt.z * ce.k1 + nz, h2 = pt.z * ce.k2 + nz;
    if (h1 < h2) std::swap(h1, h2);
    const double p1 = std::max(pt.kappa1, pt.kappa2), p2 = std::min(pt.kappa1, pt.kappa2);
    const double scale = std::max(1.0, std::abs(p1));
    r.max_conformal_mismatch = std::max({r.max_conformal_mismatch, std::abs(h1 - p1) / scale, std::abs(h2 - p2) / scale});
    ++r.samples;
  }
  return r;
}

void write_curve_csv(std::ostream& out, const ParabolicProfile& prof) {
  io::CsvWriter csv(out, {"s", "x", "z", "theta", "theta_prime", "kappa1", "kappa2", "relation_residual"});
  for (const auto& pt : prof.samples) {
    csv.row({pt.s, pt.x, pt.z, pt.theta, pt.theta_prime, pt.kappa1, pt.kappa2,
             relation_residual(prof.a, prof.b, pt.z, pt.theta, pt.theta_prime)});
  }
}

}  // namespace weingarten::parab
