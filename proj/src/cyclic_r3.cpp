#include "weingarten/cyclic_r3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include "weingarten/error.hpp"

namespace weingarten::cyclic {

namespace {

constexpr double kPi = std::numbers::pi;

enum StateIndex : std::size_t { R = 0, RP = 1, F = 2, FP = 3, G = 4, GP = 5 };

Jet1 constant_jet(double c) { return {c, 0.0, 0.0}; }

double riemann_r_second(double k, double r, double rp) { return (1.0 + k * r * r * r * r + rp * rp) / r; }

}  // namespace

SpecCheck check_spec(const CyclicSurfaceSpec& spec, std::size_t samples) {
  if (!spec.f || !spec.g || !spec.r) throw Error(ErrorKind::InvalidParams, "spec is missing a function");
  if (!(spec.u1 > spec.u0) || samples < 2) throw Error(ErrorKind::InvalidParams, "empty u-interval");
  SpecCheck out;
  out.min_radius = std::numeric_limits<double>::infinity();
  const double h = 1e-5 * std::max(1.0, spec.u1 - spec.u0);
  for (std::size_t i = 0; i < samples; ++i) {
    const double u = spec.u0 + (spec.u1 - spec.u0) * static_cast<double>(i) / static_cast<double>(samples - 1);
    const Jet1 rj = spec.r(u);
    out.min_radius = std::min(out.min_radius, rj.value);
    if (!(rj.value > 0.0)) {
      std::ostringstream msg;
      msg << "r(" << u << ") = " << rj.value;
      throw Error(ErrorKind::NonPositiveRadius, msg.str());
    }
    // One-sided stencils stay inside the interval at its ends.
    const double lo = std::max(spec.u0, u - h), hi = std::min(spec.u1, u + h);
    for (const JetFn* fn : {&spec.f, &spec.g, &spec.r}) {
      const Jet1 j = (*fn)(u), jl = (*fn)(lo), jh = (*fn)(hi);
      const double d1 = (jh.value - jl.value) / (hi - lo);
      const double d2 = (jh.d1 - jl.d1) / (hi - lo);
      // A one-sided difference is first order; compare it with the mean of the stencil ends.
      const double ref1 = (hi - lo < 2.0 * h) ? 0.5 * (jl.d1 + jh.d1) : j.d1;
      const double ref2 = (hi - lo < 2.0 * h) ? 0.5 * (jl.d2 + jh.d2) : j.d2;
      out.max_derivative_mismatch = std::max(
          {out.max_derivative_mismatch, std::abs(d1 - ref1) / std::max(1.0, std::abs(ref1)),
           std::abs(d2 - ref2) / std::max(1.0, std::abs(ref2))});
    }
  }
  if (out.max_derivative_mismatch > 1e-6) {
    std::ostringstream msg;
    msg << "derivatives disagree with finite differences by " << out.max_derivative_mismatch;
    throw Error(ErrorKind::InvalidParams, msg.str());
  }
  return out;
}

geom::ParamSurfacePatch cyclic_patch(const CyclicSurfaceSpec& spec) {
  check_spec(spec);
  geom::ParamSurfacePatch patch;
  patch.domain = {spec.u0, spec.u1, 0.0, 2.0 * kPi};
  patch.jet = [spec](double u, double v) {
    const Jet1 f = spec.f(u), g = spec.g(u), r = spec.r(u);
    if (!(r.value > 0.0)) throw Error(ErrorKind::DegeneratePoint, "circle of non-positive radius");
    const double c = std::cos(v), s = std::sin(v);
    geom::SurfaceJet j;
    j.x = {f.value + r.value * c, g.value + r.value * s, u};
    j.xu = {f.d1 + r.d1 * c, g.d1 + r.d1 * s, 1.0};
    j.xv = {-r.value * s, r.value * c, 0.0};
    j.xuu = {f.d2 + r.d2 * c, g.d2 + r.d2 * s, 0.0};
    j.xuv = {-r.d1 * s, r.d1 * c, 0.0};
    j.xvv = {-r.value * c, -r.value * s, 0.0};
    return j;
  };
  return patch;
}

CyclicSurfaceSpec generalized_cone(double f0, double f1, double g0, double g1, double r0, double r1, double u0,
                                   double u1) {
  for (double x : {f0, f1, g0, g1, r0, r1, u0, u1})
    if (!std::isfinite(x)) throw Error(ErrorKind::InvalidParams, "non-finite cone coefficient");
  if (!(u1 > u0)) throw Error(ErrorKind::InvalidParams, "empty u-interval");
  if (!(r0 + r1 * u0 > 0.0) || !(r0 + r1 * u1 > 0.0))
    throw Error(ErrorKind::NonPositiveRadius, "linear radius is not positive on the interval");
  auto linear = [](double c0, double c1) { return [c0, c1](double u) { return Jet1{c0 + c1 * u, c1, 0.0}; }; };
  return {"cone", linear(f0, f1), linear(g0, g1), linear(r0, r1), u0, u1};
}

CyclicSurfaceSpec sphere_slice(double R, double u0, double u1) {
  if (!(R > 0.0) || !(-R < u0) || !(u0 < u1) || !(u1 < R))
    throw Error(ErrorKind::InvalidParams, "sphere slice needs -R < u0 < u1 < R");
  auto r = [R](double u) {
    const double rho = std::sqrt(R * R - u * u);
    return Jet1{rho, -u / rho, -R * R / (rho * rho * rho)};
  };
  return {"sphere", [](double) { return constant_jet(0.0); }, [](double) { return constant_jet(0.0); }, r, u0, u1};
}

CyclicSurfaceSpec add_cubic(CyclicSurfaceSpec spec, Component which, const std::array<double, 4>& c) {
  JetFn& target = which == Component::F ? spec.f : which == Component::G ? spec.g : spec.r;
  target = [base = target, c](double u) {
    Jet1 j = base(u);
    j.value += c[0] + u * (c[1] + u * (c[2] + u * c[3]));
    j.d1 += c[1] + u * (2.0 * c[2] + 3.0 * u * c[3]);
    j.d2 += 2.0 * c[2] + 6.0 * u * c[3];
    return j;
  };
  spec.kind += "+cubic";
  return spec;
}

RiemannExample riemann_example(double lambda, double mu, double r0, double r0_prime, double u0, double u1,
                               CenterLaw law, double tol) {
  for (double x : {lambda, mu, r0, r0_prime, u0, u1, tol})
    if (!std::isfinite(x)) throw Error(ErrorKind::InvalidParams, "non-finite input");
  if (!(r0 > 0.0)) throw Error(ErrorKind::InvalidParams, "r0 must be positive");
  if (!(u0 < 0.0) || !(u1 > 0.0)) throw Error(ErrorKind::InvalidParams, "the u-range must contain 0 in its interior");

  const double k = lambda * lambda + mu * mu;
  const bool first = law == CenterLaw::FirstDerivative;
  // Under FirstDerivative the slots FP, GP carry f', g' = (lambda, mu) r^2 as well.
  ode::IvpSpec ivp;
  ivp.dimension = 6;
  ivp.rhs = [=](double, std::span<const double> y, std::span<double> dy) {
    const double r2 = y[R] * y[R];
    dy[R] = y[RP];
    dy[RP] = riemann_r_second(k, y[R], y[RP]);
    if (first) {
      dy[F] = lambda * r2;
      dy[FP] = 2.0 * lambda * y[R] * y[RP];
      dy[G] = mu * r2;
      dy[GP] = 2.0 * mu * y[R] * y[RP];
    } else {
      dy[F] = y[FP];
      dy[FP] = lambda * r2;
      dy[G] = y[GP];
      dy[GP] = mu * r2;
    }
  };
  const double c0 = first ? r0 * r0 : 0.0;
  ivp.y0 = {r0, r0_prime, 0.0, lambda * c0, 0.0, mu * c0};
  ivp.rtol = tol;
  ivp.atol = tol;
  ivp.max_step = 0.01 * std::max(1.0, u1 - u0);
  ivp.stop_on_underflow = true;
  const ode::Guard positive = [](double, std::span<const double> y) { return y[R] > 0.0; };

  RiemannExample ex;
  ex.lambda = lambda;
  ex.mu = mu;
  ex.law = law;
  ex.r0 = r0;
  ex.r0_prime = r0_prime;
  ex.forward = ode::integrate(ivp, u1, positive);
  ex.backward = ode::integrate(ivp, u0, positive);
  for (const auto* t : {&ex.forward, &ex.backward}) {
    if (t->termination() != ode::Termination::ReachedEnd) {
      std::ostringstream msg;
      msg << "r-equation stopped at u = " << t->s_end() << " (" << ode::to_string(t->termination()) << ")";
      throw Error(ErrorKind::StepUnderflow, msg.str());
    }
  }

  // Shared by the three jets; the trajectories outlive the copies in the spec.
  auto fwd = std::make_shared<const ode::Trajectory>(ex.forward);
  auto bwd = std::make_shared<const ode::Trajectory>(ex.backward);
  auto state = [fwd, bwd](double u) { return u >= 0.0 ? fwd->at(u) : bwd->at(u); };

  ex.spec.kind = "riemann";
  ex.spec.u0 = u0;
  ex.spec.u1 = u1;
  ex.spec.r = [state, k](double u) {
    const auto y = state(u);
    return Jet1{y[R], y[RP], riemann_r_second(k, y[R], y[RP])};
  };
  auto centre = [state, first](std::size_t slot, double c) {
    return [state, first, slot, c](double u) {
      const auto y = state(u);
      const double r2 = y[R] * y[R];
      return first ? Jet1{y[slot], c * r2, 2.0 * c * y[R] * y[RP]} : Jet1{y[slot], y[slot + 1], c * r2};
    };
  };
  ex.spec.f = centre(F, lambda);
  ex.spec.g = centre(G, mu);
  return ex;
}

RiemannIdentity riemann_identity(const RiemannExample& ex, std::size_t samples) {
  const double k = ex.lambda * ex.lambda + ex.mu * ex.mu;
  const double h = 1e-3;
  auto rp = [&](double u) { return ex.spec.r(u).d1; };
  auto conserved = [k](double r, double p) { return (1.0 + p * p) / (r * r) - k * r * r; };
  const double c0 = conserved(ex.r0, ex.r0_prime);

  RiemannIdentity out;
  const double lo = ex.spec.u0 + h, hi = ex.spec.u1 - h;
  for (std::size_t i = 0; i < samples; ++i) {
    const double u = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(1, samples - 1));
    const Jet1 r = ex.spec.r(u);
    // Richardson combination of two central differences of r'.
    const double d1 = (rp(u + h) - rp(u - h)) / (2.0 * h);
    const double d2 = (rp(u + 0.5 * h) - rp(u - 0.5 * h)) / h;
    const double rpp = (4.0 * d2 - d1) / 3.0;
    const double id = r.value * rpp - r.d1 * r.d1 - k * std::pow(r.value, 4) - 1.0;
    out.max_identity_residual = std::max(out.max_identity_residual, std::abs(id));
    out.max_conserved_drift = std::max(out.max_conserved_drift, std::abs(conserved(r.value, r.d1) - c0));
    ++out.samples;
  }
  return out;
}

TrigCoefficients trig_coefficients(const geom::ParamSurfacePatch& patch, const WeingartenParams& params, double u,
                                   std::size_t N, std::size_t n_samples) {
  if (n_samples < 2 * N + 3) throw Error(ErrorKind::InvalidParams, "need at least 2N + 3 samples");
  const auto M = static_cast<double>(n_samples);
  std::vector<double> v(n_samples), rho(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    v[k] = 2.0 * kPi * static_cast<double>(k) / M;
    const auto c = geom::curvatures(patch, u, v[k]);
    rho[k] = params.a * c.H + params.b * c.K - params.c;
  }

  TrigCoefficients out;
  out.u = u;
  out.n_samples = n_samples;
  out.A.assign(N + 1, 0.0);
  out.B.assign(N + 1, 0.0);
  for (std::size_t n = 0; n <= N; ++n) {
    double sa = 0.0, sb = 0.0;
    for (std::size_t k = 0; k < n_samples; ++k) {
      sa += rho[k] * std::cos(static_cast<double>(n) * v[k]);
      sb += rho[k] * std::sin(static_cast<double>(n) * v[k]);
    }
    out.A[n] = (n == 0 ? 1.0 : 2.0) * sa / M;
    out.B[n] = n == 0 ? 0.0 : 2.0 * sb / M;
    out.max_abs = std::max({out.max_abs, std::abs(out.A[n]), std::abs(out.B[n])});
  }
  for (std::size_t k = 0; k < n_samples; ++k) {
    double series = out.A[0];
    for (std::size_t n = 1; n <= N; ++n)
      series += out.A[n] * std::cos(static_cast<double>(n) * v[k]) + out.B[n] * std::sin(static_cast<double>(n) * v[k]);
    out.reconstruction_error = std::max(out.reconstruction_error, std::abs(rho[k] - series));
  }
  return out;
}

TrigCoefficients trig_coefficients(const CyclicSurfaceSpec& spec, const WeingartenParams& params, double u,
                                   std::size_t N, std::size_t n_samples) {
  return trig_coefficients(cyclic_patch(spec), params, u, N, n_samples);
}

FieldExtrema field_extrema(const geom::CurvatureField& field) {
  FieldExtrema e;
  for (const auto& s : field.samples) {
    e.max_abs_H = std::max(e.max_abs_H, std::abs(s.curv.H));
    e.max_abs_K = std::max(e.max_abs_K, std::abs(s.curv.K));
  }
  return e;
}

io::Mesh cyclic_mesh(const CyclicSurfaceSpec& spec, std::size_t nu, std::size_t nv) {
  if (nu < 2 || nv < 3) throw Error(ErrorKind::InvalidParams, "mesh needs nu >= 2 and nv >= 3");
  const auto patch = cyclic_patch(spec);
  return io::grid_mesh(nu, nv, true, [&](std::size_t i, std::size_t j) {
    const double u = spec.u0 + (spec.u1 - spec.u0) * static_cast<double>(i) / static_cast<double>(nu - 1);
    const double v = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(nv);
    return patch.position(u, v);
  });
}

}  // namespace weingarten::cyclic
