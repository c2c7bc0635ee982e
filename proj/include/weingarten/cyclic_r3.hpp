#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "weingarten/export.hpp"
#include "weingarten/geomcore.hpp"
#include "weingarten/odekit.hpp"
#include "weingarten/params.hpp"

// Surfaces foliated by circles in parallel horizontal planes,
//
//   X(u, v) = (f(u), g(u), u) + r(u) (cos v, sin v, 0).
namespace weingarten::cyclic {

/// Value and first two derivatives of a function of u.
struct Jet1 {
  double value = 0, d1 = 0, d2 = 0;
};

using JetFn = std::function<Jet1(double u)>;

struct CyclicSurfaceSpec {
  std::string kind;  // "cone", "riemann", "sphere", ...
  JetFn f, g, r;
  double u0 = 0, u1 = 1;
};

struct SpecCheck {
  double min_radius = 0;
  double max_derivative_mismatch = 0;  // analytic vs central differences
};

/// Samples r and the derivative fields on `samples` points of the interval.
/// Throws NonPositiveRadius if r <= 0 somewhere, InvalidParams if a
/// derivative disagrees with finite differences by more than 1e-6.
SpecCheck check_spec(const CyclicSurfaceSpec& spec, std::size_t samples = 101);

/// Analytic partials; u in [u0, u1], v in [0, 2 pi]. The forward normal
/// X_u x X_v points towards the axis when r' = 0.
geom::ParamSurfacePatch cyclic_patch(const CyclicSurfaceSpec& spec);

/// Linear centres and radius. Throws NonPositiveRadius unless r > 0 on the range.
CyclicSurfaceSpec generalized_cone(double f0, double f1, double g0, double g1, double r0, double r1, double u0,
                                   double u1);

/// Round sphere of radius R about the origin, sliced by horizontal planes.
/// Requires -R < u0 < u1 < R.
CyclicSurfaceSpec sphere_slice(double R, double u0, double u1);

enum class Component { F, G, R };

/// Adds c[0] + c[1] u + c[2] u^2 + c[3] u^3 to one of the three functions.
CyclicSurfaceSpec add_cubic(CyclicSurfaceSpec spec, Component which, const std::array<double, 4>& c);

/// How the circle centres follow the radius. FirstDerivative, f' = lambda r^2
/// and g' = mu r^2, gives the minimal Riemann family. SecondDerivative,
/// f'' = lambda r^2 and g'' = mu r^2, is not minimal unless lambda = mu = 0
/// and is kept as a negative control.
enum class CenterLaw { FirstDerivative, SecondDerivative };

struct RiemannExample {
  double lambda = 0, mu = 0;
  CenterLaw law = CenterLaw::FirstDerivative;
  double r0 = 1, r0_prime = 0;
  CyclicSurfaceSpec spec;
  /// State (r, r', f, f', g, g') from u = 0 towards u0 and towards u1.
  ode::Trajectory backward, forward;
};

/// Integrates r'' = (1 + (lambda^2 + mu^2) r^4 + r'^2) / r with the centre
/// law, f(0) = g(0) = 0 (and f'(0) = g'(0) = 0 under SecondDerivative).
/// Requires u0 < 0 < u1. Throws InvalidParams for r0 <= 0 and StepUnderflow
/// when the solution cannot be continued over the whole range.
RiemannExample riemann_example(double lambda, double mu, double r0, double r0_prime, double u0, double u1,
                               CenterLaw law = CenterLaw::FirstDerivative, double tol = 1e-13);

struct RiemannIdentity {
  /// max |r r'' - r'^2 - (lambda^2 + mu^2) r^4 - 1| with r'' differentiated
  /// from the interpolant of r'.
  double max_identity_residual = 0;
  /// Drift of the conserved quantity (1 + r'^2)/r^2 - (lambda^2 + mu^2) r^2.
  double max_conserved_drift = 0;
  std::size_t samples = 0;
};

RiemannIdentity riemann_identity(const RiemannExample& ex, std::size_t samples = 400);

struct TrigCoefficients {
  double u = 0;
  std::size_t n_samples = 0;
  std::vector<double> A, B;  // n = 0..N; B[0] = 0
  double max_abs = 0;
  /// max over the samples of |residual - truncated series|.
  double reconstruction_error = 0;
};

/// Fourier coefficients of v -> aH + bK - c on the circle at height u.
/// Requires n_samples >= 2N + 3. Throws DegeneratePoint on a singular circle.
TrigCoefficients trig_coefficients(const geom::ParamSurfacePatch& patch, const WeingartenParams& params, double u,
                                   std::size_t N = 12, std::size_t n_samples = 64);

TrigCoefficients trig_coefficients(const CyclicSurfaceSpec& spec, const WeingartenParams& params, double u,
                                   std::size_t N = 12, std::size_t n_samples = 64);

struct FieldExtrema {
  double max_abs_H = 0, max_abs_K = 0;
};

FieldExtrema field_extrema(const geom::CurvatureField& field);

/// nu x nv vertex grid; the v direction is closed.
io::Mesh cyclic_mesh(const CyclicSurfaceSpec& spec, std::size_t nu = 64, std::size_t nv = 64);

}  // namespace weingarten::cyclic
