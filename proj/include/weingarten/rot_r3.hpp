#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

#include "weingarten/export.hpp"
#include "weingarten/geomcore.hpp"
#include "weingarten/odekit.hpp"
#include "weingarten/params.hpp"

// Hyperbolic linear Weingarten surfaces of revolution in Euclidean space.
//
// The profile alpha(s) = (x(s), 0, z(s)) is arc-length parametrized with
// alpha' = (cos theta, 0, sin theta) and rotates about the x-axis. With the
// relation aH + bK = 1 (a > 0, a^2 + 4b < 0) the profile solves
//
//   x' = cos theta,  z' = sin theta,
//   theta' = (a cos theta - 2z) / (a z + 2b cos theta),
//
// from x(0) = 0, z(0) = z0, theta(0) = 0 with z0 > -2b/a.
namespace weingarten::rot {

/// z^2 - a z - b.
double height_function(const WeingartenParams& p, double z);

double theta_prime(const WeingartenParams& p, double z, double theta);

/// z as a function of theta from the first integral.
double closed_form_height(const WeingartenParams& p, double z0, double theta);

/// z^2 - a z cos(theta) - b cos^2(theta) - f(z0); zero along solutions.
double first_integral(const WeingartenParams& p, double z0, double z, double theta);

struct BoundConstants {
  double eta = 0;     // lower bound of the numerator a cos(theta) - 2z
  double delta2 = 0;  // upper bound of the denominator a z + 2b cos(theta)
  double eta2 = 0;    // upper bound of the numerator
  double M = 0;       // eta2 / delta2: theta' <= M < 0
  // The denominator estimate above drops (a^2 + 4b) cos(theta) / 2, which is
  // positive where cos(theta) < 0. Restoring its maximum gives a bound that
  // holds on the whole curve.
  double delta2_valid = 0;  // a sqrt(f(z0)) - (a^2 + 4b) / 2
  double M_valid = 0;       // eta2 / delta2_valid
};

BoundConstants bound_constants(const WeingartenParams& p, double z0);

/// Throws InvalidParams unless p is hyperbolic with c = 1, a > 0, b != 0 and
/// z0 > -2b/a.
void check_admissible(const WeingartenParams& p, double z0);

struct ProfilePoint {
  double s = 0, x = 0, z = 0, theta = 0, theta_prime = 0;
};

struct HyperbolicProfile {
  WeingartenParams params;
  double z0 = 0;
  int n_periods = 0;
  /// State (x, z, theta) with dense output over [0, n_periods T].
  ode::Trajectory trajectory;
  /// Uniform samples in s, samples_per_period per period, endpoints included.
  std::vector<ProfilePoint> samples;
  /// s at which theta = -k pi/2, k = 1 .. 4 n_periods.
  std::vector<double> quarter_times;
  double T1 = 0, T2 = 0, T3 = 0, T = 0;
  BoundConstants bounds;

  ProfilePoint at(double s) const;
  /// Uniform samples followed by the integrator's own grid points.
  std::vector<ProfilePoint> check_points() const;
};

HyperbolicProfile integrate_profile(const WeingartenParams& p, double z0, int n_periods, double tol = 1e-10,
                                    int samples_per_period = 2000);

struct FirstIntegralReport {
  double max_first_integral = 0;
  double max_closed_form_deviation = 0;
};

FirstIntegralReport first_integral_residual(const HyperbolicProfile& profile);

struct BoundsReport {
  BoundConstants bounds;
  double max_theta_prime = 0;  // must stay <= M
  double min_numerator = 0;    // must stay >= eta
  double max_theta_prime_excess_valid = -std::numeric_limits<double>::infinity();  // max(theta' - M_valid)
  std::vector<ProfilePoint> violations;
};

/// Throws BoundViolated on the first offending sample unless `strict` is
/// false, in which case violations are collected.
BoundsReport theta_prime_bounds_check(const HyperbolicProfile& profile, bool strict = true);

struct PeriodicityReport {
  double T = 0;
  double xT = 0;
  double z_T_defect = 0;  // |z(T) - z0|
  double z_defect = 0;
  double theta_defect = 0;
  double x_defect = 0;
  double translation_defect = 0;  // max of the three above
  std::size_t n_samples = 0;
};

PeriodicityReport periodicity_check(const HyperbolicProfile& profile, std::size_t n_samples = 50);

struct SelfIntersection {
  double s1 = 0, s2 = 0;  // s1 < s2
  double x = 0, z = 0;
};

/// Crossings of the (x, z) polyline through the profile samples, each refined
/// by Newton iteration on the dense output.
std::vector<SelfIntersection> self_intersections(const HyperbolicProfile& profile);

struct StructureReport {
  std::vector<std::array<bool, 4>> monotonicity;  // per period, per quarter
  bool monotonicity_ok = false;
  std::vector<double> z_maxima;
  std::vector<double> z_minima;
  bool extrema_ok = false;
  std::vector<double> vertical_points;
  bool vertical_points_ok = false;
  std::vector<SelfIntersection> intersections;
  /// Crossings whose arcs pass through each period. Loops close across
  /// adjacent periods, so this needs at least two periods to be meaningful.
  std::vector<int> intersections_per_period;
  bool self_intersecting_each_period = false;
  double min_K_on_max_arcs = 0;  // expected > 0
  double max_K_on_min_arcs = 0;  // expected < 0
  bool k_sign_ok = false;
  double symmetry_defect = 0;  // max|x(-s) + x(s)| + max|z(-s) - z(s)|
};

StructureReport structure_report(const HyperbolicProfile& profile);

/// Profile data needed to build the surface of revolution.
struct CurveJet {
  double x = 0, z = 0, theta = 0, theta_prime = 0;
};

/// X(s, phi) = (x, z cos phi, z sin phi) on [s0, s1] x [0, 2 pi]. The forward
/// normal is (sin theta, -cos theta cos phi, -cos theta sin phi), for which
/// H = (cos theta - z theta') / (2z) and K = -theta' cos theta / z.
/// Throws DegeneratePoint when z <= 0 is met while evaluating.
geom::ParamSurfacePatch revolve_curve(std::function<CurveJet(double)> curve, double s0, double s1);

struct RevolvedSurface {
  geom::ParamSurfacePatch patch;
  io::Mesh mesh;
  double max_residual = 0;  // max |aH + bK - 1| over the mesh vertices
};

/// Mesh vertices: profile samples x phi_samples.
RevolvedSurface revolve(const HyperbolicProfile& profile, std::size_t phi_samples = 64);

void write_curve_csv(std::ostream& out, const HyperbolicProfile& profile);

}  // namespace weingarten::rot
