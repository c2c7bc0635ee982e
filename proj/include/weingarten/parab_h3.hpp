#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weingarten/geomcore.hpp"
#include "weingarten/odekit.hpp"

// Parabolic linear Weingarten surfaces in the upper half-space model of
// hyperbolic space. The surface X(s, t) = (x(s), t, z(s)) is swept by
// horizontal translations; the profile is Euclidean arc-length parametrized
// with alpha' = (cos theta, 0, sin theta) and unit normal (-sin theta, 0, cos theta).
// Its hyperbolic principal curvatures are
//
//   k1 = z theta' + cos theta,  k2 = cos theta,
//
// and aH + bK = 1, with H = (k1 + k2)/2 and the intrinsic curvature
// K = k1 k2 - 1, reads
//
//   (a/2 + b cos theta) z theta' + a cos theta - b sin^2 theta = 1,
//   theta' = 2 (1 - a cos theta + b sin^2 theta) / (z (a + 2b cos theta)).
namespace weingarten::parab {

double theta_prime(double a, double b, double z, double theta);

/// Left side of the relation minus 1; zero along solutions.
double relation_residual(double a, double b, double z, double theta, double theta_prime);

/// theta' at s = 0, (2/z0)(1 - a)/(a + 2b).
double initial_theta_prime(double a, double b, double z0);

/// The second-derivative identity
///   -theta' sin theta [b z theta' + (a/2 + b cos theta)] + (a/2 + b cos theta) z theta'' = 0.
double second_derivative_identity(double a, double b, double z, double theta, double theta_prime,
                                  double theta_second);

/// theta'' obtained by differentiating theta' along the flow.
double analytic_theta_second(double a, double b, double z, double theta);

enum class EndCause {
  Horizon,           // ran to the requested arc length
  BoundaryReached,   // z -> 0 at finite s
  CurvatureBlowUp,   // a + 2b cos theta -> 0, |theta'| -> infinity at z > 0
  Unresolved,
};

std::string_view to_string(EndCause c);

struct ParabPoint {
  double s = 0, x = 0, z = 0, theta = 0, theta_prime = 0;
  double kappa1 = 0, kappa2 = 0;
};

struct ParabolicProfile {
  double a = 0, b = 0, z0 = 0;
  double tol = 0;
  double theta_prime0 = 0;
  /// State (x, z, theta) on [0, s_bar].
  ode::Trajectory trajectory;
  std::vector<ParabPoint> samples;
  /// Forward end of the maximal interval (the horizon when none was met).
  double s_bar = 0;
  EndCause end = EndCause::Unresolved;
  /// s at which theta = k pi (k = 1, 2, ...) in the direction of rotation.
  std::vector<double> half_turns;

  ParabPoint at(double s) const;
};

struct IntegrateOptions {
  double tol = 1e-10;
  double horizon = 1e3;
  std::size_t samples = 4000;
  /// Half-turn events recorded while theta increases or decreases.
  int max_half_turns = 4;
};

/// Throws InvalidParams unless z0 > 0, a + 2b != 0 and all inputs are finite;
/// InvariantViolated if theta' changes sign or z leaves the half-space.
ParabolicProfile integrate_parabolic(double a, double b, double z0, const IntegrateOptions& opts = {});

enum class CaseLabel {
  DegenerateLine,
  EuclideanCircle,
  CompleteConcaveGraph,
  IncompleteGraph,
  PeriodicComplete,
  IncompleteNonGraph,
};

std::string_view to_string(CaseLabel c);

struct ParabClassification {
  double a = 0, b = 0, z0 = 0;
  CaseLabel label = CaseLabel::DegenerateLine;
  double theta_prime0 = 0;
  double threshold_low = 0;   // -(1 + sqrt(1 - a^2)) / 2 (NaN outside |a| <= 1)
  double threshold_high = 0;  // -(1 - sqrt(1 - a^2)) / 2
  double a_plus_2b = 0;
  double a_minus_2b = 0;
  double circle_discriminant = 0;  // a^2 + 4b^2 + 4b
  std::optional<double> theta1;
  /// 2 cos(theta1) - b sin^2(theta1): the other form of the boundary-angle
  /// equation, which does not vanish at the computed angle.
  std::optional<double> alternate_angle_residual;
  EndCause expected_end = EndCause::Unresolved;
};

/// Decision tree on (a, b) with c = 1. Throws OutOfScopeParams for
/// configurations outside 0 < a < 1, b != 0 that are neither degenerate nor
/// circles, and for boundary equalities.
ParabClassification classify(double a, double b, double z0);

/// Root of a cos theta - b sin^2 theta - 1 on (-pi/2, 0) nearest 0. Throws NoRoot.
double boundary_angle(double a, double b);

struct Corroboration {
  bool ok = false;
  EndCause observed = EndCause::Unresolved;
  std::string detail;
};

/// Compares the label with what the integrated profile did.
Corroboration corroborate(const ParabClassification& cls, const ParabolicProfile& profile);

struct CircleSolution {
  double center_x = 0, center_z = 0, radius = 0;
  double theta_prime = 0;
  bool clipped = false;  // the circle leaves the half-space
  double max_distance = 0;
  double arc_length = 0;  // length integrated for the distance check
};

/// Throws NotCircleCase unless |a^2 + 4b^2 + 4b| < 1e-12 and b != 0.
CircleSolution circle_solution(double a, double b, double z0, double tol = 1e-12);

struct IdentityResidual {
  double max_abs = 0;
  std::size_t used = 0;
  std::size_t excluded = 0;  // samples in the singular layer or too near an end
};

/// Max of the second-derivative identity over samples, with theta'' from
/// central differences (step h) of theta' along the flow through each sample.
IdentityResidual second_derivative_residual(const ParabolicProfile& profile, double h = 1e-5);

struct InvariantReport {
  bool z_positive = false;
  double max_relation_residual = 0;
  bool theta_monotone = false;  // theta' keeps the sign of theta'(0), or vanishes throughout
  double mirror_defect = 0;
  std::optional<double> translation_defect;  // periodic case
  std::optional<bool> concave;               // complete graph: z'' < 0
  std::optional<double> lower_bound_margin;  // complete graph: min of -sqrt(d) - (a + 2b cos theta)
  std::optional<double> upper_bound_margin;  // incomplete graph: min of N - d/(4b)
  std::optional<double> theta1_trajectory_gap;
};

InvariantReport check_invariants(const ParabolicProfile& profile, const ParabClassification& cls);

/// X(s, t) = (x(s), t, z(s)) on [0, s_bar] x [t0, t1]; the forward normal is
/// (-sin theta, 0, cos theta). Throws DegeneratePoint when z <= 0.
geom::ParamSurfacePatch parab_patch(const ParabolicProfile& profile, double t0 = -1.0, double t1 = 1.0);

struct HyperbolicCurvatureCheck {
  double max_residual = 0;            // aH + bK - 1 with K = k1 k2 - 1
  double max_residual_extrinsic = 0;  // aH + b k1 k2 - 1, off by b identically
  /// max over samples of |k_hyp - (z k_euc + N_z)| with k_euc from geomcore.
  double max_conformal_mismatch = 0;
  std::size_t samples = 0;
};

HyperbolicCurvatureCheck hyperbolic_curvature_check(const ParabolicProfile& profile);

void write_curve_csv(std::ostream& out, const ParabolicProfile& profile);

}  // namespace weingarten::parab
