#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <functional>
#include <iosfwd>
#include <vector>

#include "weingarten/params.hpp"

namespace weingarten::geom {

using Vec3 = Eigen::Vector3d;

/// Position and analytic partial derivatives up to second order at one
/// parameter point.
struct SurfaceJet {
  Vec3 x = Vec3::Zero();
  Vec3 xu = Vec3::Zero();
  Vec3 xv = Vec3::Zero();
  Vec3 xuu = Vec3::Zero();
  Vec3 xuv = Vec3::Zero();
  Vec3 xvv = Vec3::Zero();
};

struct Domain {
  double u0 = 0.0;
  double u1 = 1.0;
  double v0 = 0.0;
  double v1 = 1.0;

  bool contains(double u, double v) const { return u >= u0 && u <= u1 && v >= v0 && v <= v1; }
};

/// Which geometric normal the curvature signs refer to. Forward is
/// N = X_u x X_v / |X_u x X_v|; Flipped is its negative.
enum class NormalConvention { Forward, Flipped };

struct ParamSurfacePatch {
  Domain domain;
  std::function<SurfaceJet(double u, double v)> jet;
  NormalConvention normal = NormalConvention::Forward;

  Vec3 position(double u, double v) const { return jet(u, v).x; }
  ParamSurfacePatch flipped() const;
};

struct FundamentalForms {
  double E = 0, F = 0, G = 0;
  double e = 0, f = 0, g = 0;
};

/// k1 >= k2 by value.
struct Curvatures {
  double H = 0, K = 0, k1 = 0, k2 = 0;
};

/// Cross-product norms below this are rejected as degenerate.
inline constexpr double kDegenerateThreshold = 1e-12;

FundamentalForms fundamental_forms(const SurfaceJet& jet, NormalConvention normal = NormalConvention::Forward);
FundamentalForms fundamental_forms(const ParamSurfacePatch& patch, double u, double v);

Curvatures curvatures(const FundamentalForms& forms);
Curvatures curvatures(const ParamSurfacePatch& patch, double u, double v);

struct CurvatureSample {
  double u = 0, v = 0;
  FundamentalForms forms;
  Curvatures curv;
};

struct CurvatureField {
  NormalConvention normal = NormalConvention::Forward;
  std::vector<CurvatureSample> samples;
};

/// Tensor grid of parameter values.
struct SampleGrid {
  std::vector<double> u;
  std::vector<double> v;

  /// nu x nv points; interior=true keeps a margin of half a cell away from the
  /// domain edges.
  static SampleGrid uniform(const Domain& d, std::size_t nu, std::size_t nv, bool interior = true);
};

CurvatureField curvature_field(const ParamSurfacePatch& patch, const SampleGrid& grid);

struct ResidualResult {
  double max_abs = 0.0;
  CurvatureField field;
  std::vector<double> residual;  // aligned with field.samples
};

/// max |aH + bK - c| over the grid, using the patch's normal convention.
ResidualResult weingarten_residual(const ParamSurfacePatch& patch, const WeingartenParams& params,
                                   const SampleGrid& grid);

/// Partials of `position` by central differences. Independent of any
/// analytic derivative code and used as the oracle for it.
SurfaceJet finite_difference_jet(const std::function<Vec3(double, double)>& position, double u, double v,
                                 double h = 1e-4);

/// Patch whose partials all come from finite differences of `source.position`.
ParamSurfacePatch finite_difference_patch(const ParamSurfacePatch& source, double h = 1e-4);

void write_curvature_csv(std::ostream& out, const CurvatureField& field);

/// u, v, H, K, residual.
void write_residual_csv(std::ostream& out, const ResidualResult& result);

}  // namespace weingarten::geom
