#include "weingarten/geomcore.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "weingarten/error.hpp"
#include "weingarten/export.hpp"

namespace weingarten::geom {

ParamSurfacePatch ParamSurfacePatch::flipped() const {
  ParamSurfacePatch out = *this;
  out.normal = normal == NormalConvention::Forward ? NormalConvention::Flipped : NormalConvention::Forward;
  return out;
}

FundamentalForms fundamental_forms(const SurfaceJet& jet, NormalConvention normal) {
  const Vec3 cross = jet.xu.cross(jet.xv);
  const double norm = cross.norm();
  if (!(norm >= kDegenerateThreshold)) {
    std::ostringstream msg;
    msg << "|X_u x X_v| = " << norm << " at point (" << jet.x.transpose() << ")";
    throw Error(ErrorKind::DegeneratePoint, msg.str());
  }
  Vec3 n = cross / norm;
  if (normal == NormalConvention::Flipped) n = -n;

  FundamentalForms ff;
  ff.E = jet.xu.dot(jet.xu);
  ff.F = jet.xu.dot(jet.xv);
  ff.G = jet.xv.dot(jet.xv);
  ff.e = jet.xuu.dot(n);
  ff.f = jet.xuv.dot(n);
  ff.g = jet.xvv.dot(n);
  return ff;
}

FundamentalForms fundamental_forms(const ParamSurfacePatch& patch, double u, double v) {
  if (!patch.domain.contains(u, v)) {
    std::ostringstream msg;
    msg << "(" << u << ", " << v << ") outside patch domain";
    throw Error(ErrorKind::InvalidParams, msg.str());
  }
  return fundamental_forms(patch.jet(u, v), patch.normal);
}

Curvatures curvatures(const FundamentalForms& ff) {
  const double det = ff.E * ff.G - ff.F * ff.F;
  if (!(det > 0.0)) throw Error(ErrorKind::DegeneratePoint, "EG - F^2 is not positive");
  Curvatures c;
  c.H = (ff.e * ff.G - 2.0 * ff.f * ff.F + ff.g * ff.E) / (2.0 * det);
  c.K = (ff.e * ff.g - ff.f * ff.f) / det;
  const double disc = std::sqrt(std::max(c.H * c.H - c.K, 0.0));
  c.k1 = c.H + disc;
  c.k2 = c.H - disc;
  return c;
}

Curvatures curvatures(const ParamSurfacePatch& patch, double u, double v) {
  return curvatures(fundamental_forms(patch, u, v));
}

SampleGrid SampleGrid::uniform(const Domain& d, std::size_t nu, std::size_t nv, bool interior) {
  auto axis = [interior](double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
      out[0] = 0.5 * (lo + hi);
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = interior ? lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n)
                        : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
  };
  return {axis(d.u0, d.u1, nu), axis(d.v0, d.v1, nv)};
}

CurvatureField curvature_field(const ParamSurfacePatch& patch, const SampleGrid& grid) {
  CurvatureField field;
  field.normal = patch.normal;
  field.samples.reserve(grid.u.size() * grid.v.size());
  for (double u : grid.u) {
    for (double v : grid.v) {
      CurvatureSample s;
      s.u = u;
      s.v = v;
      s.forms = fundamental_forms(patch, u, v);
      s.curv = curvatures(s.forms);
      field.samples.push_back(s);
    }
  }
  return field;
}

ResidualResult weingarten_residual(const ParamSurfacePatch& patch, const WeingartenParams& p,
                                   const SampleGrid& grid) {
  ResidualResult out;
  out.field = curvature_field(patch, grid);
  out.residual.reserve(out.field.samples.size());
  for (const auto& s : out.field.samples) {
    const double r = p.a * s.curv.H + p.b * s.curv.K - p.c;
    out.residual.push_back(r);
    out.max_abs = std::max(out.max_abs, std::abs(r));
  }
  return out;
}

SurfaceJet finite_difference_jet(const std::function<Vec3(double, double)>& X, double u, double v, double h) {
  SurfaceJet j;
  j.x = X(u, v);
  const Vec3 xpu = X(u + h, v), xmu = X(u - h, v);
  const Vec3 xpv = X(u, v + h), xmv = X(u, v - h);
  j.xu = (xpu - xmu) / (2.0 * h);
  j.xv = (xpv - xmv) / (2.0 * h);
  j.xuu = (xpu - 2.0 * j.x + xmu) / (h * h);
  j.xvv = (xpv - 2.0 * j.x + xmv) / (h * h);
  j.xuv = (X(u + h, v + h) - X(u + h, v - h) - X(u - h, v + h) + X(u - h, v - h)) / (4.0 * h * h);
  return j;
}

ParamSurfacePatch finite_difference_patch(const ParamSurfacePatch& source, double h) {
  ParamSurfacePatch out;
  out.domain = source.domain;
  out.normal = source.normal;
  auto pos = [src = source.jet](double u, double v) { return src(u, v).x; };
  out.jet = [pos, h](double u, double v) { return finite_difference_jet(pos, u, v, h); };
  return out;
}

void write_curvature_csv(std::ostream& out, const CurvatureField& field) {
  io::CsvWriter csv(out, {"u", "v", "E", "F", "G", "e", "f", "g", "H", "K", "k1", "k2"});
  for (const auto& s : field.samples) {
    csv.row({s.u, s.v, s.forms.E, s.forms.F, s.forms.G, s.forms.e, s.forms.f, s.forms.g, s.curv.H, s.curv.K,
             s.curv.k1, s.curv.k2});
  }
}

void write_residual_csv(std::ostream& out, const ResidualResult& result) {
  io::CsvWriter csv(out, {"u", "v", "H", "K", "residual"});
  for (std::size_t i = 0; i < result.field.samples.size(); ++i) {
    const auto& s = result.field.samples[i];
    csv.row({s.u, s.v, s.curv.H, s.curv.K, result.residual[i]});
  }
}

}  // namespace weingarten::geom
