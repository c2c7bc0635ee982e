#include <random>
#include <sstream>

#include "../support/surfaces.hpp"
#include "doctest.h"
#include "weingarten/error.hpp"
#include "weingarten/geomcore.hpp"

using namespace weingarten;
using namespace weingarten::testing;

TEST_CASE("fundamental forms of closed-form surfaces") {
  SUBCASE("sphere coordinates are orthogonal") {
    const auto ff = geom::fundamental_forms(sphere(1.0), 0.3, 1.1);
    CHECK(ff.E > 0);
    CHECK(ff.G > 0);
    CHECK(ff.F == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("cylinder of radius 2") {
    const auto ff = geom::fundamental_forms(cylinder(2.0), 0.2, 0.7);
    CHECK(ff.E == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(ff.F) < 1e-14);
    CHECK(ff.G == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(std::abs(ff.e) < 1e-14);
    CHECK(std::abs(ff.f) < 1e-14);
    CHECK(std::abs(ff.g) == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("plane is flat") {
    const auto ff = geom::fundamental_forms(plane(), 0.1, -0.4);
    CHECK(ff.e == 0.0);
    CHECK(ff.f == 0.0);
    CHECK(ff.g == 0.0);
  }
}

TEST_CASE("curvatures of closed-form surfaces") {
  SUBCASE("sphere of radius 2 is umbilic") {
    const auto c = geom::curvatures(sphere(2.0), -0.4, 2.0);
    CHECK(std::abs(c.H) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(c.K == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(std::abs(c.k1 - c.k2) < 1e-6);
    CHECK(std::abs(c.k1) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("cylinder of radius 2") {
    const auto c = geom::curvatures(cylinder(2.0), 0.0, 1.0);
    CHECK(std::abs(c.K) < 1e-15);
    CHECK(std::abs(c.H) == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("catenoid is minimal") {
    const auto cat = catenoid();
    const auto grid = geom::SampleGrid::uniform(cat.domain, 15, 15);
    const auto field = geom::curvature_field(cat, grid);
    for (const auto& s : field.samples) CHECK(std::abs(s.curv.H) < 1e-8);
  }
}

TEST_CASE("degenerate points are rejected") {
  geom::ParamSurfacePatch cone_tip;
  cone_tip.domain = {0, 1, 0, 6.3};
  cone_tip.jet = [](double u, double v) {
    geom::SurfaceJet j;
    j.x = geom::Vec3(u * std::cos(v), u * std::sin(v), u);
    j.xu = geom::Vec3(std::cos(v), std::sin(v), 1);
    j.xv = geom::Vec3(-u * std::sin(v), u * std::cos(v), 0);
    j.xuv = geom::Vec3(-std::sin(v), std::cos(v), 0);
    j.xvv = geom::Vec3(-u * std::cos(v), -u * std::sin(v), 0);
    return j;
  };
  try {
    geom::curvatures(cone_tip, 0.0, 1.0);
    FAIL("expected DegeneratePoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegeneratePoint);
  }
  CHECK_NOTHROW(geom::curvatures(cone_tip, 0.5, 1.0));
  CHECK_THROWS_AS(geom::curvatures(cone_tip, 2.0, 1.0), Error);
}

TEST_CASE("weingarten residual") {
  const geom::SampleGrid grid{{-0.5, 0.0, 0.5}, {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}};
  SUBCASE("unit sphere satisfies 2H = 2") {
    const auto r = geom::weingarten_residual(sphere(1.0), {2, 0, 2}, grid);
    CHECK(r.max_abs < 1e-10);
    CHECK(r.residual.size() == 18);
  }
  SUBCASE("unit cylinder satisfies 2H = 1") {
    CHECK(geom::weingarten_residual(cylinder(1.0), {2, 0, 1}, grid).max_abs < 1e-10);
  }
  SUBCASE("unit cylinder misses 2H = 0.9 by 0.1") {
    const auto r = geom::weingarten_residual(cylinder(1.0), {2, 0, 0.9}, grid);
    CHECK(r.max_abs == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(std::abs(r.max_abs - 0.1) < 1e-10);
  }
}

namespace {

std::vector<geom::ParamSurfacePatch> random_patches(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> coef(-0.8, 0.8), rad(0.5, 3.0);
  std::vector<geom::ParamSurfacePatch> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(cubic_graph(coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)));
    const double R = rad(rng) + 1.0;
    out.push_back(torus(R + 1.0, R * 0.5));
    out.push_back(sphere(rad(rng)));
  }
  out.push_back(catenoid());
  return out;
}

}  // namespace

TEST_CASE("curvature invariants on random patches") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (const auto& patch : random_patches(rng, 8)) {
    const auto& d = patch.domain;
    const auto fd = geom::finite_difference_patch(patch, 1e-4);
    for (int k = 0; k < 10; ++k) {
      const double u = d.u0 + unit(rng) * (d.u1 - d.u0);
      const double v = d.v0 + unit(rng) * (d.v1 - d.v0);
      const auto c = geom::curvatures(patch, u, v);
      // Product and sum of principal curvatures.
      CHECK(close_rel(c.k1 * c.k2, c.K, 1e-10));
      CHECK(close_rel(c.k1 + c.k2, 2 * c.H, 1e-10));
      CHECK(c.H * c.H - c.K >= -1e-12);

      // Finite-difference oracle.
      const auto cf = geom::curvatures(fd, u, v);
      CHECK(close_rel(cf.H, c.H, 1e-5));
      CHECK(close_rel(cf.K, c.K, 1e-5));

      // Normal flip.
      const auto cflip = geom::curvatures(patch.flipped(), u, v);
      CHECK(close_rel(cflip.H, -c.H, 1e-14));
      CHECK(close_rel(cflip.K, c.K, 1e-14));
      CHECK(close_rel(cflip.k1, -c.k2, 1e-12));
      CHECK(close_rel(cflip.k2, -c.k1, 1e-12));

      // Rescaled parameter.
      const double alpha = 0.25 + 3.0 * unit(rng);
      const auto cs = geom::curvatures(rescale_u(patch, alpha), u * alpha, v);
      CHECK(std::abs(cs.H - c.H) < 1e-8);
      CHECK(std::abs(cs.K - c.K) < 1e-8);
    }
  }
}

TEST_CASE("analytic partials agree with finite differences") {
  const auto t = torus(3.0, 1.0);
  const auto pos = [&](double u, double v) { return t.position(u, v); };
  for (double u : {0.3, 1.7, 4.0}) {
    const auto a = t.jet(u, 0.9);
    const auto n = geom::finite_difference_jet(pos, u, 0.9, 1e-4);
    for (auto [x, y] : {std::pair{a.xu, n.xu}, {a.xv, n.xv}, {a.xuu, n.xuu}, {a.xuv, n.xuv}, {a.xvv, n.xvv}}) {
      CHECK((x - y).norm() <= 1e-6 * std::max(1.0, x.norm()));
    }
  }
}

TEST_CASE("curvature field CSV") {
  const auto field = geom::curvature_field(cylinder(1.0), {{0.0}, {0.0, 1.0}});
  std::ostringstream os;
  geom::write_curvature_csv(os, field);
  const std::string text = os.str();
  CHECK(text.rfind("u,v,E,F,G,e,f,g,H,K,k1,k2\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}
