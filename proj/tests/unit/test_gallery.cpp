#include <cmath>

#include "doctest.h"
#include "tms/error.hpp"
#include "tms/gallery.hpp"
#include "tms/null_curves.hpp"

using namespace tms;

namespace {

double patch_distance(const SurfacePatch& a, const SurfacePatch& b) {
  double e = 0.0;
  for (std::size_t k = 0; k < a.points.values.size(); ++k) e = std::fmax(e, (a.points.values[k] - b.points.values[k]).max_abs());
  return e;
}

}  // namespace

TEST_CASE("catenoid and helicoid closed forms") {
  const NullGrid g = NullGrid::span(0.25, 1.25, -1.25, -0.25, 11, 11);
  const SurfacePatch cat = make_catenoid(g), hel = make_helicoid(g);
  const double r2 = std::sqrt(2.0);
  auto X = [r2](double u) { return Vec3M{std::sinh(r2 * u) / 2, std::cosh(r2 * u) / 2, u / r2}; };
  double e = 0.0;
  for (std::size_t i = 0; i < 11; ++i)
    for (std::size_t j = 0; j < 11; ++j) {
      e = std::fmax(e, (cat.at(i, j) - (X(g.u(i)) - X(g.v(j)))).max_abs());
      e = std::fmax(e, (hel.at(i, j) - (X(g.u(i)) + X(g.v(j)))).max_abs());
    }
  CHECK(e < 1e-12);
  const SurfacePatch at0 = make_catenoid(NullGrid::span(0, 1, 0, 1, 3, 3));
  CHECK(at0.at(0, 0).max_abs() == 0.0);
  CHECK(patch_distance(conjugate_surface(catenoid_curves(), g), hel) < 1e-12);

  const FundamentalData fc = second_fundamental(cat), fh = second_fundamental(hel);
  for (std::size_t i = 0; i < 11; i += 5)
    for (std::size_t j = 0; j < 11; j += 5) {
      const double c = std::cosh(r2 * (g.u(i) - g.v(j)));
      CHECK(fc.eomega.at(i, j) == doctest::Approx(c - 1));
      CHECK(fc.Q.at(i, j) == doctest::Approx(1.0));
      CHECK(fc.R.at(i, j) == doctest::Approx(1.0));
      CHECK(fc.K.at(i, j) == doctest::Approx(-4 / ((c - 1) * (c - 1))));
      CHECK(fh.eomega.at(i, j) == doctest::Approx(1 - c));
      CHECK(fh.Q.at(i, j) == doctest::Approx(-1.0));
      CHECK(fh.K.at(i, j) == doctest::Approx(4 / ((c - 1) * (c - 1))));
    }
  CHECK_THROWS_AS(second_fundamental(make_catenoid(NullGrid::span(-0.5, 0.5, -0.5, 0.5, 11, 11))), Error);
}

TEST_CASE("Enneper cousins") {
  const NullGrid g = NullGrid::span(-0.5, 0.5, -0.5, 0.5, 21, 21);
  const FundamentalData f = second_fundamental(make_enneper_cousin(1.0, g));
  CHECK(f.K.at(10, 10) == doctest::Approx(-4.0));
  const FundamentalData m = second_fundamental(make_enneper_cousin(-1.0, g));
  double gap = 1e9;
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(m.Q.values[k] == doctest::Approx(-1.0));
    gap = std::fmin(gap, std::fabs(m.Q.values[k] - m.R.values[k]));
  }
  CHECK(gap == doctest::Approx(2.0));
  for (double eps : {1.0, -1.0}) {
    const Potential pot = Potential::from_primitives([eps](double u) { return eps * u; }, [eps](double) { return eps; },
                                                     [](double v) { return v; }, [](double) { return 1.0; });
    CHECK(patch_distance(make_enneper_cousin(eps, g), weierstrass_immersion(pot, g)) < 1e-10);
  }
  try {
    make_enneper_cousin(-1.0, NullGrid::span(0, 2, 0, 2, 5, 5));
    FAIL("expected OutsideBigCell");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutsideBigCell);
    CHECK(e.site().has_value());
  }
  CHECK_THROWS_AS(make_enneper_cousin(0.5, g), Error);
}

TEST_CASE("parabolic null cylinder") {
  const NullGrid g = NullGrid::span(-0.5, 0.5, -0.5, 0.5, 11, 11);
  const SurfacePatch p = make_parabolic_null_cylinder(g);
  for (const Vec3M& x : p.points.values) CHECK(2 * x.x3 == doctest::Approx((-x.x1 + x.x2) * (-x.x1 + x.x2)));
  CHECK(p.at(5, 5).max_abs() < 1e-15);

  NullCurve c;
  for (std::size_t i = 0; i < 11; ++i) {
    const double u = g.u(i);
    c.s.push_back(u);
    c.points.push_back({-(u + u * u * u / 3) / 2, (u - u * u * u / 3) / 2, u * u / 2});
    c.d1.push_back({-(1 + u * u) / 2, (1 - u * u) / 2, u});
    c.d2.push_back({-u, -u, 1});
    c.d3.push_back({-1, -1, 0});
  }
  CHECK(patch_distance(b_scroll(c, -0.25, 0.25, 11), p) < 1e-12);
}

TEST_CASE("surfaces of revolution") {
  for (int which = 1; which <= 4; ++which) {
    const double b = which == 3 ? 0.0 : 1.0;
    const double lim = which == 3 ? 0.99 : 0.5;
    const NullGrid g = NullGrid::span(-lim, lim, -lim, lim, 21, 21);
    const SurfacePatch p = make_revolution_surface(which, 1.0, b, g);
    CHECK(p.coordinates == CoordinateKind::General);
    CHECK(p.metadata.count("variant") == 1);
    CHECK(mean_curvature_residual(p).max_abs_H < 1e-8);
    const SurfacePatch fd = make_revolution_surface(which, 1.0, b, NullGrid::span(-lim, lim, -lim, lim, 101, 101));
    CHECK(mean_curvature_residual(fd, DerivativePreference::FiniteDifference).max_abs_H < 1e-5);
  }
  const SurfacePatch c1 = make_revolution_variant(1, "literal", 1.0, 0.0, NullGrid::span(-0.5, 0.5, -0.5, 0.5, 11, 11));
  CHECK(c1.at(5, 5).max_abs() < 1e-15);
  CHECK_THROWS_AS(make_revolution_surface(5, 1.0, 0.0, NullGrid::span(-0.5, 0.5, -0.5, 0.5, 11, 11)), Error);
  CHECK_THROWS_AS(make_revolution_surface(1, 0.0, 0.0, NullGrid::span(-0.5, 0.5, -0.5, 0.5, 11, 11)), Error);
  CHECK(revolution_variants(4).size() == 3);
}

TEST_CASE("example registry") {
  for (const std::string& name : example_names()) {
    const NamedExample ex = make_example(name);
    CHECK(ex.name == name);
    const SurfacePatch p = ex.generator(ex.default_grid);
    CHECK(mean_curvature_residual(p).max_abs_H < 1e-8);
    if (p.coordinates == CoordinateKind::Null) {
      const FundamentalData fd = second_fundamental(p);
      for (const Oracle& o : ex.oracles) {
        const ScalarField* f = o.field == "eomega" ? &fd.eomega
                               : o.field == "Q"    ? &fd.Q
                               : o.field == "R"    ? &fd.R
                               : o.field == "H"    ? &fd.H
                                                   : &fd.K;
        double e = 0.0;
        for (std::size_t i = 0; i < p.grid().nu; ++i)
          for (std::size_t j = 0; j < p.grid().nv; ++j)
            e = std::fmax(e, std::fabs(f->at(i, j) - o.value(p.grid().u(i), p.grid().v(j))));
        CHECK_MESSAGE(e < 1e-9, name << " " << o.field);
      }
    }
  }
  CHECK_THROWS_AS(make_example("torus"), Error);
  CHECK_THROWS_AS(make_example("catenoid", {{"eps", 1.0}}), Error);
  CHECK(make_example("enneper-cousin", {{"eps", -1.0}}).parameters.at("eps") == -1.0);
}
