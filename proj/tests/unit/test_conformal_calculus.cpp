#include <cmath>

#include "doctest.h"
#include "tms/conformal_calculus.hpp"
#include "tms/error.hpp"

using namespace tms;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("grid construction and validation") {
  const NullGrid g = NullGrid::span(-1, 1, 0, 2, 5, 9);
  CHECK(g.hu == doctest::Approx(0.5));
  CHECK(g.hv == doctest::Approx(0.25));
  CHECK(g.u_end() == doctest::Approx(1.0));
  CHECK(g.v_end() == doctest::Approx(2.0));
  CHECK(g.size() == 45);
  CHECK(g.index(1, 2) == 11);
  CHECK(kind_of([] { NullGrid::span(0, 1, 0, 1, 2, 5).validate(); }) == ErrorKind::GridTooSmall);
  NullGrid bad = g;
  bad.hu = 0.0;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidGrid);
  CHECK(kind_of([&] { require_same_grid(g, NullGrid::span(-1, 1, 0, 2, 5, 7)); }) == ErrorKind::GridMismatch);
}

TEST_CASE("d' and d'' of u^2 v") {
  const NullGrid g = NullGrid::span(0, 2, 1, 3, 21, 21);
  const auto f = ScalarField::sample(g, [](double u, double v) { return u * u * v; });
  const OneForm dp = d_prime(f), dpp = d_double_prime(f);
  const std::size_t i = 10, j = 10;  // (1, 2)
  CHECK(g.u(i) == doctest::Approx(1.0));
  CHECK(g.v(j) == doctest::Approx(2.0));
  CHECK(dp.a[g.index(i, j)] == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(dp.b[g.index(i, j)] == 0.0);
  CHECK(dpp.a[g.index(i, j)] == 0.0);
  CHECK(dpp.b[g.index(i, j)] == doctest::Approx(1.0).epsilon(1e-10));
  const OneForm s = star(OneForm{g, {1.0}, {2.0}});
  CHECK(s.a[0] == 1.0);
  CHECK(s.b[0] == -2.0);
}

TEST_CASE("finite differences are fourth order") {
  auto err = [](std::size_t n) {
    const NullGrid g = NullGrid::span(0, 1, 0, 1, n, n);
    const auto f = ScalarField::sample(g, [](double u, double v) { return std::sin(2 * u) * std::exp(v); });
    const auto fu = partial_u(f), fvv = partial_vv(f), fuv = partial_uv(f);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double u = g.u(i), v = g.v(j);
        e = std::fmax(e, std::fabs(fu.at(i, j) - 2 * std::cos(2 * u) * std::exp(v)));
        e = std::fmax(e, std::fabs(fvv.at(i, j) - std::sin(2 * u) * std::exp(v)));
        e = std::fmax(e, std::fabs(fuv.at(i, j) - 2 * std::cos(2 * u) * std::exp(v)));
      }
    return e;
  };
  const double e1 = err(21), e2 = err(41);
  CHECK(e1 < 1e-3);
  CHECK(e1 / e2 > 12.0);
}

TEST_CASE("polynomials of degree four are differentiated exactly") {
  const NullGrid g = NullGrid::span(-1, 1, -1, 1, 9, 9);
  const auto f = ScalarField::sample(g, [](double u, double v) { return u * u * u * u - 3 * u * v * v + v; });
  const auto fu = partial_u(f), fv = partial_v(f);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) {
      const double u = g.u(i), v = g.v(j);
      CHECK(fu.at(i, j) == doctest::Approx(4 * u * u * u - 3 * v * v).epsilon(1e-11).scale(1.0));
      CHECK(fv.at(i, j) == doctest::Approx(-6 * u * v + 1).epsilon(1e-11).scale(1.0));
    }
}

TEST_CASE("d'Alembertian") {
  const NullGrid g = NullGrid::span(-1, 1, -1, 1, 11, 11);
  const auto f = ScalarField::sample(g, [](double u, double v) { return u * v; });
  const ScalarField zero(g, 0.0);
  const auto box = dalembertian(f, zero);
  CHECK(interior_max_abs(box, 1) == doctest::Approx(4.0).epsilon(1e-10));
  const auto omega = ScalarField::sample(g, [](double u, double) { return u; });
  const auto box2 = dalembertian(f, omega);
  CHECK(box2.at(3, 4) == doctest::Approx(4.0 * std::exp(-g.u(3))).epsilon(1e-10));
  // -f_xx + f_yy for f = x^2 with x = (u - v)/2 equals -2.
  const auto fx = ScalarField::sample(g, [](double u, double v) { return 0.25 * (u - v) * (u - v); });
  CHECK(dalembertian(fx, zero).at(5, 5) == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("harmonic splitting") {
  const NullGrid g = NullGrid::span(-1, 1, -0.5, 1.5, 17, 13);
  CHECK(kind_of([&] {
          harmonic_split(ScalarField::sample(g, [](double u, double v) { return u * v; }));
        }) == ErrorKind::NotHarmonic);
  const auto h = ScalarField::sample(g, [](double u, double v) { return std::sin(u) + v * v * v; });
  const HarmonicSplit s = harmonic_split(h);
  double e = 0.0;
  for (std::size_t i = 0; i < g.nu; ++i)
    for (std::size_t j = 0; j < g.nv; ++j) e = std::fmax(e, std::fabs(s(i, j) - h.at(i, j)));
  CHECK(e < 1e-14);
  CHECK(s.g[0] == 0.0);
  CHECK(s.residual < 1e-9);
  CHECK(default_harmonic_tolerance(h) > 1e-6);
}

TEST_CASE("holomorphy residual") {
  const NullGrid g = NullGrid::span(0, 1, 0, 1, 11, 11);
  const auto fmap = ScalarField::sample(g, [](double u, double) { return u * u; });
  const auto gmap = ScalarField::sample(g, [](double, double v) { return std::cos(v); });
  const auto [a, b] = holomorphy_residual(fmap, gmap);
  CHECK(a < 1e-14);
  CHECK(b < 1e-14);
  const auto swapped_f = ScalarField::sample(g, [](double, double v) { return v; });
  const auto swapped_g = ScalarField::sample(g, [](double u, double) { return u; });
  const auto [c, d] = holomorphy_residual(swapped_f, swapped_g);
  CHECK(c == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
}
