#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "tms/birkhoff.hpp"
#include "tms/gallery.hpp"
#include "tms/loop_weierstrass.hpp"
#include "tms/minkowski_algebra.hpp"
#include "tms/null_curves.hpp"
#include "tms/surface_geometry.hpp"

using namespace tms;

namespace {

Potential enneper_potential() {
  return Potential::from_primitives([](double u) { return u; }, [](double) { return 1.0; },
                                    [](double v) { return v; }, [](double) { return 1.0; });
}

NullGrid square(std::size_t n) { return NullGrid::span(-0.5, 0.5, -0.5, 0.5, n, n); }

void BM_AdjointAction(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1, 1);
  const double th = d(rng);
  const Mat2 g = Mat2::diag(std::exp(th), std::exp(-th)) * Mat2{1, d(rng), 0, 1};
  Vec3M v{d(rng), d(rng), d(rng)};
  for (auto _ : state) {
    v = adjoint_action(g, v) * 0.5;
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_AdjointAction);

void BM_WeierstrassImmersion(benchmark::State& state) {
  const NullGrid g = square(static_cast<std::size_t>(state.range(0)));
  const Potential pot = enneper_potential();
  for (auto _ : state) benchmark::DoNotOptimize(weierstrass_immersion(pot, g));
}
BENCHMARK(BM_WeierstrassImmersion)->Arg(51)->Arg(101)->Arg(201);

void BM_SecondFundamentalAnalytic(benchmark::State& state) {
  const SurfacePatch p = make_enneper_cousin(1.0, square(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(second_fundamental(p));
}
BENCHMARK(BM_SecondFundamentalAnalytic)->Arg(51)->Arg(101);

void BM_SecondFundamentalFiniteDifference(benchmark::State& state) {
  const SurfacePatch p = make_enneper_cousin(1.0, square(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(second_fundamental(p, DerivativePreference::FiniteDifference));
}
BENCHMARK(BM_SecondFundamentalFiniteDifference)->Arg(51)->Arg(101);

void BM_GaussMap(benchmark::State& state) {
  const SurfacePatch p = make_enneper_cousin(1.0, square(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_map(p));
}
BENCHMARK(BM_GaussMap)->Arg(51);

void BM_IntegrateFrame(benchmark::State& state) {
  const NullGrid g = NullGrid::span(0.0, 1.0, 0.0, 1.0, static_cast<std::size_t>(state.range(0)),
                                    static_cast<std::size_t>(state.range(0)));
  const FundamentalData fd = metric_and_hopf(enneper_potential(), g);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_frame(fd, 1.0));
}
BENCHMARK(BM_IntegrateFrame)->Arg(51)->Arg(101);

void BM_BirkhoffFactorize(benchmark::State& state) {
  const double s = 1.0 / std::sqrt(1.25);
  const LaurentLoop g{{-1, Mat2{0, -s * 0.5, 0, 0}}, {0, Mat2::diag(s, s)}, {1, Mat2{0, 0, s * 0.5, 0}}};
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(birkhoff_factorize(g, BirkhoffOrder::MinusFirst, degree));
}
BENCHMARK(BM_BirkhoffFactorize)->Arg(2)->Arg(4)->Arg(8);

void BM_NullHelixOde(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(null_helix_ode(1.0, -1.0, 1.0, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_NullHelixOde)->Arg(201)->Arg(2001);

void BM_RevolutionSurface(benchmark::State& state) {
  const NullGrid g = square(51);
  const int which = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(make_revolution_surface(which, 1.0, which == 3 ? 0.0 : 1.0, g));
}
BENCHMARK(BM_RevolutionSurface)->DenseRange(1, 4);

}  // namespace
