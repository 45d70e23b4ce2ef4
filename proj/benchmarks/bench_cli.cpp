#include <benchmark/benchmark.h>

#ifdef TMS_BENCH_CLI

#include <sstream>
#include <string>
#include <vector>

#include "tmsurf/app.hpp"
#include "tmsurf/expr.hpp"

namespace {

int run_args(const std::vector<const char*>& argv) {
  std::ostringstream out, err;
  return tms::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

void BM_ParsePotential(benchmark::State& state) {
  const std::string text = "-(1+u^2)/2 + sinh(2*u)*cos(u)^3 - exp(u)/(1+u^4)";
  for (auto _ : state) benchmark::DoNotOptimize(tms::cli::parse_potential(text, 'u'));
}
BENCHMARK(BM_ParsePotential);

void BM_EvaluateParsed(benchmark::State& state) {
  const tms::cli::Expr e = tms::cli::parse_potential("-(1+u^2)/2 + sinh(2*u)*cos(u)^3", 'u');
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e(x));
    x += 1e-9;
  }
}
BENCHMARK(BM_EvaluateParsed);

void BM_GenerateObj(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(run_args({"tmsurf", "generate", "--example", "enneper-cousin", "--format", "obj"}));
}
BENCHMARK(BM_GenerateObj)->Unit(benchmark::kMillisecond);

void BM_Validate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_args({"tmsurf", "validate", "--example", "enneper-cousin"}));
}
BENCHMARK(BM_Validate)->Unit(benchmark::kMillisecond);

}  // namespace

#endif
