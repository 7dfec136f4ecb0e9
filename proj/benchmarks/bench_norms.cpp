#include <benchmark/benchmark.h>

#include "vex/embedlab.hpp"
#include "vex/spaces.hpp"

namespace {

using namespace vex;

GridFunction ramp(int level) {
  GridFunction f(Box::cube(1, -2, 2), level);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    f.values[i] = 0.25 + (i % 17) * 0.125;
  return f;
}

void BM_luxemburg_constant_p(benchmark::State& state) {
  const GridFunction f = ramp(static_cast<int>(state.range(0)));
  const ExponentFunction p = ExponentFunction::constant(1, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(f, p));
}
BENCHMARK(BM_luxemburg_constant_p)->Arg(6)->Arg(8)->Arg(10);

void BM_luxemburg_variable_p(benchmark::State& state) {
  const GridFunction f = ramp(static_cast<int>(state.range(0)));
  FamilyParams par;
  par.base = 2.0;
  par.amplitude = 1.0;
  const ExponentFunction p = make_standard_exponent(1, ExponentFamily::log_perturbed, par);
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(f, p));
}
BENCHMARK(BM_luxemburg_variable_p)->Arg(6)->Arg(8)->Arg(10);

void BM_space_norm_besov(benchmark::State& state) {
  const int J = static_cast<int>(state.range(0));
  const Box box = Box::cube(1, -2, 2);
  const auto fam = find_family(standard_families(1, box), "random_sparse");
  const CoefficientField gamma = fam.build(J, 7);
  const SpaceSpec spec =
      make_space(SpaceKind::besov, ExponentFunction::constant(1, 2.0),
                 ExponentFunction::constant(1, 2.0), SmoothnessFunction::constant(1, 0.5), J,
                 box);
  for (auto _ : state) benchmark::DoNotOptimize(space_norm(gamma, spec, J));
}
BENCHMARK(BM_space_norm_besov)->Arg(4)->Arg(6)->Arg(8);

void BM_space_norm_triebel_variable(benchmark::State& state) {
  const int J = static_cast<int>(state.range(0));
  const Box box = Box::cube(1, -2, 2);
  const auto fam = find_family(standard_families(1, box), "random_sparse");
  const CoefficientField gamma = fam.build(J, 7);
  FamilyParams par;
  par.base = 2.0;
  par.amplitude = 1.0;
  const SpaceSpec spec =
      make_space(SpaceKind::triebel, make_standard_exponent(1, ExponentFamily::log_perturbed, par),
                 ExponentFunction::constant(1, 2.0), SmoothnessFunction::constant(1, 0.5), J,
                 box);
  for (auto _ : state) benchmark::DoNotOptimize(space_norm(gamma, spec, J + 2));
}
BENCHMARK(BM_space_norm_triebel_variable)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
