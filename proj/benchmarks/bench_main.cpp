#include <benchmark/benchmark.h>

#include "orthoscalar/morphisms.hpp"
#include "orthoscalar/rigidity.hpp"
#include "orthoscalar/synthesis.hpp"

using namespace orthoscalar;

namespace {

Representation star_rep(std::size_t n, std::size_t centre, std::uint64_t seed) {
  DimensionVector dims{centre};
  Character chi{1.0};
  for (std::size_t i = 0; i < n; ++i) {
    dims.push_back(1);
    chi.push_back(static_cast<double>(centre) / static_cast<double>(n));
  }
  SynthesisOptions opts;
  opts.seed = seed;
  return synthesize(star_quiver(n), dims, chi, opts).representation;
}

void BM_HomSpace(benchmark::State& state) {
  const Representation t = star_rep(5, static_cast<std::size_t>(state.range(0)), 1);
  const Representation s = direct_sum(t, t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hom_space(s, s, Category::star).dimension());
  }
}
BENCHMARK(BM_HomSpace)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Synthesize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(star_rep(n, 2, seed++).total_dim());
  }
}
BENCHMARK(BM_Synthesize)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Lemma1(benchmark::State& state) {
  const auto size = static_cast<Eigen::Index>(state.range(0));
  RescalingInstance inst;
  inst.z = Matrix::Zero(size, size);
  inst.a = RealVector(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    inst.a(i) = 1.0 + static_cast<double>(i % 3);
    for (Eigen::Index j = 0; j < size; ++j) {
      if (i % 3 == j % 3) inst.z(i, j) = Complex(1.0 + static_cast<double>(i), static_cast<double>(j));
    }
  }
  inst.b = inst.a;
  inst.w = inst.z;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lemma1_certify(inst).steps.size());
  }
}
BENCHMARK(BM_Lemma1)->Arg(4)->Arg(8)->Arg(16);

void BM_Decompose(benchmark::State& state) {
  const Representation t = star_rep(4, 2, 3);
  std::vector<Representation> parts(static_cast<std::size_t>(state.range(0)), t);
  const Representation s = direct_sum(parts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(s, 0).summands.size());
  }
}
BENCHMARK(BM_Decompose)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
