#include "kframes/kernels.hpp"
#include "kframes/operator_factory.hpp"
#include "kframes/partitioner.hpp"
#include "kframes/random_instances.hpp"

#include <benchmark/benchmark.h>

using namespace kframes;

static void BM_SzegoGram(benchmark::State& state) {
  Rng rng(1);
  const auto seq = sample_points(rng, PointFamily::uniform_disk, static_cast<int>(state.range(0)), 0.95);
  for (auto _ : state) benchmark::DoNotOptimize(szego_gram(seq));
}
BENCHMARK(BM_SzegoGram)->Arg(16)->Arg(128)->Arg(512);

static void BM_ProjectionPhiH2(benchmark::State& state) {
  Rng rng(2);
  const auto phi = random_blaschke(rng, 4, 0.8);
  const TruncationContext ctx{static_cast<int>(state.range(0)), 64};
  for (auto _ : state) benchmark::DoNotOptimize(projection_phi_H2(phi, ctx));
}
BENCHMARK(BM_ProjectionPhiH2)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_StConstruct(benchmark::State& state) {
  Rng rng(3);
  const int m = static_cast<int>(state.range(0));
  const auto seq = carleson_sequence(rng, m, 0.0, 0.9, 0.3);
  const auto q = random_psd(rng, static_cast<int>(seq.size()), 0.2);
  const TruncationContext ctx{256, 0};
  for (auto _ : state) benchmark::DoNotOptimize(st_construct(q, seq, ctx, 0.2));
}
BENCHMARK(BM_StConstruct)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_PartitionSpectral(benchmark::State& state) {
  Rng rng(4);
  const auto seq = radial_geometric(rng, static_cast<int>(state.range(0)), 0.9);
  const auto g = szego_gram(seq);
  for (auto _ : state) benchmark::DoNotOptimize(partition_spectral(g, 0.1));
}
BENCHMARK(BM_PartitionSpectral)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_PartitionCarleson(benchmark::State& state) {
  Rng rng(5);
  const auto seq = radial_geometric(rng, static_cast<int>(state.range(0)), 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(partition_carleson(seq, 0.1));
}
BENCHMARK(BM_PartitionCarleson)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
