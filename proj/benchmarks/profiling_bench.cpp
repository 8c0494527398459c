#include <benchmark/benchmark.h>

#include <sstream>

#include "profbench/catalog.hpp"
#include "profbench/profiling.hpp"
#include "profbench/similarity.hpp"
#include "profbench/stats.hpp"
#include "synthetic.hpp"

namespace {

using namespace profbench;

const testing::SyntheticData& data() {
  static const auto d = testing::make_synthetic({});
  return d;
}

void BM_ProfileContext(benchmark::State& state) {
  const auto type = static_cast<AttributeType>(state.range(0));
  data();
  for (auto _ : state) {
    ProfileContext ctx(data().dataset, data().catalog, type);
    benchmark::DoNotOptimize(ctx.user_count());
  }
}
BENCHMARK(BM_ProfileContext)
    ->Arg(static_cast<int>(AttributeType::genre))
    ->Arg(static_cast<int>(AttributeType::actor))
    ->Unit(benchmark::kMillisecond);

void BM_BuildProfiles(benchmark::State& state) {
  const auto method = static_cast<ProfileMethod>(state.range(0));
  const ProfileContext ctx(data().dataset, data().catalog, AttributeType::actor);
  const auto users = ctx.user_ids();
  for (auto _ : state) {
    for (const auto& u : users) benchmark::DoNotOptimize(build_profile(method, u, ctx));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(users.size()));
}
BENCHMARK(BM_BuildProfiles)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_Evaluate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(data().dataset, data().catalog));
}
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);

void BM_TopK(benchmark::State& state) {
  UserProfile p{"u", AttributeType::actor, ProfileMethod::li, {}};
  for (int i = 0; i < state.range(0); ++i) p.weights["a" + std::to_string(i)] = 1.0 / (1 + i % 17);
  for (auto _ : state) benchmark::DoNotOptimize(topk_binarize(p, 10));
}
BENCHMARK(BM_TopK)->Range(16, 4096);

void BM_FeaturePopularity(benchmark::State& state) {
  const auto cohort = group_cohort(data().dataset, std::nullopt, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(feature_popularity(data().dataset, data().catalog, AttributeType::actor, cohort));
  }
}
BENCHMARK(BM_FeaturePopularity)->Unit(benchmark::kMillisecond);

void BM_ParseCatalog(benchmark::State& state) {
  std::ostringstream out;
  write_catalog(out, data().catalog);
  const auto text = out.str();
  for (auto _ : state) {
    std::istringstream in(text);
    benchmark::DoNotOptimize(parse_catalog(in, "bench"));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseCatalog)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
