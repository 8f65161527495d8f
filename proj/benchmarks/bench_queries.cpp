// Micro benchmarks for the hot paths: single queries per index variant,
// bulk build, batch strategies, join and kNN. Run with --benchmark_filter=...
// to narrow; dataset sizes are chosen so a full run stays in the seconds.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "tilegrid/tilegrid.hpp"

namespace {

using namespace tilegrid;

constexpr int kGrid = 128;
constexpr size_t kObjects = 100000;

const std::vector<ObjectRecord>& dataset() {
  static const std::vector<ObjectRecord> d =
      gen_uniform_mbrs(kObjects, 0.0015, 42);
  return d;
}

std::vector<Mbr> windows(size_t n, double area_ratio, uint64_t seed) {
  WorkloadOptions opt;
  opt.kind = QueryKind::window;
  opt.count = n;
  opt.area_ratio = area_ratio;
  opt.seed = seed;
  std::vector<Mbr> out;
  for (const QuerySpec& q : gen_workload(opt)) out.push_back(q.window);
  return out;
}

GridConfig grid() { return {kGrid, kGrid, {0.0, 0.0, 1.0, 1.0}}; }

Variant variant_arg(int64_t a) {
  switch (a) {
    case 0: return Variant::one_level;
    case 1: return Variant::two_level;
    default: return Variant::two_level_plus;
  }
}

const char* variant_name(int64_t a) {
  switch (a) {
    case 0: return "one-level";
    case 1: return "two-level";
    default: return "two-level+";
  }
}

void BM_Build(benchmark::State& state) {
  const auto& objs = dataset();
  for (auto _ : state) {
    GridIndex idx = GridIndex::build(grid(), variant_arg(state.range(0)), objs);
    benchmark::DoNotOptimize(idx.total_entries());
  }
  state.SetItemsProcessed(state.iterations() * (int64_t)objs.size());
  state.SetLabel(variant_name(state.range(0)));
}
BENCHMARK(BM_Build)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_WindowQuery(benchmark::State& state) {
  GridIndex idx =
      GridIndex::build(grid(), variant_arg(state.range(0)), dataset());
  auto ws = windows(512, 0.001, 7);
  size_t i = 0;
  for (auto _ : state) {
    auto r = window_query(idx, ws[i++ & 511]);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetLabel(variant_name(state.range(0)));
}
BENCHMARK(BM_WindowQuery)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

void BM_DiskQuery(benchmark::State& state) {
  GridIndex idx = GridIndex::build(grid(), Variant::two_level, dataset());
  WorkloadOptions opt;
  opt.kind = QueryKind::disk;
  opt.count = 512;
  opt.area_ratio = 0.001;
  opt.seed = 8;
  auto qs = gen_workload(opt);
  size_t i = 0;
  for (auto _ : state) {
    auto r = disk_query(idx, qs[i++ & 511].disk);
    benchmark::DoNotOptimize(r.data());
  }
}
BENCHMARK(BM_DiskQuery)->Unit(benchmark::kMicrosecond);

void BM_Batch(benchmark::State& state) {
  GridIndex idx = GridIndex::build(grid(), Variant::two_level, dataset());
  auto ws = windows(2000, 0.001, 9);
  std::vector<RangeQuery> queries(ws.begin(), ws.end());
  const bool tiles = state.range(0) != 0;
  const int threads = (int)state.range(1);
  for (auto _ : state) {
    BatchResult r = tiles ? batch_tiles_based(idx, queries, threads)
                          : batch_queries_based(idx, queries, threads);
    benchmark::DoNotOptimize(r.per_query.data());
  }
  state.SetItemsProcessed(state.iterations() * (int64_t)queries.size());
  state.SetLabel(std::string(tiles ? "tiles@" : "queries@") +
                 std::to_string(threads));
}
BENCHMARK(BM_Batch)
    ->Args({0, 1})
    ->Args({0, 4})
    ->Args({1, 1})
    ->Args({1, 4})
    ->Unit(benchmark::kMillisecond);

void BM_Join(benchmark::State& state) {
  auto left = gen_uniform_mbrs(20000, 0.002, 21);
  auto right = gen_uniform_mbrs(20000, 0.002, 22);
  GridIndex li = GridIndex::build(grid(), Variant::two_level, left, true);
  GridIndex ri = GridIndex::build(grid(), Variant::two_level, right, true);
  for (auto _ : state) {
    JoinResult r = spatial_join(li, ri, 1);
    benchmark::DoNotOptimize(r.pairs.data());
  }
}
BENCHMARK(BM_Join)->Unit(benchmark::kMillisecond);

void BM_Knn(benchmark::State& state) {
  GridIndex idx = GridIndex::build(grid(), Variant::two_level, dataset());
  std::vector<Point> pts;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 512; ++i) pts.push_back({uni(rng), uni(rng)});
  const uint32_t k = (uint32_t)state.range(0);
  size_t i = 0;
  for (auto _ : state) {
    auto r = knn_query(idx, pts[i++ & 511], k);
    benchmark::DoNotOptimize(r.data());
  }
}
BENCHMARK(BM_Knn)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
