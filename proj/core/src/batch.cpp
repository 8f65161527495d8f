#include "tilegrid/batch.hpp"

#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "scan_kernels.hpp"
#include "tilegrid/parallel.hpp"

namespace tilegrid {

int default_thread_count() {
  if (const char* env = std::getenv("TILEGRID_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

BatchResult batch_queries_based(const GridIndex& index,
                                const std::vector<RangeQuery>& queries,
                                int threads) {
  if (threads < 1) throw std::invalid_argument("thread count must be >= 1");
  BatchResult result;
  result.per_query.resize(queries.size());
  std::vector<QueryStats> worker_stats(static_cast<size_t>(threads));
  auto run_worker = [&](int t) {
    for (size_t q = static_cast<size_t>(t); q < queries.size();
         q += static_cast<size_t>(threads)) {
      QueryStats* st = &worker_stats[static_cast<size_t>(t)];
      if (const Mbr* w = std::get_if<Mbr>(&queries[q]))
        result.per_query[q] = window_query(index, *w, st);
      else
        result.per_query[q] = disk_query(index, std::get<Disk>(queries[q]), st);
    }
  };
  if (threads == 1) {
    run_worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(run_worker, t);
    for (std::thread& th : pool) th.join();
  }
  for (const QueryStats& st : worker_stats) result.stats.merge(st);
  return result;
}

namespace {

struct Subtask {
  uint32_t query = 0;
  TileTask task;
  bool covered = false;
};

struct PreparedDisk {
  Disk d;
  TileRange range;
};

}  // namespace

BatchResult batch_tiles_based(const GridIndex& index,
                              const std::vector<RangeQuery>& queries,
                              int threads) {
  if (threads < 1) throw std::invalid_argument("thread count must be >= 1");
  if (index.variant() == Variant::one_level)
    throw std::invalid_argument(
        "tiles-based batching needs a two-level index");
  const GridConfig& g = index.grid();

  // Phase one: plan each query, bucket its tile tasks by tile.
  std::vector<std::vector<Subtask>> by_tile(
      static_cast<size_t>(g.tile_count()));
  std::vector<Mbr> clipped_window(queries.size());
  std::vector<PreparedDisk> prepared_disk(queries.size());
  for (size_t q = 0; q < queries.size(); ++q) {
    if (const Mbr* w = std::get_if<Mbr>(&queries[q])) {
      std::optional<Mbr> wc = clip(*w, g.domain);
      if (!wc) continue;
      clipped_window[q] = *wc;
      for (const TileTask& task : plan_window(index, *w))
        by_tile[index.slot(task.tile)].push_back(
            {static_cast<uint32_t>(q), task, false});
    } else {
      const Disk& d = std::get<Disk>(queries[q]);
      prepared_disk[q].d = d;
      prepared_disk[q].range = tiles_intersecting_mbr(
          g, Mbr{d.center.x - d.radius, d.center.y - d.radius,
                 d.center.x + d.radius, d.center.y + d.radius});
      for (const DiskTileTask& dtt : plan_disk(index, d))
        by_tile[index.slot(dtt.task.tile)].push_back(
            {static_cast<uint32_t>(q), dtt.task, dtt.covered});
    }
  }
  std::vector<uint32_t> work_tiles;
  for (uint32_t s = 0; s < by_tile.size(); ++s)
    if (!by_tile[s].empty()) work_tiles.push_back(s);

  // Phase two: one work unit per non-empty tile.
  bool decomposed = index.variant() == Variant::two_level_plus;
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> emitted(
      static_cast<size_t>(threads));
  std::vector<QueryStats> worker_stats(static_cast<size_t>(threads));
  parallel_for(work_tiles.size(), threads, [&](size_t i, int worker) {
    QueryStats& st = worker_stats[static_cast<size_t>(worker)];
    auto& sink = emitted[static_cast<size_t>(worker)];
    ++st.tiles_scanned;
    for (const Subtask& sub : by_tile[work_tiles[i]]) {
      if (std::holds_alternative<Mbr>(queries[sub.query])) {
        const Mbr& wc = clipped_window[sub.query];
        auto emit_id = [&](uint32_t id) { sink.emplace_back(sub.query, id); };
        if (decomposed &&
            detail::try_scan_decomposed(index, sub.task, wc, st, emit_id))
          continue;
        detail::scan_tile_two_level(
            index, sub.task, wc, st,
            [&](const Entry& e) { sink.emplace_back(sub.query, e.id); });
      } else {
        const PreparedDisk& pd = prepared_disk[sub.query];
        auto in_set = [&](TileId t) {
          return pd.range.contains(t) &&
                 min_dist(pd.d.center, tile_extent(g, t)) <= pd.d.radius;
        };
        auto qualifies = [&](const Entry& e) {
          ++st.distance_computations;
          return min_dist(pd.d.center, e.mbr) <= pd.d.radius;
        };
        detail::scan_tile_masked(
            index, sub.task, sub.covered, in_set, qualifies, st,
            [&](const Entry& e) { sink.emplace_back(sub.query, e.id); });
      }
    }
  });

  BatchResult result;
  result.per_query.resize(queries.size());
  for (const auto& sink : emitted)
    for (const auto& [q, id] : sink) result.per_query[q].push_back(id);
  for (const QueryStats& st : worker_stats) result.stats.merge(st);
  return result;
}

}  // namespace tilegrid
