#include "tilegrid/knn.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "tilegrid/parallel.hpp"

namespace tilegrid {
namespace {

double cell_min_dist(const GridConfig& g, const Point& q, TileId t) {
  return min_dist(q, tile_extent(g, t));
}

struct HeapItem {
  double dist;
  int ix;
  int iy;
  bool operator>(const HeapItem& o) const {
    if (dist != o.dist) return dist > o.dist;
    if (iy != o.iy) return iy > o.iy;
    return ix > o.ix;
  }
};

}  // namespace

KnnPlan knn_plan(const GridIndex& index, const Point& q, uint32_t k,
                 KnnCountMode mode) {
  if (k == 0) throw std::invalid_argument("knn_plan: k must be positive");
  if (k > index.objects().size())
    throw std::invalid_argument("knn_plan: k exceeds the object count");
  if (mode == KnnCountMode::class_a && index.variant() == Variant::one_level)
    throw std::invalid_argument(
        "knn_plan: class_a counting needs a class-partitioned index");

  const GridConfig& g = index.grid();
  KnnPlan plan;

  // Best-first expansion from the cell under q, popping cells in mindist
  // order. Ties are broken by tile id so the plan is deterministic.
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>>
      heap;
  std::vector<char> pushed(g.tile_count(), 0);
  Point qc{std::clamp(q.x, g.domain.xlo, g.domain.xhi),
           std::clamp(q.y, g.domain.ylo, g.domain.yhi)};
  TileId seed = tile_of_point(g, qc);
  auto push = [&](int ix, int iy) {
    size_t s = static_cast<size_t>(iy) * static_cast<size_t>(g.nx) +
               static_cast<size_t>(ix);
    if (pushed[s]) return;
    pushed[s] = 1;
    heap.push({cell_min_dist(g, q, TileId{ix, iy}), ix, iy});
  };
  push(seed.ix, seed.iy);

  std::unordered_set<uint32_t> seen;
  if (mode == KnnCountMode::distinct_ids) seen.reserve(k * 2);
  uint64_t counted = 0;

  while (counted < k) {
    // cannot run dry: the id / first-class totals both equal the object count
    HeapItem top = heap.top();
    heap.pop();
    TileId t{top.ix, top.iy};
    if (top.ix > 0) push(top.ix - 1, top.iy);
    if (top.ix + 1 < g.nx) push(top.ix + 1, top.iy);
    if (top.iy > 0) push(top.ix, top.iy - 1);
    if (top.iy + 1 < g.ny) push(top.ix, top.iy + 1);

    if (index.cell_count(t) == 0) continue;
    plan.core_cells.push_back(t);
    plan.bound_d = std::max(plan.bound_d, max_dist(q, tile_extent(g, t)));
    if (mode == KnnCountMode::class_a) {
      counted += index.bucket(t).of(BoxClass::A).size();
    } else {
      for (const std::vector<Entry>& cls : index.bucket(t).by_class)
        for (const Entry& e : cls)
          if (seen.insert(e.id).second) ++counted;
    }
  }

  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      TileId t{ix, iy};
      if (index.cell_count(t) > 0 && cell_min_dist(g, q, t) <= plan.bound_d)
        plan.candidate_cells.push_back(t);
    }
  return plan;
}

std::vector<KnnNeighbor> knn_query(const GridIndex& index, const Point& q,
                                   uint32_t k, KnnCountMode mode, int threads,
                                   QueryStats* stats) {
  KnnPlan plan = knn_plan(index, q, k, mode);

  std::vector<std::vector<KnnNeighbor>> partial(
      static_cast<size_t>(std::max(threads, 1)));
  std::vector<QueryStats> wstats(partial.size());
  parallel_for(plan.candidate_cells.size(), threads,
               [&](size_t c, unsigned worker) {
                 const TileBucket& b = index.bucket(plan.candidate_cells[c]);
                 ++wstats[worker].tiles_scanned;
                 for (const std::vector<Entry>& cls : b.by_class)
                   for (const Entry& e : cls) {
                     ++wstats[worker].distance_computations;
                     partial[worker].push_back({e.id, min_dist(q, e.mbr)});
                   }
               });

  std::vector<KnnNeighbor> all;
  for (std::vector<KnnNeighbor>& p : partial)
    all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end(), [](const KnnNeighbor& a, const KnnNeighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.id < b.id;
  });
  // replicas of one object share its distance, so they are adjacent now
  std::vector<KnnNeighbor> out;
  out.reserve(k);
  for (const KnnNeighbor& n : all) {
    if (!out.empty() && out.back().id == n.id) continue;
    out.push_back(n);
    if (out.size() == k) break;
  }
  if (stats) {
    for (const QueryStats& w : wstats) stats->merge(w);
    stats->candidates += all.size();
  }
  return out;
}

}  // namespace tilegrid
