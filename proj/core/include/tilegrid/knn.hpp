#pragma once

#include <cstdint>
#include <vector>

#include "tilegrid/index.hpp"
#include "tilegrid/stats.hpp"

namespace tilegrid {

/// How objects are counted while expanding cells around the query point.
///   distinct_ids — count distinct object ids seen in expanded cells (exact,
///                  works for every index variant; needs a per-plan id set).
///   class_a      — count only entries whose start lies in the cell, i.e. the
///                  first class group. Each object is counted in exactly one
///                  cell, so no id set is needed, but the cell holding an
///                  object's start may lie farther from the query than the
///                  nearest cell the object overlaps, which can loosen the
///                  distance bound. Two-level variants only.
enum class KnnCountMode : uint8_t { distinct_ids, class_a };

struct KnnPlan {
  /// Non-empty cells popped in mindist order until they jointly hold >= k
  /// objects (under the chosen counting mode).
  std::vector<TileId> core_cells;
  /// max over core cells of maxdist(q, cell); no k-th neighbour can be
  /// farther, so every object intersecting the k nearest must touch a cell
  /// with mindist <= bound_d.
  double bound_d = 0.0;
  /// All non-empty cells with mindist(q, cell) <= bound_d; superset of
  /// core_cells. The filter-step output.
  std::vector<TileId> candidate_cells;
};

KnnPlan knn_plan(const GridIndex& index, const Point& q, uint32_t k,
                 KnnCountMode mode = KnnCountMode::distinct_ids);

struct KnnNeighbor {
  uint32_t id = 0;
  double distance = 0.0;  // mindist from q to the object's MBR
};

/// The k nearest objects by MBR distance, ties broken by id. Scans the
/// candidate cells of knn_plan, deduplicating replicated entries by id.
std::vector<KnnNeighbor> knn_query(const GridIndex& index, const Point& q,
                                   uint32_t k,
                                   KnnCountMode mode = KnnCountMode::distinct_ids,
                                   int threads = 1, QueryStats* stats = nullptr);

}  // namespace tilegrid
