#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tilegrid/index.hpp"

namespace tilegrid {

/// A class pair is evaluated in a shared tile unless both sides start before
/// the tile in a common dimension — such pairs replicate together into the
/// neighbouring tile of that dimension and are evaluated there instead.
/// With the bit encoding of BoxClass this is a plain bit test; 9 of the 16
/// pairs survive.
constexpr bool class_pair_evaluated(BoxClass a, BoxClass b) {
  return (static_cast<uint8_t>(a) & static_cast<uint8_t>(b)) == 0;
}

struct JoinResult {
  /// (left id, right id) per intersecting pair, exactly once, unsorted.
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  uint64_t comparisons = 0;
};

/// Intersecting pairs contributed by one shared tile: a plane sweep over the
/// xlo-sorted class groups of each evaluated class pair. Buckets must be in
/// sorted-class order (GridIndex::ensure_sorted_classes).
void tile_join(const GridIndex& left, const GridIndex& right, TileId t,
               JoinResult& out);

/// Same scan over the complementary (normally skipped) class pairs; used to
/// audit that skipping loses nothing.
void tile_join_skipped(const GridIndex& left, const GridIndex& right, TileId t,
                       JoinResult& out);

/// All intersecting (left, right) MBR pairs. Requires identical grids and
/// two-level operands; sorts class groups on demand.
JoinResult spatial_join(GridIndex& left, GridIndex& right, int threads = 1);

/// Pairs found by evaluating only the skipped class pairs in every tile.
/// Every one of them must also be produced by spatial_join.
JoinResult spatial_join_skipped_pairs(GridIndex& left, GridIndex& right);

}  // namespace tilegrid
