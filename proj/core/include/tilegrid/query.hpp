#pragma once

#include <cstdint>
#include <vector>

#include "tilegrid/index.hpp"
#include "tilegrid/stats.hpp"

namespace tilegrid {

/// Which endpoint comparisons a tile scan still needs in one dimension.
/// `none` means the window covers the tile in that dimension, so every entry
/// of the tile overlaps the window there and no comparison is executed.
enum class CompareMode : uint8_t {
  none,
  check_low_end,   // window ends inside the tile: test r.lo <= w.hi
  check_high_end,  // window starts inside the tile: test r.hi >= w.lo
  check_both,
};

struct TileTask {
  TileId tile;
  ClassMask class_mask = kMaskAll;
  CompareMode x_mode = CompareMode::none;
  CompareMode y_mode = CompareMode::none;
};

/// Per-tile work units for a window query, row-major over the tile range of
/// w clipped to the domain. Classes whose entries necessarily replicate into
/// an earlier in-range tile are masked out, which is what makes the scan
/// duplicate-free without any dedup structure.
std::vector<TileTask> plan_window(const GridIndex& index, const Mbr& w);

/// Ids of objects whose MBR intersects w, each exactly once. Dispatches to
/// the reference-point one-level scan when the index is one-level.
std::vector<uint32_t> window_query(const GridIndex& index, const Mbr& w,
                                   QueryStats* stats = nullptr);

enum class DedupMode { reference_point, hash_set };

/// Flat-bucket scan with the full intersection test per entry. Duplicates are
/// suppressed either by reporting only at the tile that contains the low
/// corner of r ∩ w (reference point) or through a hash set.
std::vector<uint32_t> window_query_one_level(const GridIndex& index,
                                             const Mbr& w, DedupMode dedup,
                                             QueryStats* stats = nullptr);

/// Duplicate policy for tiles that keep all four classes on the rim of a
/// disk's candidate set (see plan_disk).
enum class OverflowRule : uint8_t {
  none,             // tile does not keep all four classes
  drop_x_overflow,  // tile closer to q in x: ignore B/D entries with
                    // r.xhi beyond the tile
  drop_y_overflow,  // tile closer to q in y: ignore C/D entries with
                    // r.yhi beyond the tile
  keep_all,         // equidistant single tile
};

struct DiskTileTask {
  TileTask task;
  /// max_dist(q, tile) <= radius: every entry qualifies, no per-entry
  /// distance computation.
  bool covered = false;
  OverflowRule overflow = OverflowRule::none;
};

/// Candidate tiles of a disk query: tiles meeting the disk's bounding box
/// with min_dist(q, tile) <= radius. A class is masked out when the next tile
/// towards its set bit(s) is also a candidate. `naive_scan` computes
/// min/max distances for every tile in the bounding-box range instead of
/// exploiting per-row contiguity (differential-testing aid).
std::vector<DiskTileTask> plan_disk(const GridIndex& index, const Disk& d,
                                    bool naive_scan = false);

/// Ids of objects whose MBR lies within distance d.radius of d.center, each
/// exactly once. Entries of replicated classes at rim tiles are claimed by
/// the row-major-first candidate tile that examines them, which keeps the
/// result exact even around the diagonal of the candidate rim. One-level
/// indexes use a hash-set scan instead.
std::vector<uint32_t> disk_query(const GridIndex& index, const Disk& d,
                                 QueryStats* stats = nullptr,
                                 bool naive_scan = false);

/// Ids of objects whose MBR intersects the convex polygon, each exactly
/// once. Two-level variants only.
std::vector<uint32_t> convex_range_query(const GridIndex& index,
                                         const ConvexPolygon& poly,
                                         QueryStats* stats = nullptr);

}  // namespace tilegrid
