#pragma once

#include <cstdint>
#include <vector>

#include "tilegrid/index.hpp"
#include "tilegrid/query.hpp"
#include "tilegrid/stats.hpp"

namespace tilegrid {

/// True when the candidate is a definite hit and exact refinement can be
/// skipped: the window covers the MBR in at least one dimension, so any
/// connected geometry that is tight in its MBR must reach into the window.
/// Only meaningful for candidates (r intersects w).
bool refine_avoid_window(const Mbr& r, const Mbr& w);

/// Dimensions in which the scanned tile is known to start after the window.
/// Entries examined there start inside the tile in those dimensions, making
/// the window's low-endpoint comparison redundant.
struct AvoidContext {
  bool skip_low_x = false;
  bool skip_low_y = false;
};

/// Same decision as refine_avoid_window but skips the comparisons the tile
/// context already guarantees.
bool refine_avoid_window_fast(const Mbr& r, const Mbr& w, AvoidContext ctx);

/// Definite hit for disks: at least two MBR corners inside the closed disk
/// imply a full MBR side inside it.
bool refine_avoid_disk(const Mbr& r, const Disk& d);

/// Exact geometry test. Throws std::invalid_argument when the object carries
/// no geometry (MBR-only data is filter-only).
bool refine(const ObjectRecord& object, const Mbr& w);
bool refine(const ObjectRecord& object, const Disk& d);

enum class RefineMode {
  simple,          // refine every candidate
  ref_avoid,       // full avoidance test, refine the rest
  ref_avoid_plus,  // avoidance test trimmed by tile context (windows only)
};

/// Window query with the refinement step. Result ids are exact with respect
/// to the stored geometries; all modes return the same set.
std::vector<uint32_t> query_with_refinement(const GridIndex& index,
                                            const Mbr& w, RefineMode mode,
                                            QueryStats* stats = nullptr);

/// Disk-query counterpart. RefineMode::ref_avoid_plus is rejected: its
/// comparison-skipping argument does not transfer to distance predicates.
std::vector<uint32_t> query_with_refinement(const GridIndex& index,
                                            const Disk& d, RefineMode mode,
                                            QueryStats* stats = nullptr);

}  // namespace tilegrid
