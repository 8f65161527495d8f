#pragma once

// Per-tile scan kernels shared by the single-query drivers and the batch
// executors. Each kernel processes one planned tile and forwards accepted
// entries to an Emit callback.

#include <algorithm>
#include <bit>
#include <cstdint>

#include "tilegrid/geom.hpp"
#include "tilegrid/index.hpp"
#include "tilegrid/query.hpp"
#include "tilegrid/stats.hpp"

namespace tilegrid::detail {

/// Executes only the comparisons the mode asks for; the skipped ones are
/// guaranteed true by the tile/window geometry.
inline bool test_mode(CompareMode m, double rlo, double rhi, double wlo,
                      double whi, uint64_t& cmp) {
  switch (m) {
    case CompareMode::none:
      return true;
    case CompareMode::check_low_end:
      ++cmp;
      return rlo <= whi;
    case CompareMode::check_high_end:
      ++cmp;
      return rhi >= wlo;
    case CompareMode::check_both:
      ++cmp;
      if (rlo > whi) return false;
      ++cmp;
      return rhi >= wlo;
  }
  return false;
}

/// Full intersection test with the same comparison order and short-circuit
/// behaviour as the mode-based test, so counted work is comparable.
inline bool full_window_test(const Mbr& r, const Mbr& w, uint64_t& cmp) {
  ++cmp;
  if (r.xlo > w.xhi) return false;
  ++cmp;
  if (r.xhi < w.xlo) return false;
  ++cmp;
  if (r.ylo > w.yhi) return false;
  ++cmp;
  return r.yhi >= w.ylo;
}

inline uint64_t search_cost(size_t n) {
  return static_cast<uint64_t>(std::bit_width(n)) + 1;
}

template <typename Emit>  // Emit(const Entry&)
void scan_tile_two_level(const GridIndex& index, const TileTask& task,
                         const Mbr& w, QueryStats& st, Emit&& emit) {
  const TileBucket& bucket = index.bucket(task.tile);
  for (uint8_t c = 0; c < kClassCount; ++c) {
    if (!mask_has(task.class_mask, static_cast<BoxClass>(c))) continue;
    for (const Entry& e : bucket.by_class[c]) {
      if (!test_mode(task.x_mode, e.mbr.xlo, e.mbr.xhi, w.xlo, w.xhi,
                     st.endpoint_comparisons))
        continue;
      if (!test_mode(task.y_mode, e.mbr.ylo, e.mbr.yhi, w.ylo, w.yhi,
                     st.endpoint_comparisons))
        continue;
      ++st.candidates;
      emit(e);
    }
  }
}

/// Decomposed-column fast path for tasks that need exactly one comparison in
/// exactly one dimension: one binary search, then a contiguous id sweep.
/// Returns false when the task does not have that shape.
template <typename EmitId>  // EmitId(uint32_t)
bool try_scan_decomposed(const GridIndex& index, const TileTask& task,
                         const Mbr& w, QueryStats& st, EmitId&& emit) {
  bool x_single = task.x_mode == CompareMode::check_low_end ||
                  task.x_mode == CompareMode::check_high_end;
  bool y_single = task.y_mode == CompareMode::check_low_end ||
                  task.y_mode == CompareMode::check_high_end;
  Axis axis;
  bool prefix;  // qualifying ids form a prefix (coord <= key) or a suffix
  double key;
  if (x_single && task.y_mode == CompareMode::none) {
    prefix = task.x_mode == CompareMode::check_low_end;
    axis = prefix ? Axis::xlo : Axis::xhi;
    key = prefix ? w.xhi : w.xlo;
  } else if (y_single && task.x_mode == CompareMode::none) {
    prefix = task.y_mode == CompareMode::check_low_end;
    axis = prefix ? Axis::ylo : Axis::yhi;
    key = prefix ? w.yhi : w.ylo;
  } else {
    return false;
  }
  const DecomposedTables& tables = index.decomposed(task.tile);
  for (uint8_t c = 0; c < kClassCount; ++c) {
    if (!mask_has(task.class_mask, static_cast<BoxClass>(c))) continue;
    const SortedColumn& column = tables.of(static_cast<BoxClass>(c), axis);
    st.endpoint_comparisons += search_cost(column.size());
    if (prefix) {
      auto end = std::upper_bound(
          column.begin(), column.end(), key,
          [](double v, const auto& e) { return v < e.first; });
      for (auto it = column.begin(); it != end; ++it) {
        ++st.candidates;
        emit(it->second);
      }
    } else {
      auto begin = std::lower_bound(
          column.begin(), column.end(), key,
          [](const auto& e, double v) { return e.first < v; });
      for (auto it = begin; it != column.end(); ++it) {
        ++st.candidates;
        emit(it->second);
      }
    }
  }
  return true;
}

/// One-level scan of a tile with the reference-point rule: an accepted entry
/// is reported only by the tile holding the low corner of r ∩ w, which is
/// unique under half-open point location.
template <typename Emit>  // Emit(const Entry&)
void scan_tile_one_level_refpoint(const GridIndex& index, TileId t,
                                  const Mbr& w, QueryStats& st, Emit&& emit) {
  const GridConfig& g = index.grid();
  for (const Entry& e : index.bucket(t).by_class[0]) {
    if (!full_window_test(e.mbr, w, st.endpoint_comparisons)) continue;
    st.endpoint_comparisons += 2;  // per-dimension tile membership of ref
    Point ref{std::max(e.mbr.xlo, w.xlo), std::max(e.mbr.ylo, w.ylo)};
    if (tile_of_point(g, ref) == t) {
      ++st.candidates;
      emit(e);
    }
  }
}

/// True when t is the row-major-first candidate tile that examines r, i.e.
/// the first tile of r's range that is a candidate and whose kept classes
/// include r's class there. Every candidate tile scanning r runs the same
/// walk, so exactly one of them claims it.
template <typename InSet>  // InSet(TileId) -> bool
bool owns_replica(const GridConfig& g, const Mbr& r, TileId t, InSet&& in_set) {
  TileRange range = corner_tile_range(g, r);  // the tiles that store r
  for (int iy = range.iy0; iy <= range.iy1; ++iy) {
    for (int ix = range.ix0; ix <= range.ix1; ++ix) {
      TileId cand{ix, iy};
      if (!in_set(cand)) continue;
      Mbr ext = tile_extent(g, cand);
      if (r.xlo < ext.xlo && ix > 0 && in_set(TileId{ix - 1, iy})) continue;
      if (r.ylo < ext.ylo && iy > 0 && in_set(TileId{ix, iy - 1})) continue;
      return cand == t;
    }
  }
  return false;
}

/// Predicate-range scan of one candidate tile (disk or convex range).
/// Qualifies(entry) must be the exact per-entry acceptance test; it is
/// skipped entirely on covered tiles.
template <typename InSet, typename Qualifies, typename Emit>
void scan_tile_masked(const GridIndex& index, const TileTask& task,
                      bool covered, InSet&& in_set, Qualifies&& qualifies,
                      QueryStats& st, Emit&& emit) {
  const TileBucket& bucket = index.bucket(task.tile);
  for (uint8_t c = 0; c < kClassCount; ++c) {
    BoxClass cls = static_cast<BoxClass>(c);
    if (!mask_has(task.class_mask, cls)) continue;
    for (const Entry& e : bucket.by_class[c]) {
      if (!covered && !qualifies(e)) continue;
      if (cls != BoxClass::A &&
          !owns_replica(index.grid(), e.mbr, task.tile, in_set))
        continue;
      ++st.candidates;
      emit(e);
    }
  }
}

}  // namespace tilegrid::detail
