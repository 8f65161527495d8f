#include "tilegrid/query.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "scan_kernels.hpp"

namespace tilegrid {

namespace {

CompareMode mode_for(double wlo, double whi, double tlo, double thi) {
  bool high = wlo > tlo;  // window starts inside: entries must reach wlo
  bool low = whi < thi;   // window ends inside: entries must start by whi
  if (high && low) return CompareMode::check_both;
  if (high) return CompareMode::check_high_end;
  if (low) return CompareMode::check_low_end;
  return CompareMode::none;
}

}  // namespace

std::vector<TileTask> plan_window(const GridIndex& index, const Mbr& w) {
  const GridConfig& g = index.grid();
  std::optional<Mbr> wc = clip(w, g.domain);
  if (!wc) return {};
  // Corner-tile range under half-open point location. A tile touched only on
  // the window's low boundary is skipped on purpose: every entry meeting the
  // window there also sits in the neighbouring in-range tile, and scanning
  // both would double-report entries that span the shared boundary.
  TileId start = tile_of_point(g, {wc->xlo, wc->ylo});
  TileId end = tile_of_point(g, {wc->xhi, wc->yhi});
  std::vector<TileTask> plan;
  plan.reserve(static_cast<size_t>(end.ix - start.ix + 1) *
               static_cast<size_t>(end.iy - start.iy + 1));
  for (int iy = start.iy; iy <= end.iy; ++iy) {
    for (int ix = start.ix; ix <= end.ix; ++ix) {
      TileTask task;
      task.tile = {ix, iy};
      Mbr ext = tile_extent(g, task.tile);
      task.class_mask = kMaskAll;
      // A class starting before this tile in some dimension replicates into
      // the previous in-range tile of that dimension and is handled there.
      if (wc->xlo < ext.xlo) task.class_mask &= ~classes_starting_before(0);
      if (wc->ylo < ext.ylo) task.class_mask &= ~classes_starting_before(1);
      task.x_mode = mode_for(wc->xlo, wc->xhi, ext.xlo, ext.xhi);
      task.y_mode = mode_for(wc->ylo, wc->yhi, ext.ylo, ext.yhi);
      plan.push_back(task);
    }
  }
  return plan;
}

std::vector<uint32_t> window_query(const GridIndex& index, const Mbr& w,
                                   QueryStats* stats) {
  if (index.variant() == Variant::one_level)
    return window_query_one_level(index, w, DedupMode::reference_point, stats);
  QueryStats local;
  std::vector<uint32_t> out;
  std::optional<Mbr> wc = clip(w, index.grid().domain);
  if (!wc) return out;
  bool decomposed = index.variant() == Variant::two_level_plus;
  for (const TileTask& task : plan_window(index, w)) {
    ++local.tiles_scanned;
    if (decomposed &&
        detail::try_scan_decomposed(index, task, *wc, local,
                                    [&](uint32_t id) { out.push_back(id); }))
      continue;
    detail::scan_tile_two_level(index, task, *wc, local,
                                [&](const Entry& e) { out.push_back(e.id); });
  }
  if (stats) stats->merge(local);
  return out;
}

std::vector<uint32_t> window_query_one_level(const GridIndex& index,
                                             const Mbr& w, DedupMode dedup,
                                             QueryStats* stats) {
  if (index.variant() != Variant::one_level)
    throw std::invalid_argument("index is not one-level");
  QueryStats local;
  std::vector<uint32_t> out;
  std::optional<Mbr> wc = clip(w, index.grid().domain);
  if (!wc) return out;
  const GridConfig& g = index.grid();
  TileId start = tile_of_point(g, {wc->xlo, wc->ylo});
  TileId end = tile_of_point(g, {wc->xhi, wc->yhi});
  std::unordered_set<uint32_t> seen;
  for (int iy = start.iy; iy <= end.iy; ++iy) {
    for (int ix = start.ix; ix <= end.ix; ++ix) {
      TileId t{ix, iy};
      ++local.tiles_scanned;
      if (dedup == DedupMode::reference_point) {
        detail::scan_tile_one_level_refpoint(
            index, t, *wc, local, [&](const Entry& e) { out.push_back(e.id); });
      } else {
        for (const Entry& e : index.bucket(t).by_class[0]) {
          if (!detail::full_window_test(e.mbr, *wc, local.endpoint_comparisons))
            continue;
          if (seen.insert(e.id).second) {
            ++local.candidates;
            out.push_back(e.id);
          }
        }
      }
    }
  }
  if (stats) stats->merge(local);
  return out;
}

namespace {

struct RowInterval {
  int s = 0, e = -1;    // candidate columns (empty when e < s)
  int cs = 0, ce = -1;  // covered columns
};

/// Candidate and covered column intervals per row of the bounding-box range.
/// Both are contiguous (the disk is convex), so the forward/backward scans
/// locate them without touching every tile; naive mode checks every tile and
/// exists to differentially test that shortcut.
std::vector<RowInterval> disk_row_intervals(const GridConfig& g, const Disk& d,
                                            const TileRange& range,
                                            bool naive) {
  auto in_set = [&](int ix, int iy) {
    return min_dist(d.center, tile_extent(g, {ix, iy})) <= d.radius;
  };
  auto covered = [&](int ix, int iy) {
    return max_dist(d.center, tile_extent(g, {ix, iy})) <= d.radius;
  };
  std::vector<RowInterval> rows(range.iy1 - range.iy0 + 1);
  for (int iy = range.iy0; iy <= range.iy1; ++iy) {
    RowInterval& row = rows[iy - range.iy0];
    if (naive) {
      row.s = range.ix1 + 1;
      row.e = range.ix0 - 1;
      row.cs = range.ix1 + 1;
      row.ce = range.ix0 - 1;
      for (int ix = range.ix0; ix <= range.ix1; ++ix) {
        if (in_set(ix, iy)) {
          row.s = std::min(row.s, ix);
          row.e = std::max(row.e, ix);
        }
        if (covered(ix, iy)) {
          row.cs = std::min(row.cs, ix);
          row.ce = std::max(row.ce, ix);
        }
      }
      continue;
    }
    int s = range.ix0;
    while (s <= range.ix1 && !in_set(s, iy)) ++s;
    if (s > range.ix1) {
      row.s = 1;
      row.e = 0;
      row.cs = 1;
      row.ce = 0;
      continue;
    }
    int e = range.ix1;
    while (e > s && !in_set(e, iy)) --e;
    row.s = s;
    row.e = e;
    int cs = s;
    while (cs <= e && !covered(cs, iy)) ++cs;
    row.cs = cs;
    if (cs > e) {
      row.ce = cs - 1;
    } else {
      int ce = e;
      while (ce > cs && !covered(ce, iy)) --ce;
      row.ce = ce;
    }
  }
  return rows;
}

Mbr disk_box(const Disk& d) {
  return {d.center.x - d.radius, d.center.y - d.radius, d.center.x + d.radius,
          d.center.y + d.radius};
}

}  // namespace

std::vector<DiskTileTask> plan_disk(const GridIndex& index, const Disk& d,
                                    bool naive_scan) {
  const GridConfig& g = index.grid();
  if (d.radius < 0.0) throw std::invalid_argument("negative disk radius");
  TileRange range = tiles_intersecting_mbr(g, disk_box(d));
  if (range.empty()) return {};
  std::vector<RowInterval> rows = disk_row_intervals(g, d, range, naive_scan);
  std::vector<DiskTileTask> plan;
  for (int iy = range.iy0; iy <= range.iy1; ++iy) {
    const RowInterval& row = rows[iy - range.iy0];
    for (int ix = row.s; ix <= row.e; ++ix) {
      DiskTileTask dtt;
      dtt.task.tile = {ix, iy};
      dtt.task.class_mask = kMaskAll;
      if (ix - 1 >= row.s) dtt.task.class_mask &= ~classes_starting_before(0);
      if (iy - 1 >= range.iy0) {
        const RowInterval& above = rows[iy - 1 - range.iy0];
        if (above.s <= ix && ix <= above.e)
          dtt.task.class_mask &= ~classes_starting_before(1);
      }
      dtt.covered = row.cs <= ix && ix <= row.ce;
      if (dtt.task.class_mask == kMaskAll) {
        Point c = tile_extent(g, dtt.task.tile).center();
        double dx = std::abs(d.center.x - c.x);
        double dy = std::abs(d.center.y - c.y);
        if (dx < dy)
          dtt.overflow = OverflowRule::drop_x_overflow;
        else if (dy < dx)
          dtt.overflow = OverflowRule::drop_y_overflow;
        else
          dtt.overflow = OverflowRule::keep_all;
      }
      plan.push_back(dtt);
    }
  }
  return plan;
}

std::vector<uint32_t> disk_query(const GridIndex& index, const Disk& d,
                                 QueryStats* stats, bool naive_scan) {
  QueryStats local;
  std::vector<uint32_t> out;
  std::vector<DiskTileTask> plan = plan_disk(index, d, naive_scan);
  if (plan.empty()) {
    if (stats) stats->merge(local);
    return out;
  }
  const GridConfig& g = index.grid();
  TileRange range = tiles_intersecting_mbr(g, disk_box(d));
  auto in_set = [&](TileId t) {
    return range.contains(t) &&
           min_dist(d.center, tile_extent(g, t)) <= d.radius;
  };
  if (index.variant() == Variant::one_level) {
    std::unordered_set<uint32_t> seen;
    for (const DiskTileTask& dtt : plan) {
      ++local.tiles_scanned;
      for (const Entry& e : index.bucket(dtt.task.tile).by_class[0]) {
        if (!dtt.covered) {
          ++local.distance_computations;
          if (min_dist(d.center, e.mbr) > d.radius) continue;
        }
        if (seen.insert(e.id).second) {
          ++local.candidates;
          out.push_back(e.id);
        }
      }
    }
    if (stats) stats->merge(local);
    return out;
  }
  auto qualifies = [&](const Entry& e) {
    ++local.distance_computations;
    return min_dist(d.center, e.mbr) <= d.radius;
  };
  for (const DiskTileTask& dtt : plan) {
    ++local.tiles_scanned;
    detail::scan_tile_masked(index, dtt.task, dtt.covered, in_set, qualifies,
                             local,
                             [&](const Entry& e) { out.push_back(e.id); });
  }
  if (stats) stats->merge(local);
  return out;
}

std::vector<uint32_t> convex_range_query(const GridIndex& index,
                                         const ConvexPolygon& poly,
                                         QueryStats* stats) {
  if (index.variant() == Variant::one_level)
    throw std::invalid_argument(
        "convex range queries need a two-level index");
  QueryStats local;
  std::vector<uint32_t> out;
  const GridConfig& g = index.grid();
  TileRange range = tiles_intersecting_mbr(g, poly.bounding_box());
  auto in_set = [&](TileId t) {
    return range.contains(t) && intersects(poly, tile_extent(g, t));
  };
  auto tile_covered = [&](TileId t) {
    Mbr ext = tile_extent(g, t);
    return poly.contains({ext.xlo, ext.ylo}) &&
           poly.contains({ext.xhi, ext.ylo}) &&
           poly.contains({ext.xlo, ext.yhi}) &&
           poly.contains({ext.xhi, ext.yhi});
  };
  auto qualifies = [&](const Entry& e) { return intersects(poly, e.mbr); };
  if (range.empty()) {
    if (stats) stats->merge(local);
    return out;
  }
  for (int iy = range.iy0; iy <= range.iy1; ++iy) {
    for (int ix = range.ix0; ix <= range.ix1; ++ix) {
      TileId t{ix, iy};
      if (!in_set(t)) continue;
      ++local.tiles_scanned;
      TileTask task;
      task.tile = t;
      task.class_mask = kMaskAll;
      if (ix > range.ix0 && in_set({ix - 1, iy}))
        task.class_mask &= ~classes_starting_before(0);
      if (iy > range.iy0 && in_set({ix, iy - 1}))
        task.class_mask &= ~classes_starting_before(1);
      detail::scan_tile_masked(index, task, tile_covered(t), in_set, qualifies,
                               local,
                               [&](const Entry& e) { out.push_back(e.id); });
    }
  }
  if (stats) stats->merge(local);
  return out;
}

}  // namespace tilegrid
