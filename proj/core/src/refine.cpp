#include "tilegrid/refine.hpp"

#include <cassert>
#include <stdexcept>
#include <unordered_set>

#include "scan_kernels.hpp"

namespace tilegrid {

bool refine_avoid_window(const Mbr& r, const Mbr& w) {
  return (w.xlo <= r.xlo && r.xhi <= w.xhi) ||
         (w.ylo <= r.ylo && r.yhi <= w.yhi);
}

bool refine_avoid_window_fast(const Mbr& r, const Mbr& w, AvoidContext ctx) {
  if ((ctx.skip_low_x || w.xlo <= r.xlo) && r.xhi <= w.xhi) return true;
  return (ctx.skip_low_y || w.ylo <= r.ylo) && r.yhi <= w.yhi;
}

bool refine_avoid_disk(const Mbr& r, const Disk& d) {
  int inside = 0;
  const Point corners[4] = {{r.xlo, r.ylo}, {r.xhi, r.ylo}, {r.xlo, r.yhi},
                            {r.xhi, r.yhi}};
  for (const Point& c : corners) {
    if (dist(c, d.center) <= d.radius) ++inside;
  }
  return inside >= 2;
}

bool refine(const ObjectRecord& object, const Mbr& w) {
  if (!object.geometry)
    throw std::invalid_argument("object has no exact geometry to refine");
  return intersects(*object.geometry, w);
}

bool refine(const ObjectRecord& object, const Disk& d) {
  if (!object.geometry)
    throw std::invalid_argument("object has no exact geometry to refine");
  return intersects(*object.geometry, d);
}

namespace {

// Counted variants of the avoidance tests; comparisons land in the same
// endpoint-comparison counter as the filter step.
bool avoid_window_counted(const Mbr& r, const Mbr& w, uint64_t& cmp) {
  ++cmp;
  if (w.xlo <= r.xlo) {
    ++cmp;
    if (r.xhi <= w.xhi) return true;
  }
  ++cmp;
  if (w.ylo <= r.ylo) {
    ++cmp;
    if (r.yhi <= w.yhi) return true;
  }
  return false;
}

bool avoid_window_fast_counted(const Mbr& r, const Mbr& w, AvoidContext ctx,
                               uint64_t& cmp) {
  if (ctx.skip_low_x) {
    ++cmp;
    if (r.xhi <= w.xhi) return true;
  } else {
    ++cmp;
    if (w.xlo <= r.xlo) {
      ++cmp;
      if (r.xhi <= w.xhi) return true;
    }
  }
  if (ctx.skip_low_y) {
    ++cmp;
    return r.yhi <= w.yhi;
  }
  ++cmp;
  if (w.ylo <= r.ylo) {
    ++cmp;
    return r.yhi <= w.yhi;
  }
  return false;
}

}  // namespace

std::vector<uint32_t> query_with_refinement(const GridIndex& index,
                                            const Mbr& w, RefineMode mode,
                                            QueryStats* stats) {
  if (mode == RefineMode::ref_avoid_plus &&
      index.variant() == Variant::one_level)
    throw std::invalid_argument(
        "ref_avoid_plus needs class-partitioned tiles (two-level index)");
  QueryStats local;
  std::vector<uint32_t> out;
  std::optional<Mbr> wc = clip(w, index.grid().domain);
  if (!wc) {
    if (stats) stats->merge(local);
    return out;
  }
  auto stage = [&](const Entry& e, AvoidContext ctx) {
    if (mode != RefineMode::simple) {
      bool definite =
          mode == RefineMode::ref_avoid
              ? avoid_window_counted(e.mbr, *wc, local.endpoint_comparisons)
              : avoid_window_fast_counted(e.mbr, *wc, ctx,
                                          local.endpoint_comparisons);
      assert(definite == refine_avoid_window(e.mbr, *wc));
      if (definite) {
        ++local.refinements_avoided;
        out.push_back(e.id);
        return;
      }
    }
    ++local.refinements_run;
    if (refine(index.object(e.id), *wc)) out.push_back(e.id);
  };
  if (index.variant() == Variant::one_level) {
    const GridConfig& g = index.grid();
    TileId start = tile_of_point(g, {wc->xlo, wc->ylo});
    TileId end = tile_of_point(g, {wc->xhi, wc->yhi});
    for (int iy = start.iy; iy <= end.iy; ++iy) {
      for (int ix = start.ix; ix <= end.ix; ++ix) {
        ++local.tiles_scanned;
        detail::scan_tile_one_level_refpoint(
            index, {ix, iy}, *wc, local,
            [&](const Entry& e) { stage(e, {}); });
      }
    }
  } else {
    for (const TileTask& task : plan_window(index, w)) {
      ++local.tiles_scanned;
      Mbr ext = tile_extent(index.grid(), task.tile);
      AvoidContext ctx{wc->xlo < ext.xlo, wc->ylo < ext.ylo};
      detail::scan_tile_two_level(index, task, *wc, local,
                                  [&](const Entry& e) { stage(e, ctx); });
    }
  }
  if (stats) stats->merge(local);
  return out;
}

std::vector<uint32_t> query_with_refinement(const GridIndex& index,
                                            const Disk& d, RefineMode mode,
                                            QueryStats* stats) {
  if (mode == RefineMode::ref_avoid_plus)
    throw std::invalid_argument(
        "ref_avoid_plus does not apply to disk queries");
  QueryStats local;
  std::vector<uint32_t> out;
  auto stage = [&](const Entry& e) {
    if (mode == RefineMode::ref_avoid) {
      local.distance_computations += 4;  // corner distances
      if (refine_avoid_disk(e.mbr, d)) {
        ++local.refinements_avoided;
        out.push_back(e.id);
        return;
      }
    }
    ++local.refinements_run;
    if (refine(index.object(e.id), d)) out.push_back(e.id);
  };
  std::vector<DiskTileTask> plan = plan_disk(index, d);
  if (plan.empty()) {
    if (stats) stats->merge(local);
    return out;
  }
  const GridConfig& g = index.grid();
  TileRange range = tiles_intersecting_mbr(
      g, Mbr{d.center.x - d.radius, d.center.y - d.radius,
             d.center.x + d.radius, d.center.y + d.radius});
  auto in_set = [&](TileId t) {
    return range.contains(t) &&
           min_dist(d.center, tile_extent(g, t)) <= d.radius;
  };
  auto qualifies = [&](const Entry& e) {
    ++local.distance_computations;
    return min_dist(d.center, e.mbr) <= d.radius;
  };
  if (index.variant() == Variant::one_level) {
    std::unordered_set<uint32_t> seen;
    for (const DiskTileTask& dtt : plan) {
      ++local.tiles_scanned;
      for (const Entry& e : index.bucket(dtt.task.tile).by_class[0]) {
        if (!dtt.covered && !qualifies(e)) continue;
        if (!seen.insert(e.id).second) continue;
        ++local.candidates;
        stage(e);
      }
    }
  } else {
    for (const DiskTileTask& dtt : plan) {
      ++local.tiles_scanned;
      detail::scan_tile_masked(index, dtt.task, dtt.covered, in_set, qualifies,
                               local, [&](const Entry& e) { stage(e); });
    }
  }
  if (stats) stats->merge(local);
  return out;
}

}  // namespace tilegrid
