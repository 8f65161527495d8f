#include "tilegrid/grid.hpp"

#include <algorithm>
#include <cmath>

namespace tilegrid {

namespace {

double boundary(const GridConfig& g, int dim, int i) {
  // Same formula everywhere so index math and extents agree bit-for-bit.
  return g.domain.lo(dim) + static_cast<double>(i) * g.step(dim);
}

int locate(const GridConfig& g, int dim, double v) {
  int n = g.dim_tiles(dim);
  int i = static_cast<int>(std::floor((v - g.domain.lo(dim)) / g.step(dim)));
  i = std::clamp(i, 0, n - 1);
  // Repair floating-point drift against the exact boundary values.
  while (i > 0 && v < boundary(g, dim, i)) --i;
  while (i < n - 1 && v >= boundary(g, dim, i + 1)) ++i;
  return i;
}

}  // namespace

Mbr tile_extent(const GridConfig& g, TileId t) {
  return {boundary(g, 0, t.ix), boundary(g, 1, t.iy), boundary(g, 0, t.ix + 1),
          boundary(g, 1, t.iy + 1)};
}

TileId tile_of_point(const GridConfig& g, const Point& p) {
  return {locate(g, 0, p.x), locate(g, 1, p.y)};
}

TileRange tiles_intersecting_mbr(const GridConfig& g, const Mbr& r) {
  std::optional<Mbr> clipped = clip(r, g.domain);
  if (!clipped) return {};
  TileRange range;
  for (int dim = 0; dim < 2; ++dim) {
    int lo = locate(g, dim, clipped->lo(dim));
    int hi = locate(g, dim, clipped->hi(dim));
    // Closed tile extents: a low endpoint sitting exactly on a boundary also
    // touches the tile below it.
    if (lo > 0 && boundary(g, dim, lo) == clipped->lo(dim)) --lo;
    if (dim == 0) {
      range.ix0 = lo;
      range.ix1 = hi;
    } else {
      range.iy0 = lo;
      range.iy1 = hi;
    }
  }
  return range;
}

TileRange corner_tile_range(const GridConfig& g, const Mbr& r) {
  std::optional<Mbr> clipped = clip(r, g.domain);
  if (!clipped) return {};
  TileId lo = tile_of_point(g, {clipped->xlo, clipped->ylo});
  TileId hi = tile_of_point(g, {clipped->xhi, clipped->yhi});
  return {lo.ix, lo.iy, hi.ix, hi.iy};
}

std::optional<TileId> prev_tile(TileId t, int dim) {
  if (dim == 0) {
    if (t.ix == 0) return std::nullopt;
    return TileId{t.ix - 1, t.iy};
  }
  if (t.iy == 0) return std::nullopt;
  return TileId{t.ix, t.iy - 1};
}

BoxClass class_of(const GridConfig& g, const Mbr& r, TileId t) {
  Mbr extent = tile_extent(g, t);
  uint8_t code = 0;
  if (r.xlo < extent.xlo) code |= 2;
  if (r.ylo < extent.ylo) code |= 1;
  return static_cast<BoxClass>(code);
}

}  // namespace tilegrid
