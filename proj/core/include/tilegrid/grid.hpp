#pragma once

#include <cstdint>
#include <optional>

#include "tilegrid/geom.hpp"

namespace tilegrid {

/// Uniform nx-by-ny tiling of a rectangular domain.
struct GridConfig {
  int nx = 1;
  int ny = 1;
  Mbr domain{0.0, 0.0, 1.0, 1.0};

  int dim_tiles(int dim) const { return dim == 0 ? nx : ny; }
  double step(int dim) const {
    return (domain.hi(dim) - domain.lo(dim)) / dim_tiles(dim);
  }
  long long tile_count() const {
    return static_cast<long long>(nx) * static_cast<long long>(ny);
  }

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct TileId {
  int ix = 0;
  int iy = 0;

  friend bool operator==(const TileId&, const TileId&) = default;
};

/// Secondary partition of a tile's entries, keyed by where the rectangle
/// starts relative to the tile. Reading the two bits as (x, y): bit set means
/// the rectangle's low endpoint lies before the tile in that dimension.
///   A = 00  starts inside the tile in both dimensions
///   B = 01  starts before the tile in y only
///   C = 10  starts before the tile in x only
///   D = 11  starts before the tile in both dimensions
enum class BoxClass : uint8_t { A = 0, B = 1, C = 2, D = 3 };

constexpr uint8_t kClassCount = 4;

constexpr bool starts_before(BoxClass c, int dim) {
  uint8_t bit = dim == 0 ? 2 : 1;
  return (static_cast<uint8_t>(c) & bit) != 0;
}

/// Bitset over the four classes: bit (1 << class) selects that class.
using ClassMask = uint8_t;

constexpr ClassMask mask_of(BoxClass c) {
  return static_cast<ClassMask>(1u << static_cast<uint8_t>(c));
}
constexpr ClassMask kMaskAll =
    mask_of(BoxClass::A) | mask_of(BoxClass::B) | mask_of(BoxClass::C) |
    mask_of(BoxClass::D);
constexpr bool mask_has(ClassMask m, BoxClass c) {
  return (m & mask_of(c)) != 0;
}

/// Classes whose low endpoint lies before the tile in dimension `dim`.
constexpr ClassMask classes_starting_before(int dim) {
  return dim == 0 ? (mask_of(BoxClass::C) | mask_of(BoxClass::D))
                  : (mask_of(BoxClass::B) | mask_of(BoxClass::D));
}

Mbr tile_extent(const GridConfig& g, TileId t);

/// Half-open point location: a point on a shared boundary belongs to the
/// higher tile; the domain's upper boundary clamps into the last tile.
/// Precondition: p inside the domain.
TileId tile_of_point(const GridConfig& g, const Point& p);

/// Inclusive index range of tiles; empty() when no tile qualifies.
struct TileRange {
  int ix0 = 0, iy0 = 0, ix1 = -1, iy1 = -1;

  bool empty() const { return ix1 < ix0 || iy1 < iy0; }
  bool contains(TileId t) const {
    return ix0 <= t.ix && t.ix <= ix1 && iy0 <= t.iy && t.iy <= iy1;
  }
  long long size() const {
    if (empty()) return 0;
    return static_cast<long long>(ix1 - ix0 + 1) *
           static_cast<long long>(iy1 - iy0 + 1);
  }
};

/// Tiles whose closed extent meets r (closed-closed convention: an endpoint
/// exactly on a shared boundary selects both adjacent tiles). Objects
/// reaching outside the domain are clipped first; fully outside -> empty.
/// Use for query candidate ranges, where a conservative range is harmless.
TileRange tiles_intersecting_mbr(const GridConfig& g, const Mbr& r);

/// Inclusive range between the half-open tiles of r's clipped corners. This
/// is the placement range: a low corner exactly on a shared boundary stays in
/// the higher tile, so the first range tile is the unique tile where r starts
/// in both dimensions (one class-A home per object, no sliver replicas); a
/// high corner on a boundary still reaches into the higher tile, which keeps
/// boundary touches discoverable. Fully outside the domain -> empty.
TileRange corner_tile_range(const GridConfig& g, const Mbr& r);

/// Neighbour one step lower in the given dimension; absent at the edge.
std::optional<TileId> prev_tile(TileId t, int dim);

/// Class of rectangle r within tile t. A low endpoint exactly on the tile's
/// start counts as inside (bit 0).
BoxClass class_of(const GridConfig& g, const Mbr& r, TileId t);

}  // namespace tilegrid
