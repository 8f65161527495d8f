#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tilegrid/geom.hpp"
#include "tilegrid/grid.hpp"

namespace tilegrid {

enum class Variant { one_level, two_level, two_level_plus };

struct ObjectRecord {
  uint32_t id = 0;
  Mbr mbr;
  /// Exact shape; absent for MBR-only data (filter-only queries).
  std::optional<Geometry> geometry;
};

struct Entry {
  Mbr mbr;
  uint32_t id = 0;
};

/// Per-tile storage. The two-level variants partition entries into the four
/// start-based classes; the one-level variant keeps everything in by_class[0].
struct TileBucket {
  std::array<std::vector<Entry>, kClassCount> by_class;

  const std::vector<Entry>& of(BoxClass c) const {
    return by_class[static_cast<uint8_t>(c)];
  }
  std::vector<Entry>& of(BoxClass c) {
    return by_class[static_cast<uint8_t>(c)];
  }
  size_t size() const {
    size_t n = 0;
    for (const auto& v : by_class) n += v.size();
    return n;
  }
};

/// One endpoint axis of the decomposed representation.
enum class Axis : uint8_t { xlo = 0, xhi = 1, ylo = 2, yhi = 3 };

/// (coordinate, id) column in lexicographic order.
using SortedColumn = std::vector<std::pair<double, uint32_t>>;

/// Per-class columns of each MBR endpoint, kept sorted. Lets a scan that
/// needs a single endpoint comparison run as one binary search plus a
/// contiguous id sweep.
struct DecomposedTables {
  std::array<std::array<SortedColumn, 4>, kClassCount> columns;

  const SortedColumn& of(BoxClass c, Axis a) const {
    return columns[static_cast<uint8_t>(c)][static_cast<uint8_t>(a)];
  }
  SortedColumn& of(BoxClass c, Axis a) {
    return columns[static_cast<uint8_t>(c)][static_cast<uint8_t>(a)];
  }
};

/// Main-memory grid index over object MBRs. Immutable while queried; inserts
/// and class sorting must not race with readers.
class GridIndex {
 public:
  GridIndex(GridConfig grid, Variant variant);

  /// Indexes the whole batch. Throws on duplicate ids or MBRs fully outside
  /// the domain (partially outside is clipped for tile assignment only).
  static GridIndex build(GridConfig grid, Variant variant,
                         std::vector<ObjectRecord> objects,
                         bool presort_classes = false);

  /// Incremental variant of build with identical placement rules. Keeps the
  /// decomposed columns and any presorted class order intact.
  void insert(ObjectRecord object);

  const GridConfig& grid() const { return grid_; }
  Variant variant() const { return variant_; }

  const TileBucket& bucket(TileId t) const { return buckets_[slot(t)]; }
  const DecomposedTables& decomposed(TileId t) const {
    return decomposed_[slot(t)];
  }

  /// Entry count per tile, maintained across inserts (drives kNN planning).
  uint32_t cell_count(TileId t) const { return cell_counts_[slot(t)]; }
  const std::vector<uint32_t>& cell_counts() const { return cell_counts_; }

  size_t object_count() const { return objects_.size(); }
  const std::vector<ObjectRecord>& objects() const { return objects_; }
  const ObjectRecord& object(uint32_t id) const;
  bool has_object(uint32_t id) const { return slot_of_id_.count(id) != 0; }

  size_t total_entries() const { return total_entries_; }
  /// total entries / objects; 1.0 for an empty index.
  double replication_ratio() const;
  /// Rough bucket + column footprint in bytes.
  size_t storage_bytes() const;

  bool classes_sorted() const { return classes_sorted_; }
  /// Sorts every class vector by xlo (plane-sweep order) and remembers it.
  void ensure_sorted_classes();

  size_t slot(TileId t) const {
    return static_cast<size_t>(t.iy) * static_cast<size_t>(grid_.nx) +
           static_cast<size_t>(t.ix);
  }

 private:
  void place(const ObjectRecord& object);
  void rebuild_decomposed();

  GridConfig grid_;
  Variant variant_;
  std::vector<TileBucket> buckets_;
  std::vector<DecomposedTables> decomposed_;  // two_level_plus only
  std::vector<uint32_t> cell_counts_;
  std::vector<ObjectRecord> objects_;
  std::unordered_map<uint32_t, uint32_t> slot_of_id_;
  size_t total_entries_ = 0;
  bool classes_sorted_ = false;
  bool bulk_loading_ = false;
};

}  // namespace tilegrid
