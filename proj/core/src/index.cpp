#include "tilegrid/index.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tilegrid {

GridIndex::GridIndex(GridConfig grid, Variant variant)
    : grid_(grid), variant_(variant) {
  if (grid.nx < 1 || grid.ny < 1)
    throw std::invalid_argument("grid must have at least one tile per side");
  if (!grid.domain.valid() || grid.domain.area() <= 0.0)
    throw std::invalid_argument("grid domain must have positive area");
  size_t tiles = static_cast<size_t>(grid.tile_count());
  buckets_.resize(tiles);
  cell_counts_.assign(tiles, 0);
  if (variant_ == Variant::two_level_plus) decomposed_.resize(tiles);
}

GridIndex GridIndex::build(GridConfig grid, Variant variant,
                           std::vector<ObjectRecord> objects,
                           bool presort_classes) {
  GridIndex index(grid, variant);
  index.objects_.reserve(objects.size());
  index.bulk_loading_ = true;  // defer column maintenance to one sort pass
  for (ObjectRecord& object : objects) index.insert(std::move(object));
  index.bulk_loading_ = false;
  if (variant == Variant::two_level_plus) index.rebuild_decomposed();
  if (presort_classes) index.ensure_sorted_classes();
  return index;
}

void GridIndex::insert(ObjectRecord object) {
  if (slot_of_id_.count(object.id))
    throw std::invalid_argument("duplicate object id " +
                                std::to_string(object.id));
  if (!object.mbr.valid())
    throw std::invalid_argument("invalid MBR for object " +
                                std::to_string(object.id));
  if (!intersects(object.mbr, grid_.domain))
    throw std::invalid_argument("object " + std::to_string(object.id) +
                                " lies outside the domain");
  place(object);
  slot_of_id_.emplace(object.id, static_cast<uint32_t>(objects_.size()));
  objects_.push_back(std::move(object));
}

void GridIndex::place(const ObjectRecord& object) {
  // Placement uses the half-open corner range: exactly one tile sees the
  // object as class A, which is what makes mask-based dedup exact even for
  // boundary-aligned data.
  TileRange range = corner_tile_range(grid_, object.mbr);
  Entry entry{object.mbr, object.id};
  // Classify against the domain-clipped box: an object reaching outside the
  // domain must still get its class-A home in the first tile it occupies,
  // otherwise no tile owns it as a start and Σ class-A < object count.
  Mbr cb = *clip(object.mbr, grid_.domain);
  for (int iy = range.iy0; iy <= range.iy1; ++iy) {
    for (int ix = range.ix0; ix <= range.ix1; ++ix) {
      TileId t{ix, iy};
      size_t s = slot(t);
      BoxClass c = variant_ == Variant::one_level
                       ? BoxClass::A
                       : class_of(grid_, cb, t);
      std::vector<Entry>& list = buckets_[s].of(c);
      if (classes_sorted_) {
        // Keep the plane-sweep order stable across incremental inserts.
        auto pos = std::upper_bound(
            list.begin(), list.end(), entry,
            [](const Entry& a, const Entry& b) { return a.mbr.xlo < b.mbr.xlo; });
        list.insert(pos, entry);
      } else {
        list.push_back(entry);
      }
      if (variant_ == Variant::two_level_plus && !bulk_loading_) {
        DecomposedTables& tables = decomposed_[s];
        const double coord[4] = {object.mbr.xlo, object.mbr.xhi,
                                 object.mbr.ylo, object.mbr.yhi};
        for (int a = 0; a < 4; ++a) {
          SortedColumn& column = tables.of(c, static_cast<Axis>(a));
          std::pair<double, uint32_t> key{coord[a], object.id};
          auto pos = std::upper_bound(column.begin(), column.end(), key);
          column.insert(pos, key);
        }
      }
      ++cell_counts_[s];
      ++total_entries_;
    }
  }
}

const ObjectRecord& GridIndex::object(uint32_t id) const {
  auto it = slot_of_id_.find(id);
  if (it == slot_of_id_.end())
    throw std::out_of_range("unknown object id " + std::to_string(id));
  return objects_[it->second];
}

double GridIndex::replication_ratio() const {
  if (objects_.empty()) return 1.0;
  return static_cast<double>(total_entries_) /
         static_cast<double>(objects_.size());
}

size_t GridIndex::storage_bytes() const {
  size_t bytes = total_entries_ * sizeof(Entry);
  if (variant_ == Variant::two_level_plus)
    bytes += total_entries_ * 4 * sizeof(std::pair<double, uint32_t>);
  bytes += cell_counts_.size() * sizeof(uint32_t);
  return bytes;
}

void GridIndex::rebuild_decomposed() {
  const double Mbr::* field[4] = {&Mbr::xlo, &Mbr::xhi, &Mbr::ylo, &Mbr::yhi};
  for (size_t s = 0; s < buckets_.size(); ++s) {
    for (uint8_t c = 0; c < kClassCount; ++c) {
      const std::vector<Entry>& list = buckets_[s].by_class[c];
      for (int a = 0; a < 4; ++a) {
        SortedColumn& column = decomposed_[s].columns[c][a];
        column.clear();
        column.reserve(list.size());
        for (const Entry& e : list) column.emplace_back(e.mbr.*field[a], e.id);
        // Lexicographic (coordinate, id) order: ties at shared boundaries are
        // common and the incremental insert must land at a unique position.
        std::sort(column.begin(), column.end());
      }
    }
  }
}

void GridIndex::ensure_sorted_classes() {
  if (classes_sorted_) return;
  for (TileBucket& bucket : buckets_) {
    for (std::vector<Entry>& list : bucket.by_class) {
      std::sort(list.begin(), list.end(), [](const Entry& a, const Entry& b) {
        return a.mbr.xlo < b.mbr.xlo;
      });
    }
  }
  classes_sorted_ = true;
}

}  // namespace tilegrid
