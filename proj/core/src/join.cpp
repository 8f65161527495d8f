#include "tilegrid/join.hpp"

#include <algorithm>
#include <stdexcept>

#include "tilegrid/parallel.hpp"

namespace tilegrid {
namespace {

// Forward plane sweep over two xlo-sorted runs. Each pair is emitted while
// stepping the side whose rectangle starts first in x (ties step the left
// side), so no pair can be produced twice.
void sweep(const std::vector<Entry>& ls, const std::vector<Entry>& rs,
           JoinResult& out) {
  size_t i = 0;
  size_t j = 0;
  while (i < ls.size() && j < rs.size()) {
    if (ls[i].mbr.xlo <= rs[j].mbr.xlo) {
      const Entry& r = ls[i];
      for (size_t k = j; k < rs.size() && rs[k].mbr.xlo <= r.mbr.xhi; ++k) {
        ++out.comparisons;
        if (r.mbr.ylo <= rs[k].mbr.yhi && rs[k].mbr.ylo <= r.mbr.yhi)
          out.pairs.emplace_back(r.id, rs[k].id);
      }
      ++i;
    } else {
      const Entry& s = rs[j];
      for (size_t k = i; k < ls.size() && ls[k].mbr.xlo <= s.mbr.xhi; ++k) {
        ++out.comparisons;
        if (s.mbr.ylo <= ls[k].mbr.yhi && ls[k].mbr.ylo <= s.mbr.yhi)
          out.pairs.emplace_back(ls[k].id, s.id);
      }
      ++j;
    }
  }
}

template <typename KeepPair>
void join_tile_impl(const GridIndex& left, const GridIndex& right, TileId t,
                    JoinResult& out, KeepPair keep) {
  const TileBucket& lb = left.bucket(t);
  const TileBucket& rb = right.bucket(t);
  for (uint8_t a = 0; a < 4; ++a) {
    const std::vector<Entry>& ls = lb.by_class[a];
    if (ls.empty()) continue;
    for (uint8_t b = 0; b < 4; ++b) {
      if (!keep(static_cast<BoxClass>(a), static_cast<BoxClass>(b))) continue;
      const std::vector<Entry>& rs = rb.by_class[b];
      if (rs.empty()) continue;
      sweep(ls, rs, out);
    }
  }
}

void check_operands(const GridIndex& left, const GridIndex& right) {
  if (!(left.grid() == right.grid()))
    throw std::invalid_argument("spatial_join: operands must share one grid");
  if (left.variant() == Variant::one_level ||
      right.variant() == Variant::one_level)
    throw std::invalid_argument(
        "spatial_join: single-partition indexes cannot skip class pairs; "
        "build both operands as two_level or two_level_plus");
}

template <typename KeepPair>
JoinResult join_impl(GridIndex& left, GridIndex& right, int threads,
                     KeepPair keep) {
  check_operands(left, right);
  left.ensure_sorted_classes();
  right.ensure_sorted_classes();

  const GridConfig& g = left.grid();
  std::vector<TileId> work;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      TileId t{ix, iy};
      if (left.cell_count(t) > 0 && right.cell_count(t) > 0)
        work.push_back(t);
    }

  std::vector<JoinResult> partial(
      static_cast<size_t>(std::max(threads, 1)));
  parallel_for(work.size(), threads, [&](size_t w, unsigned worker) {
    join_tile_impl(left, right, work[w], partial[worker], keep);
  });

  JoinResult out;
  for (const JoinResult& p : partial) {
    out.comparisons += p.comparisons;
    out.pairs.insert(out.pairs.end(), p.pairs.begin(), p.pairs.end());
  }
  return out;
}

}  // namespace

void tile_join(const GridIndex& left, const GridIndex& right, TileId t,
               JoinResult& out) {
  join_tile_impl(left, right, t, out, class_pair_evaluated);
}

void tile_join_skipped(const GridIndex& left, const GridIndex& right, TileId t,
                       JoinResult& out) {
  join_tile_impl(left, right, t, out,
                 [](BoxClass a, BoxClass b) { return !class_pair_evaluated(a, b); });
}

JoinResult spatial_join(GridIndex& left, GridIndex& right, int threads) {
  return join_impl(left, right, threads, class_pair_evaluated);
}

JoinResult spatial_join_skipped_pairs(GridIndex& left, GridIndex& right) {
  return join_impl(left, right, 1, [](BoxClass a, BoxClass b) {
    return !class_pair_evaluated(a, b);
  });
}

}  // namespace tilegrid
