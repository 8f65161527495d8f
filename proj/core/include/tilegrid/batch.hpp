#pragma once

#include <variant>
#include <vector>

#include "tilegrid/query.hpp"

namespace tilegrid {

using RangeQuery = std::variant<Mbr, Disk>;

struct BatchResult {
  /// Result ids per input query, unsorted; order within a query may vary
  /// with scheduling, the sets never do.
  std::vector<std::vector<uint32_t>> per_query;
  QueryStats stats;
};

/// Round-robin assignment of whole queries to workers; worker t evaluates
/// queries t, t + threads, t + 2*threads, ...
BatchResult batch_queries_based(const GridIndex& index,
                                const std::vector<RangeQuery>& queries,
                                int threads);

/// Two-phase evaluation: phase one plans every query and gathers its tile
/// tasks per tile, phase two makes one work unit per non-empty tile so each
/// bucket is streamed through the cache once for all queries touching it.
/// Work units are stolen dynamically; emissions go to per-worker buffers
/// merged at the end. Needs a two-level index.
BatchResult batch_tiles_based(const GridIndex& index,
                              const std::vector<RangeQuery>& queries,
                              int threads);

/// TILEGRID_THREADS when set, otherwise the hardware thread count.
int default_thread_count();

}  // namespace tilegrid
