#pragma once

#include <cstdint>

namespace tilegrid {

/// Work counters for one query (or an aggregated batch). For refinement-mode
/// queries, refinements_run + refinements_avoided == candidates; filter-only
/// queries leave both refinement counters at zero.
struct QueryStats {
  /// MBR-endpoint vs query-endpoint comparisons actually executed, including
  /// dedup bookkeeping and binary-search probes on sorted columns.
  uint64_t endpoint_comparisons = 0;
  /// Entries that passed the filter step.
  uint64_t candidates = 0;
  uint64_t refinements_run = 0;
  uint64_t refinements_avoided = 0;
  /// Per-entry point-to-MBR distance evaluations (disk queries).
  uint64_t distance_computations = 0;
  uint64_t tiles_scanned = 0;

  void merge(const QueryStats& o) {
    endpoint_comparisons += o.endpoint_comparisons;
    candidates += o.candidates;
    refinements_run += o.refinements_run;
    refinements_avoided += o.refinements_avoided;
    distance_computations += o.distance_computations;
    tiles_scanned += o.tiles_scanned;
  }
};

}  // namespace tilegrid
