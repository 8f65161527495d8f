#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tilegrid/index.hpp"

namespace tilegrid {

enum class QueryKind : uint8_t { window, disk, knn };

/// One query of a workload file. Exactly one payload is meaningful:
///   window -> `W xlo ylo xhi yhi`
///   disk   -> `D cx cy radius`
///   knn    -> `K cx cy k`
struct QuerySpec {
  QueryKind kind = QueryKind::window;
  Mbr window{0.0, 0.0, 0.0, 0.0};
  Disk disk{{0.0, 0.0}, 0.0};
  Point point{0.0, 0.0};
  uint32_t k = 0;
};

std::vector<QuerySpec> parse_workload(std::istream& in);
void write_workload(const std::vector<QuerySpec>& qs, std::ostream& out);

struct WorkloadOptions {
  QueryKind kind = QueryKind::window;
  size_t count = 100;
  /// Query area as a fraction of the unit-square domain area. Windows are
  /// squares of side sqrt(area_ratio); disks get the area-matched radius
  /// sqrt(area_ratio / pi). Ignored for knn.
  double area_ratio = 0.001;
  uint32_t k = 10;  // knn only
  uint64_t seed = 1;
  /// Centre each query inside the MBR of a randomly drawn object so results
  /// are rarely empty. Needs a data argument.
  bool nonempty = false;
};

std::vector<QuerySpec> gen_workload(const WorkloadOptions& opt,
                                    const std::vector<ObjectRecord>* data = nullptr);

/// n axis-parallel boxes with centres uniform in the unit square and per-axis
/// extents drawn from avg_extent * U(0.5, 1.5), shifted to stay inside.
std::vector<ObjectRecord> gen_uniform_mbrs(size_t n, double avg_extent,
                                           uint64_t seed);

/// Same box shapes, centres drawn around `clusters` uniform cluster seeds
/// with per-axis gaussian spread sigma.
std::vector<ObjectRecord> gen_clustered_mbrs(size_t n, size_t clusters,
                                             double sigma, double avg_extent,
                                             uint64_t seed);

/// n records carrying real shapes: star-shaped polygons (always simple,
/// often concave) alternating with random-walk linestrings, diameter about
/// avg_extent. Used to exercise the refinement step.
std::vector<ObjectRecord> gen_geometry_records(size_t n, double avg_extent,
                                               uint64_t seed);

}  // namespace tilegrid
