#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "tilegrid/index.hpp"

namespace tilegrid {

/// Input with one or more malformed lines; message lists every bad line.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class FileFormat : uint8_t {
  mbr_csv,  // id,xlo,ylo,xhi,yhi (header line optional)
  wkt,      // id<TAB>POLYGON((x y, ...)) or id<TAB>LINESTRING(x y, ...)
};

struct NormalizationInfo {
  Mbr source_bbox{0.0, 0.0, 1.0, 1.0};  // data bbox before any rescaling
  bool applied = false;                 // true if coordinates were rescaled
};

struct Dataset {
  std::vector<ObjectRecord> records;
  NormalizationInfo normalization;
};

/// Parse without normalizing. Malformed rows (bad field counts, non-numeric
/// values, inverted MBRs, duplicate ids, non-simple polygon rings) raise
/// ParseError naming each offending line number.
Dataset read_dataset(std::istream& in, FileFormat format);

/// Rescale coordinates into the unit square unless they already fit.
/// Each dimension is mapped by min-max over the dataset bbox; geometry
/// vertices are transformed and MBRs recomputed from them.
void normalize(Dataset& ds);

/// read_dataset + normalize from a file path.
Dataset ingest_file(const std::string& path, FileFormat format);

void write_mbr_csv(const Dataset& ds, std::ostream& out);
void write_wkt(const Dataset& ds, std::ostream& out);

}  // namespace tilegrid
