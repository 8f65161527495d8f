#include "tilegrid/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace tilegrid {
namespace {

constexpr size_t kMaxReportedErrors = 20;

struct ErrorSink {
  std::vector<std::string> lines;
  size_t total = 0;

  void add(size_t line_no, const std::string& what) {
    ++total;
    if (lines.size() < kMaxReportedErrors)
      lines.push_back("line " + std::to_string(line_no) + ": " + what);
  }
  void raise_if_any() const {
    if (total == 0) return;
    std::string msg = std::to_string(total) + " malformed line(s):";
    for (const std::string& l : lines) msg += "\n  " + l;
    if (total > lines.size())
      msg += "\n  ...and " + std::to_string(total - lines.size()) + " more";
    throw ParseError(msg);
  }
};

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_double(const std::string& s, double& out) {
  const char* p = s.c_str();
  char* end = nullptr;
  out = std::strtod(p, &end);
  return end != p && *end == '\0' && std::isfinite(out);
}

bool parse_id(const std::string& s, uint32_t& out) {
  if (s.empty() || !std::isdigit(static_cast<unsigned char>(s[0])))
    return false;
  const char* p = s.c_str();
  char* end = nullptr;
  unsigned long v = std::strtoul(p, &end, 10);
  if (end == p || *end != '\0' || v > 0xffffffffUL) return false;
  out = static_cast<uint32_t>(v);
  return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t b = 0;
  while (true) {
    size_t e = s.find(sep, b);
    if (e == std::string::npos) {
      out.push_back(s.substr(b));
      return out;
    }
    out.push_back(s.substr(b, e - b));
    b = e + 1;
  }
}

Dataset read_mbr_csv(std::istream& in) {
  Dataset ds;
  ErrorSink errors;
  std::unordered_set<uint32_t> ids;
  std::string raw;
  size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (first_content_line) {
      first_content_line = false;
      // optional header row
      if (line.rfind("id", 0) == 0 &&
          !std::isdigit(static_cast<unsigned char>(line.size() > 2 ? line[2] : 'x')))
        continue;
    }
    std::vector<std::string> f = split(line, ',');
    if (f.size() != 5) {
      errors.add(line_no, "expected 5 comma-separated fields, got " +
                              std::to_string(f.size()));
      continue;
    }
    uint32_t id;
    double xlo, ylo, xhi, yhi;
    if (!parse_id(trim(f[0]), id)) {
      errors.add(line_no, "bad id '" + trim(f[0]) + "'");
      continue;
    }
    if (!parse_double(trim(f[1]), xlo) || !parse_double(trim(f[2]), ylo) ||
        !parse_double(trim(f[3]), xhi) || !parse_double(trim(f[4]), yhi)) {
      errors.add(line_no, "non-numeric coordinate");
      continue;
    }
    if (xlo > xhi || ylo > yhi) {
      errors.add(line_no, "inverted MBR (lo must not exceed hi)");
      continue;
    }
    if (!ids.insert(id).second) {
      errors.add(line_no, "duplicate id " + std::to_string(id));
      continue;
    }
    ObjectRecord rec;
    rec.id = id;
    rec.mbr = Mbr{xlo, ylo, xhi, yhi};
    ds.records.push_back(std::move(rec));
  }
  errors.raise_if_any();
  return ds;
}

// Minimal WKT reader for single-ring POLYGON and LINESTRING bodies.
struct WktCursor {
  const std::string& s;
  size_t pos = 0;

  void skip_space() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_space();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_space();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool number(double& out) {
    skip_space();
    const char* p = s.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(p, &end);
    if (end == p || !std::isfinite(v)) return false;
    pos += static_cast<size_t>(end - p);
    out = v;
    return true;
  }
  std::string keyword() {
    skip_space();
    size_t b = pos;
    while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos])))
      ++pos;
    std::string k = s.substr(b, pos - b);
    for (char& c : k) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return k;
  }
};

bool parse_coord_list(WktCursor& cur, std::vector<Point>& out,
                      std::string& why) {
  while (true) {
    double x, y;
    if (!cur.number(x) || !cur.number(y)) {
      why = "expected 'x y' coordinate pair";
      return false;
    }
    out.push_back(Point{x, y});
    if (cur.eat(',')) continue;
    if (cur.eat(')')) return true;
    why = "expected ',' or ')' after coordinate pair";
    return false;
  }
}

bool parse_wkt_geometry(const std::string& text, Geometry& geom,
                        std::string& why) {
  WktCursor cur{text};
  std::string kw = cur.keyword();
  if (kw == "POLYGON") {
    if (!cur.eat('(') || !cur.eat('(')) {
      why = "POLYGON body must start with '(('";
      return false;
    }
    std::vector<Point> ring;
    if (!parse_coord_list(cur, ring, why)) return false;
    if (cur.peek() == ',') {
      why = "polygons with holes are not supported";
      return false;
    }
    if (!cur.eat(')')) {
      why = "POLYGON body must end with '))'";
      return false;
    }
    if (cur.peek() != '\0') {
      why = "trailing characters after POLYGON body";
      return false;
    }
    if (ring.size() >= 2 && ring.front().x == ring.back().x &&
        ring.front().y == ring.back().y)
      ring.pop_back();  // WKT rings repeat the first vertex at the end
    if (ring.size() < 3) {
      why = "polygon ring needs at least 3 distinct vertices";
      return false;
    }
    geom.kind = GeometryKind::polygon;
    geom.vertices = std::move(ring);
    if (!is_simple_polygon(geom.vertices)) {
      why = "polygon ring is not simple";
      return false;
    }
    return true;
  }
  if (kw == "LINESTRING") {
    if (!cur.eat('(')) {
      why = "LINESTRING body must start with '('";
      return false;
    }
    std::vector<Point> path;
    if (!parse_coord_list(cur, path, why)) return false;
    if (cur.peek() != '\0') {
      why = "trailing characters after LINESTRING body";
      return false;
    }
    if (path.size() < 2) {
      why = "linestring needs at least 2 vertices";
      return false;
    }
    geom.kind = GeometryKind::linestring;
    geom.vertices = std::move(path);
    return true;
  }
  why = "unsupported geometry type '" + kw + "'";
  return false;
}

Dataset read_wkt(std::istream& in) {
  Dataset ds;
  ErrorSink errors;
  std::unordered_set<uint32_t> ids;
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      errors.add(line_no, "expected 'id<TAB>WKT'");
      continue;
    }
    uint32_t id;
    if (!parse_id(trim(line.substr(0, tab)), id)) {
      errors.add(line_no, "bad id '" + trim(line.substr(0, tab)) + "'");
      continue;
    }
    Geometry geom;
    std::string why;
    if (!parse_wkt_geometry(line.substr(tab + 1), geom, why)) {
      errors.add(line_no, why);
      continue;
    }
    if (!ids.insert(id).second) {
      errors.add(line_no, "duplicate id " + std::to_string(id));
      continue;
    }
    ObjectRecord rec;
    rec.id = id;
    rec.mbr = geom.bounding_box();
    rec.geometry = std::move(geom);
    ds.records.push_back(std::move(rec));
  }
  errors.raise_if_any();
  return ds;
}

void fmt(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

Dataset read_dataset(std::istream& in, FileFormat format) {
  return format == FileFormat::mbr_csv ? read_mbr_csv(in) : read_wkt(in);
}

void normalize(Dataset& ds) {
  if (ds.records.empty()) return;
  Mbr bbox = ds.records.front().mbr;
  for (const ObjectRecord& r : ds.records) {
    bbox.xlo = std::min(bbox.xlo, r.mbr.xlo);
    bbox.ylo = std::min(bbox.ylo, r.mbr.ylo);
    bbox.xhi = std::max(bbox.xhi, r.mbr.xhi);
    bbox.yhi = std::max(bbox.yhi, r.mbr.yhi);
  }
  ds.normalization.source_bbox = bbox;
  if (bbox.xlo >= 0.0 && bbox.ylo >= 0.0 && bbox.xhi <= 1.0 && bbox.yhi <= 1.0) {
    ds.normalization.applied = false;  // already inside the unit square
    return;
  }
  double sx = bbox.xhi - bbox.xlo;
  double sy = bbox.yhi - bbox.ylo;
  auto tx = [&](double v) { return sx > 0.0 ? (v - bbox.xlo) / sx : 0.0; };
  auto ty = [&](double v) { return sy > 0.0 ? (v - bbox.ylo) / sy : 0.0; };
  for (ObjectRecord& r : ds.records) {
    if (r.geometry) {
      for (Point& p : r.geometry->vertices) {
        p.x = tx(p.x);
        p.y = ty(p.y);
      }
      r.mbr = r.geometry->bounding_box();
    } else {
      r.mbr = Mbr{tx(r.mbr.xlo), ty(r.mbr.ylo), tx(r.mbr.xhi), ty(r.mbr.yhi)};
    }
  }
  ds.normalization.applied = true;
}

Dataset ingest_file(const std::string& path, FileFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  Dataset ds = read_dataset(in, format);
  normalize(ds);
  return ds;
}

void write_mbr_csv(const Dataset& ds, std::ostream& out) {
  out << "id,xlo,ylo,xhi,yhi\n";
  std::string line;
  for (const ObjectRecord& r : ds.records) {
    line.clear();
    line += std::to_string(r.id);
    for (double v : {r.mbr.xlo, r.mbr.ylo, r.mbr.xhi, r.mbr.yhi}) {
      line += ',';
      fmt(line, v);
    }
    line += '\n';
    out << line;
  }
}

void write_wkt(const Dataset& ds, std::ostream& out) {
  std::string line;
  auto coords = [&](const std::vector<Point>& pts, bool close) {
    for (size_t i = 0; i < pts.size() + (close ? 1 : 0); ++i) {
      const Point& p = pts[i % pts.size()];
      if (i) line += ", ";
      fmt(line, p.x);
      line += ' ';
      fmt(line, p.y);
    }
  };
  for (const ObjectRecord& r : ds.records) {
    line.clear();
    line += std::to_string(r.id);
    line += '\t';
    if (r.geometry && r.geometry->kind == GeometryKind::linestring) {
      line += "LINESTRING(";
      coords(r.geometry->vertices, false);
      line += ")";
    } else if (r.geometry) {
      line += "POLYGON((";
      coords(r.geometry->vertices, true);
      line += "))";
    } else {
      // no stored shape: emit the MBR outline
      std::vector<Point> box{{r.mbr.xlo, r.mbr.ylo},
                             {r.mbr.xhi, r.mbr.ylo},
                             {r.mbr.xhi, r.mbr.yhi},
                             {r.mbr.xlo, r.mbr.yhi}};
      line += "POLYGON((";
      coords(box, true);
      line += "))";
    }
    line += '\n';
    out << line;
  }
}

}  // namespace tilegrid
