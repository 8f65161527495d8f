#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tilegrid {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Closed axis-aligned rectangle. Degenerate extents (lo == hi) are legal.
struct Mbr {
  double xlo = 0.0;
  double ylo = 0.0;
  double xhi = 0.0;
  double yhi = 0.0;

  double lo(int dim) const { return dim == 0 ? xlo : ylo; }
  double hi(int dim) const { return dim == 0 ? xhi : yhi; }

  bool valid() const { return xlo <= xhi && ylo <= yhi; }
  double width() const { return xhi - xlo; }
  double height() const { return yhi - ylo; }
  double area() const { return width() * height(); }
  Point center() const { return {(xlo + xhi) / 2.0, (ylo + yhi) / 2.0}; }

  bool contains(const Point& p) const {
    return xlo <= p.x && p.x <= xhi && ylo <= p.y && p.y <= yhi;
  }
  bool contains(const Mbr& r) const {
    return xlo <= r.xlo && r.xhi <= xhi && ylo <= r.ylo && r.yhi <= yhi;
  }

  static Mbr of_point(const Point& p) { return {p.x, p.y, p.x, p.y}; }

  friend bool operator==(const Mbr&, const Mbr&) = default;
};

struct Disk {
  Point center;
  double radius = 0.0;
};

/// Both intervals of each rectangle are closed, so touching boundaries count
/// as intersection.
inline bool intersects(const Mbr& a, const Mbr& b) {
  return a.xlo <= b.xhi && b.xlo <= a.xhi && a.ylo <= b.yhi && b.ylo <= a.yhi;
}

/// Intersection of two rectangles; empty if they do not meet.
std::optional<Mbr> clip(const Mbr& r, const Mbr& window);

double dist(const Point& a, const Point& b);

/// Distance from q to the nearest point of r (0 when q is inside).
double min_dist(const Point& q, const Mbr& r);

/// Distance from q to the farthest point of r.
double max_dist(const Point& q, const Mbr& r);

double dist_point_segment(const Point& q, const Point& a, const Point& b);

/// True when segment ab meets the box (closed; containment counts).
bool segment_intersects_box(const Point& a, const Point& b, const Mbr& box);

/// Even-odd crossing test. Points exactly on the boundary may land on either
/// side; exact boundary handling is delegated to segment tests by callers.
bool point_in_polygon(const Point& q, const std::vector<Point>& ring);

enum class GeometryKind { polygon, linestring };

/// Exact shape of an object: a single-ring simple polygon (implicitly closed)
/// or a polyline. Vertex order for polygons is arbitrary but the ring must be
/// simple; holes are not supported.
struct Geometry {
  GeometryKind kind = GeometryKind::polygon;
  std::vector<Point> vertices;

  Mbr bounding_box() const;
};

/// True when the ring has >= 3 vertices, no repeated consecutive vertices and
/// no two non-adjacent edges meet.
bool is_simple_polygon(const std::vector<Point>& ring);

bool intersects(const Geometry& g, const Mbr& w);
bool intersects(const Geometry& g, const Disk& d);

/// Convex polygon in counter-clockwise vertex order; construction validates.
class ConvexPolygon {
 public:
  /// Accepts either winding (clockwise input is reversed); throws
  /// std::invalid_argument unless the ring is convex with positive area.
  static ConvexPolygon make(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  const Mbr& bounding_box() const { return bbox_; }

  bool contains(const Point& p) const;

 private:
  std::vector<Point> vertices_;
  Mbr bbox_;
};

/// Separating-axis test between a convex polygon and a rectangle (closed).
bool intersects(const ConvexPolygon& poly, const Mbr& r);

}  // namespace tilegrid
