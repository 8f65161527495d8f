#include "tilegrid/geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tilegrid {

std::optional<Mbr> clip(const Mbr& r, const Mbr& window) {
  Mbr out{std::max(r.xlo, window.xlo), std::max(r.ylo, window.ylo),
          std::min(r.xhi, window.xhi), std::min(r.yhi, window.yhi)};
  if (!out.valid()) return std::nullopt;
  return out;
}

double dist(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double min_dist(const Point& q, const Mbr& r) {
  double dx = std::max({r.xlo - q.x, 0.0, q.x - r.xhi});
  double dy = std::max({r.ylo - q.y, 0.0, q.y - r.yhi});
  return std::hypot(dx, dy);
}

double max_dist(const Point& q, const Mbr& r) {
  double dx = std::max(std::abs(q.x - r.xlo), std::abs(q.x - r.xhi));
  double dy = std::max(std::abs(q.y - r.ylo), std::abs(q.y - r.yhi));
  return std::hypot(dx, dy);
}

double dist_point_segment(const Point& q, const Point& a, const Point& b) {
  double vx = b.x - a.x;
  double vy = b.y - a.y;
  double len2 = vx * vx + vy * vy;
  if (len2 == 0.0) return dist(q, a);
  double t = ((q.x - a.x) * vx + (q.y - a.y) * vy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(q, {a.x + t * vx, a.y + t * vy});
}

// Liang-Barsky parametric clip; keeps closed semantics, so grazing contact
// counts as intersection.
bool segment_intersects_box(const Point& a, const Point& b, const Mbr& box) {
  double t0 = 0.0;
  double t1 = 1.0;
  double dx = b.x - a.x;
  double dy = b.y - a.y;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x - box.xlo, box.xhi - a.x, a.y - box.ylo,
                       box.yhi - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;  // parallel and fully outside
      continue;
    }
    double t = q[i] / p[i];
    if (p[i] < 0.0) {
      if (t > t1) return false;
      t0 = std::max(t0, t);
    } else {
      if (t < t0) return false;
      t1 = std::min(t1, t);
    }
  }
  return t0 <= t1;
}

bool point_in_polygon(const Point& q, const std::vector<Point>& ring) {
  bool inside = false;
  size_t n = ring.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = ring[j];
    const Point& b = ring[i];
    bool crosses = (b.y > q.y) != (a.y > q.y);
    if (crosses) {
      double x_at = b.x + (q.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (q.x < x_at) inside = !inside;
    }
  }
  return inside;
}

Mbr Geometry::bounding_box() const {
  Mbr box{vertices.front().x, vertices.front().y, vertices.front().x,
          vertices.front().y};
  for (const Point& p : vertices) {
    box.xlo = std::min(box.xlo, p.x);
    box.ylo = std::min(box.ylo, p.y);
    box.xhi = std::max(box.xhi, p.x);
    box.yhi = std::max(box.yhi, p.y);
  }
  return box;
}

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Closed segment intersection (shared endpoints count).
bool segments_intersect(const Point& a, const Point& b, const Point& c,
                        const Point& d) {
  double d1 = cross(c, d, a);
  double d2 = cross(c, d, b);
  double d3 = cross(a, b, c);
  double d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

}  // namespace

bool is_simple_polygon(const std::vector<Point>& ring) {
  size_t n = ring.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    if (ring[i] == ring[(i + 1) % n]) return false;
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      // Skip the pair itself and the two adjacent pairs (they share a vertex).
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(ring[i], ring[(i + 1) % n], ring[j],
                             ring[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

bool intersects(const Geometry& g, const Mbr& w) {
  size_t n = g.vertices.size();
  if (g.kind == GeometryKind::linestring) {
    if (n == 1) return w.contains(g.vertices[0]);
    for (size_t i = 0; i + 1 < n; ++i) {
      if (segment_intersects_box(g.vertices[i], g.vertices[i + 1], w))
        return true;
    }
    return false;
  }
  for (size_t i = 0; i < n; ++i) {
    if (segment_intersects_box(g.vertices[i], g.vertices[(i + 1) % n], w))
      return true;
  }
  // No edge meets the box: either disjoint or one contains the other.
  return point_in_polygon({w.xlo, w.ylo}, g.vertices);
}

bool intersects(const Geometry& g, const Disk& d) {
  size_t n = g.vertices.size();
  if (g.kind == GeometryKind::linestring) {
    if (n == 1) return dist(g.vertices[0], d.center) <= d.radius;
    for (size_t i = 0; i + 1 < n; ++i) {
      if (dist_point_segment(d.center, g.vertices[i], g.vertices[i + 1]) <=
          d.radius)
        return true;
    }
    return false;
  }
  for (size_t i = 0; i < n; ++i) {
    if (dist_point_segment(d.center, g.vertices[i], g.vertices[(i + 1) % n]) <=
        d.radius)
      return true;
  }
  return point_in_polygon(d.center, g.vertices);
}

ConvexPolygon ConvexPolygon::make(std::vector<Point> vertices) {
  size_t n = vertices.size();
  if (n < 3) throw std::invalid_argument("convex polygon needs >= 3 vertices");
  double area2 = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % n];
    area2 += a.x * b.y - b.x * a.y;
  }
  if (area2 < 0.0)  // clockwise input: flip to the CCW orientation we store
    std::reverse(vertices.begin(), vertices.end());
  bool has_turn = false;
  for (size_t i = 0; i < n; ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % n];
    const Point& c = vertices[(i + 2) % n];
    double turn = cross(a, b, c);
    if (turn < 0.0) throw std::invalid_argument("polygon is not convex");
    if (turn > 0.0) has_turn = true;
  }
  if (!has_turn || area2 == 0.0)
    throw std::invalid_argument("polygon is degenerate");
  ConvexPolygon poly;
  poly.bbox_ = Geometry{GeometryKind::polygon, vertices}.bounding_box();
  poly.vertices_ = std::move(vertices);
  return poly;
}

bool ConvexPolygon::contains(const Point& p) const {
  size_t n = vertices_.size();
  for (size_t i = 0; i < n; ++i) {
    if (cross(vertices_[i], vertices_[(i + 1) % n], p) < 0.0) return false;
  }
  return true;
}

bool intersects(const ConvexPolygon& poly, const Mbr& r) {
  if (!intersects(poly.bounding_box(), r)) return false;  // x and y axes
  const std::vector<Point>& v = poly.vertices();
  size_t n = v.size();
  for (size_t i = 0; i < n; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    // Outward edge normal; the polygon lies entirely on one side.
    double nx = b.y - a.y;
    double ny = a.x - b.x;
    double poly_max = nx * a.x + ny * a.y;  // all vertices project <= this
    for (const Point& p : v)
      poly_max = std::max(poly_max, nx * p.x + ny * p.y);
    double rect_min =
        std::min(nx * r.xlo, nx * r.xhi) + std::min(ny * r.ylo, ny * r.yhi);
    if (rect_min > poly_max) return false;  // separated on this axis
  }
  return true;
}

}  // namespace tilegrid
