#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cagemap {

inline constexpr double kPi = 3.14159265358979323846;
// Absolute tolerance for coordinate comparisons (duplicate merging,
// lattice admissibility).  Workspace units.
inline constexpr double kTol = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point() = default;
  Point(double px, double py) : x(px), y(py) {
    if (!std::isfinite(px) || !std::isfinite(py))
      throw std::invalid_argument("Point: coordinates must be finite");
  }

  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
};

inline Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, const Point& p) { return {s * p.x, s * p.y}; }

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(const Point& p) { return p.x * p.x + p.y * p.y; }
inline double norm(const Point& p) { return std::sqrt(norm_sq(p)); }
inline double distance_sq(const Point& a, const Point& b) { return norm_sq(a - b); }
inline double distance(const Point& a, const Point& b) { return std::sqrt(distance_sq(a, b)); }

struct Disk {
  Point center;
  double radius = 0.0;

  Disk() = default;
  Disk(const Point& c, double r) : center(c), radius(r) {
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::invalid_argument("Disk: radius must be positive and finite");
  }
};

// Union of equal-radius disks.  An empty union is allowed (it represents an
// empty workspace); operations that need at least one disk say so.
struct DiskUnion {
  std::vector<Disk> disks;
  double common_radius = 0.0;

  DiskUnion() = default;
  explicit DiskUnion(std::vector<Disk> d) : disks(std::move(d)) {
    if (!disks.empty()) {
      common_radius = disks.front().radius;
      for (const Disk& disk : disks)
        if (std::abs(disk.radius - common_radius) > kTol)
          throw std::invalid_argument("DiskUnion: all radii must be equal");
    }
  }
  DiskUnion(std::vector<Point> centers, double radius) {
    disks.reserve(centers.size());
    for (const Point& c : centers) disks.emplace_back(c, radius);
    common_radius = disks.empty() ? radius : disks.front().radius;
  }

  bool empty() const { return disks.empty(); }
  std::size_t size() const { return disks.size(); }
};

// Negative strictly inside some disk, zero on the boundary of the union,
// positive outside.  Requires a nonempty union.
inline double signed_distance(const Point& p, const DiskUnion& u) {
  if (u.empty()) throw std::invalid_argument("signed_distance: empty union");
  double best = std::numeric_limits<double>::infinity();
  for (const Disk& d : u.disks)
    best = std::min(best, distance(p, d.center) - d.radius);
  return best;
}

struct Configuration {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // normalized to [0, 2*pi)

  Configuration() = default;
  Configuration(double cx, double cy, double t) : x(cx), y(cy) {
    if (!std::isfinite(cx) || !std::isfinite(cy) || !std::isfinite(t))
      throw std::invalid_argument("Configuration: values must be finite");
    theta = std::fmod(t, 2.0 * kPi);
    if (theta < 0.0) theta += 2.0 * kPi;
    if (theta >= 2.0 * kPi) theta = 0.0;
  }
};

// A rigid object as a union of equal-radius disks.  Centers in `body` are
// offsets from the reference point G, which is the mean of the absolute
// centers the object was built from.
struct RigidObject {
  DiskUnion body;
  Point reference;
  double diam = 0.0;  // max over disks of |offset| + radius
};

inline double object_diameter(const RigidObject& obj) {
  double d = 0.0;
  for (const Disk& b : obj.body.disks)
    d = std::max(d, norm(b.center) + b.radius);
  return d;
}

inline RigidObject make_rigid_object(const DiskUnion& absolute) {
  if (absolute.empty())
    throw std::invalid_argument("make_rigid_object: object needs at least one disk");
  Point g{0.0, 0.0};
  for (const Disk& d : absolute.disks) g = g + d.center;
  g = (1.0 / static_cast<double>(absolute.size())) * g;
  RigidObject obj;
  std::vector<Disk> offs;
  offs.reserve(absolute.size());
  for (const Disk& d : absolute.disks) offs.emplace_back(d.center - g, d.radius);
  obj.body = DiskUnion(std::move(offs));
  obj.reference = g;
  obj.diam = object_diameter(obj);
  return obj;
}

// Object disks placed at configuration c: rotate offsets by theta, translate
// by (x, y).
inline DiskUnion transform(const DiskUnion& body, const Configuration& c) {
  const double co = std::cos(c.theta), si = std::sin(c.theta);
  std::vector<Disk> placed;
  placed.reserve(body.size());
  for (const Disk& b : body.disks)
    placed.emplace_back(Point{c.x + co * b.center.x - si * b.center.y,
                              c.y + si * b.center.x + co * b.center.y},
                        b.radius);
  return DiskUnion(std::move(placed));
}

// Exact-contact semantics: touching boundaries is not a collision.
inline bool in_collision(const Configuration& c, const RigidObject& obj,
                         const DiskUnion& obstacles) {
  if (obstacles.empty()) return false;
  const DiskUnion placed = transform(obj.body, c);
  for (const Disk& a : placed.disks)
    for (const Disk& o : obstacles.disks) {
      const double rr = a.radius + o.radius;
      if (distance_sq(a.center, o.center) < rr * rr) return true;
    }
  return false;
}

struct Polygon {
  std::vector<Point> vertices;  // counter-clockwise, simple

  explicit Polygon(std::vector<Point> v) : vertices(std::move(v)) {
    if (vertices.size() < 3)
      throw std::invalid_argument("Polygon: needs at least 3 vertices");
    if (signed_area() <= 0.0)
      throw std::invalid_argument("Polygon: vertices must be counter-clockwise");
    if (!is_simple())
      throw std::invalid_argument("Polygon: edges must not self-intersect");
  }

  double signed_area() const {
    double a = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i)
      a += cross(vertices[i], vertices[(i + 1) % n]);
    return 0.5 * a;
  }

 private:
  static bool segments_touch(const Point& p1, const Point& p2, const Point& q1,
                             const Point& q2) {
    auto orient = [](const Point& a, const Point& b, const Point& c) {
      const double v = cross(b - a, c - a);
      return (v > 0.0) - (v < 0.0);
    };
    const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
    const int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    auto on_seg = [](const Point& a, const Point& b, const Point& c) {
      return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
             std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
    };
    if (o1 == 0 && on_seg(p1, p2, q1)) return true;
    if (o2 == 0 && on_seg(p1, p2, q2)) return true;
    if (o3 == 0 && on_seg(q1, q2, p1)) return true;
    if (o4 == 0 && on_seg(q1, q2, p2)) return true;
    return false;
  }

  bool is_simple() const {
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        // Edges sharing a vertex are allowed to touch at it.
        if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
        if (segments_touch(vertices[i], vertices[(i + 1) % n], vertices[j],
                           vertices[(j + 1) % n]))
          return false;
      }
    return true;
  }
};

// Winding-number point-in-polygon test; boundary points may land either way,
// callers that care filter by distance_to_boundary first.
inline bool point_in_polygon(const Point& p, const Polygon& poly) {
  int winding = 0;
  const std::size_t n = poly.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly.vertices[i];
    const Point& b = poly.vertices[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && cross(b - a, p - a) > 0.0) ++winding;
    } else {
      if (b.y <= p.y && cross(b - a, p - a) < 0.0) --winding;
    }
  }
  return winding != 0;
}

inline double distance_point_segment(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = norm_sq(ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

inline double distance_to_boundary(const Point& p, const Polygon& poly) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.vertices.size();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, distance_point_segment(p, poly.vertices[i],
                                                 poly.vertices[(i + 1) % n]));
  return best;
}

struct EmptyApproximation : std::runtime_error {
  explicit EmptyApproximation(const std::string& what) : std::runtime_error(what) {}
};

// Hexagonal lattice of equal disks inside a polygon.  Pitch radius*sqrt(3),
// rows 1.5*radius apart, anchored at the bounding-box center; a center is
// admissible if it lies inside the polygon at distance >= radius from the
// boundary (within tolerance).
inline DiskUnion approximate_polygon(const Polygon& poly, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("approximate_polygon: radius must be positive");
  double minx = poly.vertices[0].x, maxx = minx;
  double miny = poly.vertices[0].y, maxy = miny;
  for (const Point& v : poly.vertices) {
    minx = std::min(minx, v.x);
    maxx = std::max(maxx, v.x);
    miny = std::min(miny, v.y);
    maxy = std::max(maxy, v.y);
  }
  const double cx = 0.5 * (minx + maxx), cy = 0.5 * (miny + maxy);
  const double pitch = radius * std::sqrt(3.0);
  const double row_h = 1.5 * radius;
  const double ylo = miny + radius - kTol, yhi = maxy - radius + kTol;
  const double xlo = minx + radius - kTol, xhi = maxx - radius + kTol;

  std::vector<Point> centers;
  if (ylo <= yhi && xlo <= xhi) {
    const long jmin = static_cast<long>(std::ceil((ylo - cy) / row_h));
    const long jmax = static_cast<long>(std::floor((yhi - cy) / row_h));
    for (long j = jmin; j <= jmax; ++j) {
      const double y = cy + static_cast<double>(j) * row_h;
      const double shift = (j % 2 != 0) ? 0.5 * pitch : 0.0;
      const long imin = static_cast<long>(std::ceil((xlo - cx - shift) / pitch));
      const long imax = static_cast<long>(std::floor((xhi - cx - shift) / pitch));
      for (long i = imin; i <= imax; ++i) {
        const Point c{cx + shift + static_cast<double>(i) * pitch, y};
        if (point_in_polygon(c, poly) &&
            distance_to_boundary(c, poly) >= radius - kTol)
          centers.push_back(c);
      }
    }
  }
  if (centers.empty())
    throw EmptyApproximation(
        "approximate_polygon: no admissible lattice center (polygon thinner than "
        "2*radius?)");
  return DiskUnion(std::move(centers), radius);
}

}  // namespace cagemap
