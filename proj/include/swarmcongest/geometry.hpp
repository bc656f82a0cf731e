#pragma once

#include <cmath>
#include <vector>

namespace swarmcongest {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec2 xy() const { return {x, y}; }
  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
  friend bool operator==(Vec3 a, Vec3 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm(Vec3 a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Axis-aligned rectangle, closed on all sides.
struct Rect {
  Vec2 min;
  Vec2 max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double area() const { return width() * height(); }
  Vec2 center() const { return {(min.x + max.x) / 2, (min.y + max.y) / 2}; }
  bool contains(Vec2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  bool contains(const Rect& r) const { return contains(r.min) && contains(r.max); }
  Rect inflated(double margin) const {
    return {{min.x - margin, min.y - margin}, {max.x + margin, max.y + margin}};
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

// Simple polygon, vertices in order (either winding).
struct Polygon {
  std::vector<Vec2> vertices;

  Rect bounding_box() const;
  // Boundary points count as inside.
  bool contains(Vec2 p, double tolerance = 1e-9) const;
  bool is_simple() const;
  double distance_to(Vec2 p) const;  // 0 inside
  Vec2 centroid() const;             // area centroid

  static Polygon from_rect(const Rect& r);
};

// Shortest distance from p to segment [a, b].
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

// True if the closed segment [a, b] touches the open interior of r.
bool segment_intersects_rect_interior(Vec2 a, Vec2 b, const Rect& r);

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

}  // namespace swarmcongest
