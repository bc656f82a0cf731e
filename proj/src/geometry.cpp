#include "swarmcongest/geometry.hpp"

#include <algorithm>
#include <limits>

namespace swarmcongest {

Rect Polygon::bounding_box() const {
  Rect r{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
         {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
  for (const auto& v : vertices) {
    r.min.x = std::min(r.min.x, v.x);
    r.min.y = std::min(r.min.y, v.y);
    r.max.x = std::max(r.max.x, v.x);
    r.max.y = std::max(r.max.y, v.y);
  }
  return r;
}

bool Polygon::contains(Vec2 p, double tolerance) const {
  const std::size_t n = vertices.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, vertices[i], vertices[(i + 1) % n]) <= tolerance) return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = vertices[i];
    const Vec2 b = vertices[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool Polygon::is_simple() const {
  const std::size_t n = vertices.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices[i];
    const Vec2 b = vertices[(i + 1) % n];
    if (a == b) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      // adjacent edges share a vertex by construction
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(a, b, vertices[j], vertices[(j + 1) % n])) return false;
    }
  }
  return true;
}

double Polygon::distance_to(Vec2 p) const {
  if (contains(p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(p, vertices[i], vertices[(i + 1) % n]));
  }
  return best;
}

Vec2 Polygon::centroid() const {
  double area2 = 0.0;
  Vec2 acc{};
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices[i];
    const Vec2 b = vertices[(i + 1) % n];
    const double c = cross(a, b);
    area2 += c;
    acc.x += (a.x + b.x) * c;
    acc.y += (a.y + b.y) * c;
  }
  if (std::abs(area2) < 1e-12) return bounding_box().center();
  return {acc.x / (3.0 * area2), acc.y / (3.0 * area2)};
}

Polygon Polygon::from_rect(const Rect& r) {
  return Polygon{{{r.min.x, r.min.y}, {r.max.x, r.min.y}, {r.max.x, r.max.y}, {r.min.x, r.max.y}}};
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

bool segment_intersects_rect_interior(Vec2 a, Vec2 b, const Rect& r) {
  // Liang-Barsky clip against the open rectangle.
  double t0 = 0.0;
  double t1 = 1.0;
  const Vec2 d = b - a;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {a.x - r.min.x, r.max.x - a.x, a.y - r.min.y, r.max.y - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] <= 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 >= t1) return false;
  }
  // Reject grazing contacts: the clipped piece must reach the interior.
  const Vec2 mid = a + d * ((t0 + t1) / 2);
  return mid.x > r.min.x && mid.x < r.max.x && mid.y > r.min.y && mid.y < r.max.y;
}

namespace {
int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (std::abs(v) < 1e-12) return 0;
  return v > 0 ? 1 : -1;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
         std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12;
}
}  // namespace

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace swarmcongest
