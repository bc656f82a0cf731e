#include "swarmcongest/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swarmcongest/error.hpp"

namespace swarmcongest {

namespace {
constexpr double kTol = 1e-9;
}

ClearanceChecker::ClearanceChecker(const World& world, std::span<const Neighbor> neighbors,
                                   const PlannerConfig& config)
    : world_(world), neighbors_(neighbors), config_(config) {}

bool ClearanceChecker::horizontal_free(Vec3 a, Vec3 b) const {
  const Rect& bounds = world_.bounds();
  if (!bounds.contains(a.xy()) || !bounds.contains(b.xy())) return false;
  for (const auto& n : neighbors_) {
    if (std::abs(n.position.z - a.z) >= config_.vertical_band) continue;
    if (point_segment_distance(n.position.xy(), a.xy(), b.xy()) < n.clearance - kTol) return false;
  }
  for (const auto& bld : world_.buildings()) {
    if (bld.height + config_.building_margin < a.z) continue;
    if (segment_intersects_rect_interior(a.xy(), b.xy(),
                                         bld.footprint.inflated(config_.building_margin))) {
      return false;
    }
  }
  return true;
}

bool ClearanceChecker::vertical_free(Vec3 a, Vec3 b) const {
  const double lo = std::min(a.z, b.z);
  const double hi = std::max(a.z, b.z);
  for (const auto& n : neighbors_) {
    if (n.position.z <= lo - config_.vertical_band || n.position.z >= hi + config_.vertical_band) {
      continue;
    }
    if (distance(n.position.xy(), a.xy()) < n.clearance - kTol) return false;
  }
  for (const auto& bld : world_.buildings()) {
    if (lo > bld.height) continue;
    const Rect r = bld.footprint.inflated(config_.building_margin);
    const Vec2 p = a.xy();
    if (p.x > r.min.x && p.x < r.max.x && p.y > r.min.y && p.y < r.max.y) return false;
  }
  return true;
}

bool ClearanceChecker::segment_free(Vec3 a, Vec3 b) const {
  if (a.x == b.x && a.y == b.y) return vertical_free(a, b);
  if (a.z == b.z) return horizontal_free(a, b);
  throw PreconditionError("segments must be horizontal or vertical");
}

std::optional<Path> plan_path(Vec3 start, Vec3 goal, const World& world,
                              std::span<const Neighbor> neighbors, std::mt19937_64& rng,
                              const PlannerConfig& config) {
  if (!world.bounds().contains(goal.xy())) throw PreconditionError("goal outside world bounds");

  // Only neighbors in the altitude band of the path (or the final descent) matter.
  const double band_lo = std::min(start.z, goal.z) - config.vertical_band;
  const double band_hi = std::max(start.z, goal.z) + config.vertical_band;
  std::vector<Neighbor> relevant;
  for (const auto& n : neighbors) {
    if (n.position.z > band_lo && n.position.z < band_hi) relevant.push_back(n);
  }
  const ClearanceChecker checker(world, relevant, config);

  const Vec3 target{goal.x, goal.y, start.z};
  auto finish = [&](Path path) -> std::optional<Path> {
    if (goal.z != start.z) {
      if (!checker.vertical_free(target, goal)) return std::nullopt;
      path.push_back(goal);
    }
    return path;
  };

  // The goal column itself must be clear at path altitude.
  if (!checker.horizontal_free(target, target)) return std::nullopt;
  if (checker.horizontal_free(start, target)) {
    Path direct{start};
    if (!(target == start)) direct.push_back(target);
    return finish(std::move(direct));
  }

  // Goal-biased RRT at the path altitude.
  struct Node {
    Vec2 p;
    int parent;
  };
  std::vector<Node> tree{{start.xy(), -1}};
  const Rect& bounds = world.bounds();
  const double span = std::max(config.sample_margin, 0.5 * distance(start.xy(), target.xy()));
  const Rect box{{std::max(bounds.min.x, std::min(start.x, goal.x) - span),
                  std::max(bounds.min.y, std::min(start.y, goal.y) - span)},
                 {std::min(bounds.max.x, std::max(start.x, goal.x) + span),
                  std::min(bounds.max.y, std::max(start.y, goal.y) + span)}};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto at_alt = [&](Vec2 p) { return Vec3{p.x, p.y, start.z}; };

  int reached = -1;
  for (int i = 0; i < config.sample_budget && reached < 0; ++i) {
    const double u = unit(rng);
    const double sx = unit(rng);
    const double sy = unit(rng);
    const Vec2 sample = u < config.goal_bias
                            ? target.xy()
                            : Vec2{box.min.x + sx * box.width(), box.min.y + sy * box.height()};
    int nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < static_cast<int>(tree.size()); ++k) {
      const double d = distance(tree[k].p, sample);
      if (d < best) {
        best = d;
        nearest = k;
      }
    }
    Vec2 next = sample;
    if (best > config.max_edge) {
      next = tree[nearest].p + (sample - tree[nearest].p) * (config.max_edge / best);
    }
    if (best < 1e-9) continue;
    if (!checker.horizontal_free(at_alt(tree[nearest].p), at_alt(next))) continue;
    tree.push_back({next, nearest});
    const int idx = static_cast<int>(tree.size()) - 1;
    if (checker.horizontal_free(at_alt(next), target)) reached = idx;
  }
  if (reached < 0) return std::nullopt;

  Path raw{target};
  for (int k = reached; k >= 0; k = tree[k].parent) raw.push_back(at_alt(tree[k].p));
  std::reverse(raw.begin(), raw.end());

  // Greedy shortcut: from each kept vertex jump to the farthest visible one.
  Path path{raw.front()};
  std::size_t i = 0;
  while (i + 1 < raw.size()) {
    std::size_t j = raw.size() - 1;
    while (j > i + 1 && !checker.horizontal_free(raw[i], raw[j])) --j;
    path.push_back(raw[j]);
    i = j;
  }
  return finish(std::move(path));
}

}  // namespace swarmcongest
