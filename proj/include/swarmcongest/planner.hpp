#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "swarmcongest/geometry.hpp"
#include "swarmcongest/world.hpp"

namespace swarmcongest {

inline constexpr double kVerticalBand = 5.0;  // m; agents closer in altitude interact

// Another vehicle as seen by the planner: where it is and how much horizontal
// clearance this agent must keep from it.
struct Neighbor {
  Vec3 position;
  double clearance = 2.0;
};

struct PlannerConfig {
  int sample_budget = 200;
  double max_edge = 10.0;        // m, RRT steering step
  double goal_bias = 0.2;
  double sample_margin = 20.0;   // m around the start/goal box
  double building_margin = 1.0;  // m, agent safety radius around building volumes
  double vertical_band = kVerticalBand;
};

using Path = std::vector<Vec3>;

// Collision model shared by the planner and the simulator's per-step checks.
class ClearanceChecker {
 public:
  ClearanceChecker(const World& world, std::span<const Neighbor> neighbors,
                   const PlannerConfig& config);

  // Horizontal segment at constant altitude a.z.
  bool horizontal_free(Vec3 a, Vec3 b) const;
  // Vertical segment over a single column.
  bool vertical_free(Vec3 a, Vec3 b) const;
  bool segment_free(Vec3 a, Vec3 b) const;

 private:
  const World& world_;
  std::span<const Neighbor> neighbors_;
  PlannerConfig config_;
};

// Polyline at start.z from start to goal's horizontal location, with a final
// vertical segment when goal.z differs. Every point keeps the required clearance
// from neighbors within the vertical band and stays out of building volumes.
// nullopt means Blocked. Throws PreconditionError if the goal is outside the world.
std::optional<Path> plan_path(Vec3 start, Vec3 goal, const World& world,
                              std::span<const Neighbor> neighbors, std::mt19937_64& rng,
                              const PlannerConfig& config = {});

}  // namespace swarmcongest
