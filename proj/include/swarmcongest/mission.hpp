#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "swarmcongest/geometry.hpp"
#include "swarmcongest/world.hpp"

namespace swarmcongest {

enum class TacticKind { BuildingSurveil, RTL, Launch };

struct Tactic {
  TacticKind kind = TacticKind::BuildingSurveil;
  std::string target;  // building id, BuildingSurveil only

  // Camera mix a building surveil needs: four side cameras plus one looking down.
  static constexpr std::size_t kForwardUavs = 4;
  static constexpr std::size_t kDownwardUavs = 1;

  std::size_t required_forward() const {
    return kind == TacticKind::BuildingSurveil ? kForwardUavs : 0;
  }
  std::size_t required_downward() const {
    return kind == TacticKind::BuildingSurveil ? kDownwardUavs : 0;
  }
  std::size_t required_uavs() const { return required_forward() + required_downward(); }
};

inline constexpr double kDefaultInterWaveDelay = 90.0;  // s

struct MissionPlan {
  std::vector<std::vector<Tactic>> waves;
  double inter_wave_delay = kDefaultInterWaveDelay;  // s
  std::string building_set;
  std::size_t num_regions = 0;

  double wave_start(std::size_t wave_index) const { return wave_index * inter_wave_delay; }
  std::size_t building_count() const;
};

using Region = std::vector<const Building*>;

// Compass bearing (radians, clockwise from +y, in [0, 2pi)) of p seen from origin.
double bearing(Vec2 origin, Vec2 p);

// Pie-slice partition: sort by bearing from origin and cut the ring into n
// contiguous equal-count arcs, starting at bearing 0. Throws PreconditionError
// unless n >= 1 divides the building count.
std::vector<Region> create_regions(const std::vector<const Building*>& buildings, Vec2 origin,
                                   std::size_t n);

// Wave k takes the k-th farthest building of every region. Distance ties go to
// the lexicographically smaller id.
std::vector<std::vector<const Building*>> assign_waves(const std::vector<Region>& regions,
                                                       Vec2 origin, std::size_t num_waves);

// Regions are built around the launch-zone centroid with n = count / num_waves.
MissionPlan build_mission_plan(const World& world, const std::vector<std::string>& building_ids,
                               std::size_t num_waves, double delay = kDefaultInterWaveDelay,
                               std::string building_set = {});

MissionPlan mission_plan_from_json(const nlohmann::json& j);
nlohmann::json mission_plan_to_json(const MissionPlan& plan);
MissionPlan load_mission_plan(const std::filesystem::path& path);

std::vector<std::string> split_ids(std::string_view csv);

}  // namespace swarmcongest
