#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "swarmcongest/battery.hpp"
#include "swarmcongest/block_tracker.hpp"
#include "swarmcongest/launchzone.hpp"
#include "swarmcongest/mission.hpp"
#include "swarmcongest/planner.hpp"
#include "swarmcongest/trial_log.hpp"
#include "swarmcongest/world.hpp"

namespace swarmcongest {

enum class AgentMode {
  Staged,
  Ascending,
  Planning,
  EnRoute,
  Surveilling,
  ReturningToLaunch,
  Landing,
  Landed,
};

std::string_view to_string(AgentMode m);

enum class SurveilPhase { None, Descending, Dwelling, Climbing };

struct SimConfig {
  std::int64_t step_ms = 100;
  double cruise_speed = 5.0;    // m/s
  double vertical_speed = 2.0;  // m/s, ascent and descent
  double min_altitude = 25.0;   // m AGL
  double max_altitude = 50.0;   // m AGL
  double surveil_altitude = 5.0;
  double surveil_standoff = 5.0;   // m outside a building face
  double dwell_s = 30.0;           // per face
  double roof_clearance = 5.0;     // downward camera, above roof
  double hover_multiplier = 1.5;
  double rtl_threshold = 0.25;
  std::int64_t replan_interval_ms = 500;
  double post_wave_duration_s = 1200.0;
  // Takeoff after binding is delayed by U(0, launch_jitter_s): vehicles are not
  // launched in perfect unison.
  double launch_jitter_s = 10.0;
  PlannerConfig planner;
};

struct AgentState {
  std::size_t slot_id = 0;
  std::string vehicle_id;
  VehicleSpec vehicle;
  AgentMode mode = AgentMode::Staged;
  Vec3 position;
  Vec2 home;
  double assigned_altitude = 0.0;
  double altitude_floor = 0.0;  // lowest cruise altitude the task allows
  Battery battery;
  BlockTracker block;

  // Tasking.
  bool assigned = false;
  std::string target;
  Vec3 task_goal;  // cruise-altitude point over the surveil position
  double surveil_altitude = 0.0;
  SurveilPhase phase = SurveilPhase::None;
  std::int64_t dwell_until_ms = 0;
  std::int64_t takeoff_ms = 0;

  // Navigation.
  Path path;
  std::size_t path_index = 0;
  bool has_path = false;
  std::int64_t next_replan_ms = 0;

  std::mt19937_64 rng;

  bool airborne() const { return position.z > 0.0; }
};

struct RtlInjection {
  std::int64_t t_ms = 0;
  std::string vehicle_id;
};

// Called after every step with the step's end time and every UAV's state.
using StepObserver = std::function<void(std::int64_t t_ms, const std::vector<AgentState>& agents)>;

// Fixed-step simulation of one mission. UGV slots are static ground obstacles.
// Identical inputs and seed produce identical logs.
TrialLog run_trial(const World& world, const LaunchZoneLayout& layout, const MissionPlan& plan,
                   std::uint64_t seed, const SimConfig& config = {},
                   const std::vector<RtlInjection>& rtl_injections = {},
                   const StepObserver& observer = {});

}  // namespace swarmcongest
