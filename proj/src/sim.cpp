#include "swarmcongest/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "swarmcongest/error.hpp"
#include "swarmcongest/rng.hpp"

namespace swarmcongest {

std::string_view to_string(AgentMode m) {
  switch (m) {
    case AgentMode::Staged: return "Staged";
    case AgentMode::Ascending: return "Ascending";
    case AgentMode::Planning: return "Planning";
    case AgentMode::EnRoute: return "EnRoute";
    case AgentMode::Surveilling: return "Surveilling";
    case AgentMode::ReturningToLaunch: return "ReturningToLaunch";
    case AgentMode::Landing: return "Landing";
    case AgentMode::Landed: return "Landed";
  }
  return "?";
}

namespace {

constexpr double kArriveEps = 1e-9;

struct StepResult {
  bool wants_progress = false;  // produced a planning outcome this step
  PlanningOutcome outcome = PlanningOutcome::Found;
  Activity activity = Activity::Ground;
};

class Trial {
 public:
  Trial(const World& world, const LaunchZoneLayout& layout, const MissionPlan& plan,
        std::uint64_t seed, const SimConfig& config)
      : world_(world), plan_(plan), config_(config) {
    log_.seed = seed;
    if (config_.step_ms <= 0) throw PreconditionError("step must be positive");
    for (const auto& slot : layout.slots) {
      if (!slot.vehicle.is_uav()) {
        ugvs_.push_back(slot);
        continue;
      }
      AgentState a;
      a.slot_id = slot.slot_id;
      a.vehicle_id = slot.vehicle_id;
      a.vehicle = slot.vehicle;
      a.home = slot.position;
      a.position = {slot.position.x, slot.position.y, 0.0};
      a.rng = agent_stream(seed, slot.slot_id);
      std::uniform_real_distribution<double> alt(config_.min_altitude, config_.max_altitude);
      a.assigned_altitude = alt(a.rng);
      a.altitude_floor = config_.min_altitude;
      a.battery.capacity = sample_battery_capacity(a.vehicle, a.rng);
      a.battery.hover_multiplier = config_.hover_multiplier;
      a.battery.rtl_threshold = config_.rtl_threshold;
      agents_.push_back(std::move(a));
    }
    for (const auto& wave : plan_.waves) {
      for (const auto& t : wave) world_.building(t.target);  // throws on unknown ids
    }
  }

  TrialLog run(const std::vector<RtlInjection>& injections, const StepObserver& observer) {
    const std::int64_t step = config_.step_ms;
    const std::size_t n_waves = plan_.waves.size();
    std::vector<std::int64_t> wave_ms(n_waves);
    for (std::size_t k = 0; k < n_waves; ++k) {
      wave_ms[k] = std::llround(plan_.wave_start(k) * 1000.0);
    }
    const std::int64_t last_wave = n_waves ? wave_ms.back() : 0;
    const std::int64_t end_ms = last_wave + std::llround(config_.post_wave_duration_s * 1000.0);
    log_.end_ms = end_ms;

    auto pending = injections;
    std::stable_sort(pending.begin(), pending.end(),
                     [](const RtlInjection& a, const RtlInjection& b) { return a.t_ms < b.t_ms; });
    std::size_t next_wave = 0;
    std::size_t next_injection = 0;

    for (std::int64_t now = 0; now < end_ms; now += step) {
      while (next_wave < n_waves && wave_ms[next_wave] <= now) bind_wave(next_wave++, now);
      while (next_injection < pending.size() && pending[next_injection].t_ms <= now) {
        inject_rtl(pending[next_injection++].vehicle_id, now);
      }
      for (auto& a : agents_) step_agent(a, now);
      if (observer) observer(now + step, agents_);
      if (next_wave == n_waves && next_injection == pending.size() && quiescent()) break;
    }
    for (auto& a : agents_) {
      if (auto ev = close_block(a.block, end_ms)) {
        record(end_ms, a, EventKind::BlockEnd);
      }
    }
    return std::move(log_);
  }

 private:
  bool quiescent() const {
    return std::all_of(agents_.begin(), agents_.end(), [](const AgentState& a) {
      return a.mode == AgentMode::Landed || (a.mode == AgentMode::Staged && !a.assigned);
    });
  }

  void record(std::int64_t t, const AgentState& a, EventKind e, std::string detail = {}) {
    log_.records.push_back({t, a.vehicle_id, e, a.position, std::move(detail)});
  }

  void set_mode(AgentState& a, AgentMode m, std::int64_t now) {
    if (a.mode == m) return;
    a.mode = m;
    record(now, a, EventKind::Transition, std::string(to_string(m)));
  }

  // ---- dispatcher ----

  std::vector<AgentState*> closest_unassigned(Camera camera, Vec2 target, std::size_t count) {
    std::vector<AgentState*> pool;
    for (auto& a : agents_) {
      if (!a.assigned && a.mode == AgentMode::Staged && a.vehicle.camera == camera) {
        pool.push_back(&a);
      }
    }
    std::sort(pool.begin(), pool.end(), [&](const AgentState* x, const AgentState* y) {
      const double dx = distance(x->home, target);
      const double dy = distance(y->home, target);
      if (dx != dy) return dx < dy;
      return x->slot_id < y->slot_id;
    });
    if (pool.size() > count) pool.resize(count);
    return pool;
  }

  Vec2 clamp_to_world(Vec2 p) const {
    const Rect& b = world_.bounds();
    const double m = config_.planner.building_margin;
    return {std::clamp(p.x, b.min.x + m, b.max.x - m), std::clamp(p.y, b.min.y + m, b.max.y - m)};
  }

  void bind_wave(std::size_t wave_index, std::int64_t now) {
    for (const auto& tactic : plan_.waves[wave_index]) {
      const Building& b = world_.building(tactic.target);
      const Vec2 center = b.footprint.center();
      auto forward = closest_unassigned(Camera::Forward, center, tactic.required_forward());
      auto downward = closest_unassigned(Camera::Downward, center, tactic.required_downward());
      if (forward.size() < tactic.required_forward() ||
          downward.size() < tactic.required_downward()) {
        log_.records.push_back({now, "-", EventKind::Bind, {center.x, center.y, 0.0},
                                "unfilled " + tactic.target});
        continue;
      }
      const double s = config_.surveil_standoff;
      const Rect& f = b.footprint;
      const std::array<std::pair<const char*, Vec2>, 4> faces{{
          {"N", {center.x, f.max.y + s}},
          {"E", {f.max.x + s, center.y}},
          {"S", {center.x, f.min.y - s}},
          {"W", {f.min.x - s, center.y}},
      }};
      for (const auto& [face, raw_point] : faces) {
        const Vec2 point = clamp_to_world(raw_point);
        auto best = std::min_element(forward.begin(), forward.end(),
                                     [&](const AgentState* x, const AgentState* y) {
                                       const double dx = distance(x->home, point);
                                       const double dy = distance(y->home, point);
                                       if (dx != dy) return dx < dy;
                                       return x->slot_id < y->slot_id;
                                     });
        AgentState& a = **best;
        forward.erase(best);
        const double margin = config_.planner.building_margin;
        a.surveil_altitude = std::max(config_.surveil_altitude,
                                      world_.max_height_at(point, margin) + margin + 0.5);
        launch(a, tactic.target, {point.x, point.y, a.assigned_altitude}, face, now);
      }
      for (AgentState* a : downward) {
        const double over_roof = b.height + config_.roof_clearance;
        if (a->assigned_altitude < over_roof) {
          a->assigned_altitude = std::min(over_roof, config_.max_altitude);
        }
        a->altitude_floor = std::min(std::max(over_roof, config_.min_altitude), config_.max_altitude);
        a->surveil_altitude = a->assigned_altitude;
        launch(*a, tactic.target, {center.x, center.y, a->assigned_altitude}, "down", now);
      }
    }
  }

  void launch(AgentState& a, const std::string& target, Vec3 goal, const char* role,
              std::int64_t now) {
    a.assigned = true;
    a.target = target;
    a.task_goal = goal;
    a.takeoff_ms = now;
    if (config_.launch_jitter_s > 0.0) {
      std::uniform_real_distribution<double> jitter(0.0, config_.launch_jitter_s * 1000.0);
      a.takeoff_ms += config_.step_ms * std::llround(jitter(a.rng) / config_.step_ms);
    }
    record(now, a, EventKind::Bind, target + "/" + role);
    set_mode(a, AgentMode::Ascending, now);
  }

  void begin_rtl(AgentState& a, std::int64_t now) {
    a.has_path = false;
    a.next_replan_ms = now;
    a.phase = SurveilPhase::None;
    set_mode(a, AgentMode::ReturningToLaunch, now);
  }

  void inject_rtl(const std::string& vehicle_id, std::int64_t now) {
    for (auto& a : agents_) {
      if (a.vehicle_id != vehicle_id) continue;
      if (a.mode == AgentMode::Staged) {
        a.assigned = true;  // neutralized before launch: never dispatched
      } else if (a.mode != AgentMode::ReturningToLaunch && a.mode != AgentMode::Landing &&
                 a.mode != AgentMode::Landed) {
        begin_rtl(a, now);
      }
    }
  }

  // ---- motion ----

  std::vector<Neighbor> neighbors_of(const AgentState& self) const {
    std::vector<Neighbor> out;
    out.reserve(agents_.size() + ugvs_.size());
    for (const auto& o : agents_) {
      if (o.slot_id == self.slot_id) continue;
      out.push_back({o.position, min_safe_distance(self.vehicle, o.vehicle)});
    }
    for (const auto& u : ugvs_) {
      out.push_back({{u.position.x, u.position.y, 0.0}, min_safe_distance(self.vehicle, u.vehicle)});
    }
    return out;
  }

  // Vertical move toward z_target. Returns true when the move was made.
  bool move_vertical(AgentState& a, double z_target, StepResult& r) {
    const double dz_max = config_.vertical_speed * config_.step_ms / 1000.0;
    const double dz = std::clamp(z_target - a.position.z, -dz_max, dz_max);
    const Vec3 to{a.position.x, a.position.y, a.position.z + dz};
    const auto nbrs = neighbors_of(a);
    const ClearanceChecker checker(world_, nbrs, config_.planner);
    r.wants_progress = true;
    if (!checker.vertical_free(a.position, to)) {
      r.outcome = PlanningOutcome::Blocked;
      return false;
    }
    a.position = to;
    if (std::abs(z_target - to.z) < kArriveEps) a.position.z = z_target;
    r.activity = dz >= 0 ? Activity::Ascend : Activity::Descend;
    return true;
  }

  bool try_plan(AgentState& a, Vec3 goal, std::int64_t now) {
    const auto nbrs = neighbors_of(a);
    auto path = plan_path(a.position, goal, world_, nbrs, a.rng, config_.planner);
    if (!path) {
      a.next_replan_ms = now + config_.replan_interval_ms;
      return false;
    }
    a.path = std::move(*path);
    a.path_index = 1;
    a.has_path = true;
    return true;
  }

  // Follows (or plans) a cruise-altitude path to goal. Returns true on arrival.
  bool navigate(AgentState& a, Vec3 goal, bool outbound, std::int64_t now, StepResult& r) {
    r.wants_progress = true;
    if (!a.has_path) {
      if (now < a.next_replan_ms || !try_plan(a, goal, now)) {
        r.outcome = PlanningOutcome::Blocked;
        return false;
      }
      if (outbound) set_mode(a, AgentMode::EnRoute, now);
      return a.path_index >= a.path.size();  // already there
    }

    double budget = config_.cruise_speed * config_.step_ms / 1000.0;
    Vec3 pos = a.position;
    std::size_t idx = a.path_index;
    std::vector<std::pair<Vec3, Vec3>> moves;
    while (budget > 0.0 && idx < a.path.size()) {
      const Vec3 wp = a.path[idx];
      const double d = norm(wp - pos);
      if (d <= budget) {
        moves.emplace_back(pos, wp);
        budget -= d;
        pos = wp;
        ++idx;
      } else {
        const Vec3 np = pos + (wp - pos) * (budget / d);
        moves.emplace_back(pos, np);
        pos = np;
        budget = 0.0;
      }
    }
    const auto nbrs = neighbors_of(a);
    const ClearanceChecker checker(world_, nbrs, config_.planner);
    for (const auto& [from, to] : moves) {
      if (!checker.segment_free(from, to)) {
        // Obstructed by a moving vehicle: drop the path and replan right away.
        a.has_path = false;
        a.next_replan_ms = now;
        if (outbound) set_mode(a, AgentMode::Planning, now);
        if (!try_plan(a, goal, now)) {
          r.outcome = PlanningOutcome::Blocked;
          return false;
        }
        if (outbound) set_mode(a, AgentMode::EnRoute, now);
        return false;
      }
    }
    a.position = pos;
    a.path_index = idx;
    r.activity = Activity::Cruise;
    return idx >= a.path.size();
  }

  void step_agent(AgentState& a, std::int64_t now) {
    if (a.mode == AgentMode::Landed || (a.mode == AgentMode::Staged && !a.assigned)) return;

    if (a.airborne() && a.battery.at_rtl_level() && a.mode != AgentMode::ReturningToLaunch &&
        a.mode != AgentMode::Landing) {
      record(now, a, EventKind::BatteryRtl);
      begin_rtl(a, now);
    }

    StepResult r;
    r.activity = a.airborne() ? Activity::Hover : Activity::Ground;

    switch (a.mode) {
      case AgentMode::Staged:
      case AgentMode::Landed:
        break;
      case AgentMode::Ascending:
        if (now < a.takeoff_ms) break;
        if (move_vertical(a, a.assigned_altitude, r) && a.position.z == a.assigned_altitude) {
          a.next_replan_ms = now;
          set_mode(a, AgentMode::Planning, now);
        }
        break;
      case AgentMode::Planning:
      case AgentMode::EnRoute:
        if (!a.has_path && std::abs(a.position.z - a.assigned_altitude) > kArriveEps &&
            change_altitude(a, r)) {
          break;
        }
        if (navigate(a, a.task_goal, true, now, r)) {
          a.phase = a.vehicle.camera == Camera::Downward ? SurveilPhase::Dwelling
                                                         : SurveilPhase::Descending;
          a.dwell_until_ms = now + std::llround(config_.dwell_s * 1000.0);
          set_mode(a, AgentMode::Surveilling, now);
        }
        break;
      case AgentMode::Surveilling:
        step_surveil(a, now, r);
        break;
      case AgentMode::ReturningToLaunch:
        step_rtl(a, now, r);
        break;
      case AgentMode::Landing:
        if (move_vertical(a, 0.0, r) && a.position.z == 0.0) {
          set_mode(a, AgentMode::Landed, now);
          record(now, a, EventKind::Land);
        }
        break;
    }

    if (r.wants_progress) {
      const auto upd = update_block_state(a.block, r.outcome, now, a.position);
      for (const auto& ev : upd.closed) record(ev.end_ms, a, EventKind::BlockEnd);
      for (std::int64_t t : upd.opened) record(t, a, EventKind::BlockStart);
      if (upd.planner_reset) {
        a.has_path = false;
        a.next_replan_ms = now;
        if (a.airborne()) relayer(a);
      }
    }
    a.battery = drain_battery(a.battery, config_.step_ms, r.activity);
  }

  // A full planner reset also draws a fresh cruise altitude, which breaks
  // standoffs between agents stuck in each other's altitude band.
  void relayer(AgentState& a) {
    if (a.mode != AgentMode::Planning && a.mode != AgentMode::EnRoute &&
        a.mode != AgentMode::ReturningToLaunch) {
      return;
    }
    std::uniform_real_distribution<double> alt(a.altitude_floor, config_.max_altitude);
    a.assigned_altitude = alt(a.rng);
    if (a.mode != AgentMode::ReturningToLaunch) a.task_goal.z = a.assigned_altitude;
  }

  // Moves toward the assigned altitude. When the column is obstructed the agent
  // keeps its current altitude instead and plans from there (returns false).
  bool change_altitude(AgentState& a, StepResult& r) {
    if (move_vertical(a, a.assigned_altitude, r)) return true;
    a.assigned_altitude = a.position.z;
    if (a.mode != AgentMode::ReturningToLaunch) a.task_goal.z = a.position.z;
    r.outcome = PlanningOutcome::Found;
    return false;
  }

  void step_surveil(AgentState& a, std::int64_t now, StepResult& r) {
    switch (a.phase) {
      case SurveilPhase::Descending:
        if (move_vertical(a, a.surveil_altitude, r) && a.position.z == a.surveil_altitude) {
          a.phase = SurveilPhase::Dwelling;
          a.dwell_until_ms = now + std::llround(config_.dwell_s * 1000.0);
        }
        break;
      case SurveilPhase::Dwelling:
        r.wants_progress = true;  // hovering on task is progress
        if (now >= a.dwell_until_ms) a.phase = SurveilPhase::Climbing;
        break;
      case SurveilPhase::Climbing:
      case SurveilPhase::None:
        if (a.position.z >= a.assigned_altitude ||
            (move_vertical(a, a.assigned_altitude, r) && a.position.z == a.assigned_altitude)) {
          begin_rtl(a, now);
        }
        break;
    }
  }

  void step_rtl(AgentState& a, std::int64_t now, StepResult& r) {
    if (distance(a.position.xy(), a.home) < kArriveEps) {
      set_mode(a, AgentMode::Landing, now);
      move_vertical(a, 0.0, r);
      return;
    }
    // Climb back to cruise altitude before crossing the site.
    if (!a.has_path && std::abs(a.position.z - a.assigned_altitude) > kArriveEps &&
        change_altitude(a, r)) {
      return;
    }
    const Vec3 goal{a.home.x, a.home.y, a.position.z};
    if (navigate(a, goal, false, now, r)) {
      a.position.x = a.home.x;
      a.position.y = a.home.y;
      set_mode(a, AgentMode::Landing, now);
    }
  }

  const World& world_;
  const MissionPlan& plan_;
  SimConfig config_;
  std::vector<AgentState> agents_;
  std::vector<Slot> ugvs_;
  TrialLog log_;
};

}  // namespace

TrialLog run_trial(const World& world, const LaunchZoneLayout& layout, const MissionPlan& plan,
                   std::uint64_t seed, const SimConfig& config,
                   const std::vector<RtlInjection>& rtl_injections, const StepObserver& observer) {
  Trial trial(world, layout, plan, seed, config);
  return trial.run(rtl_injections, observer);
}

}  // namespace swarmcongest
