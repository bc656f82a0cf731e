#include "swarmcongest/mission.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "swarmcongest/error.hpp"

namespace swarmcongest {

std::size_t MissionPlan::building_count() const {
  std::size_t n = 0;
  for (const auto& w : waves) n += w.size();
  return n;
}

double bearing(Vec2 origin, Vec2 p) {
  double b = std::atan2(p.x - origin.x, p.y - origin.y);
  if (b < 0.0) b += 2 * std::numbers::pi;
  return b;
}

std::vector<Region> create_regions(const std::vector<const Building*>& buildings, Vec2 origin,
                                   std::size_t n) {
  if (n == 0 || buildings.size() % n != 0) {
    throw PreconditionError("cannot split " + std::to_string(buildings.size()) +
                            " buildings into " + std::to_string(n) + " equal regions");
  }
  std::vector<const Building*> ring = buildings;
  std::sort(ring.begin(), ring.end(), [&](const Building* a, const Building* b) {
    const double ba = bearing(origin, a->footprint.center());
    const double bb = bearing(origin, b->footprint.center());
    if (ba != bb) return ba < bb;
    return a->id < b->id;
  });
  const std::size_t per = ring.size() / n;
  std::vector<Region> regions(n);
  for (std::size_t i = 0; i < ring.size(); ++i) regions[i / per].push_back(ring[i]);
  return regions;
}

std::vector<std::vector<const Building*>> assign_waves(const std::vector<Region>& regions,
                                                       Vec2 origin, std::size_t num_waves) {
  std::vector<std::vector<const Building*>> waves(num_waves);
  for (const auto& region : regions) {
    if (region.size() != num_waves) {
      throw PreconditionError("region holds " + std::to_string(region.size()) +
                              " buildings, expected " + std::to_string(num_waves));
    }
    Region sorted = region;
    std::sort(sorted.begin(), sorted.end(), [&](const Building* a, const Building* b) {
      const double da = distance(origin, a->footprint.center());
      const double db = distance(origin, b->footprint.center());
      if (da != db) return da > db;
      return a->id < b->id;
    });
    for (std::size_t k = 0; k < num_waves; ++k) waves[k].push_back(sorted[k]);
  }
  return waves;
}

MissionPlan build_mission_plan(const World& world, const std::vector<std::string>& building_ids,
                               std::size_t num_waves, double delay, std::string building_set) {
  if (num_waves == 0 || building_ids.size() % num_waves != 0) {
    throw PreconditionError(std::to_string(num_waves) + " waves do not divide " +
                            std::to_string(building_ids.size()) + " buildings");
  }
  std::set<std::string> unique(building_ids.begin(), building_ids.end());
  if (unique.size() != building_ids.size()) throw PreconditionError("duplicate building id");
  std::vector<const Building*> buildings;
  for (const auto& id : building_ids) buildings.push_back(&world.building(id));

  const Vec2 origin = world.launch_zone().centroid();
  const std::size_t num_regions = building_ids.size() / num_waves;
  const auto waves = assign_waves(create_regions(buildings, origin, num_regions), origin, num_waves);

  MissionPlan plan;
  plan.inter_wave_delay = delay;
  plan.num_regions = num_regions;
  if (building_set.empty()) {
    for (std::size_t i = 0; i < building_ids.size(); ++i) {
      building_set += (i ? "," : "") + building_ids[i];
    }
  }
  plan.building_set = std::move(building_set);
  for (const auto& wave : waves) {
    std::vector<Tactic> tactics;
    for (const Building* b : wave) tactics.push_back({TacticKind::BuildingSurveil, b->id});
    plan.waves.push_back(std::move(tactics));
  }
  return plan;
}

MissionPlan mission_plan_from_json(const nlohmann::json& j) {
  try {
    MissionPlan plan;
    plan.building_set = j.value("building_set", std::string{});
    plan.inter_wave_delay = j.value("delay_s", kDefaultInterWaveDelay);
    const auto num_waves = j.at("num_waves").get<std::size_t>();
    for (const auto& wave : j.at("waves")) {
      std::vector<Tactic> tactics;
      for (const auto& id : wave) tactics.push_back({TacticKind::BuildingSurveil, id.get<std::string>()});
      plan.waves.push_back(std::move(tactics));
    }
    if (plan.waves.size() != num_waves) throw ParseError("num_waves does not match waves");
    plan.num_regions = plan.waves.empty() ? 0 : plan.waves.front().size();
    for (const auto& w : plan.waves) {
      if (w.size() != plan.num_regions) throw ParseError("waves must hold equal tactic counts");
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("mission plan: ") + e.what());
  }
}

nlohmann::json mission_plan_to_json(const MissionPlan& plan) {
  nlohmann::ordered_json j;
  j["building_set"] = plan.building_set;
  j["num_waves"] = plan.waves.size();
  j["delay_s"] = plan.inter_wave_delay;
  auto waves = nlohmann::ordered_json::array();
  for (const auto& w : plan.waves) {
    auto ids = nlohmann::ordered_json::array();
    for (const auto& t : w) ids.push_back(t.target);
    waves.push_back(ids);
  }
  j["waves"] = waves;
  return j;
}

MissionPlan load_mission_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mission plan " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return mission_plan_from_json(j);
}

std::vector<std::string> split_ids(std::string_view csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? csv.size() : comma;
    std::string_view tok = csv.substr(start, end - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty()) out.emplace_back(tok);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace swarmcongest
