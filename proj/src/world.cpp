#include "swarmcongest/world.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <set>

#include "swarmcongest/error.hpp"

namespace swarmcongest {

World::World(std::string name, std::optional<GeodeticAnchor> anchor, Rect bounds,
             Polygon launch_zone, std::vector<Building> buildings)
    : name_(std::move(name)),
      anchor_(anchor),
      bounds_(bounds),
      launch_zone_(std::move(launch_zone)),
      buildings_(std::move(buildings)) {
  if (bounds_.width() <= 0.0 || bounds_.height() <= 0.0) {
    throw InvariantError("world '" + name_ + "': bounds must have positive extent");
  }
  if (!launch_zone_.is_simple()) {
    throw InvariantError("world '" + name_ + "': launch zone polygon is not simple");
  }
  std::set<std::string> seen;
  for (const auto& b : buildings_) {
    if (!seen.insert(b.id).second) {
      throw InvariantError("world '" + name_ + "': duplicate building id '" + b.id + "'");
    }
    if (b.footprint.width() <= 0.0 || b.footprint.height() <= 0.0) {
      throw InvariantError("building '" + b.id + "': footprint must have positive area");
    }
    if (!(b.height > 0.0)) {
      throw InvariantError("building '" + b.id + "': height must be positive");
    }
    if (!bounds_.contains(b.footprint)) {
      throw InvariantError("building '" + b.id + "': footprint outside world bounds");
    }
  }
}

const Building* World::find_building(const std::string& id) const {
  auto it = std::find_if(buildings_.begin(), buildings_.end(),
                         [&](const Building& b) { return b.id == id; });
  return it == buildings_.end() ? nullptr : &*it;
}

const Building& World::building(const std::string& id) const {
  if (const Building* b = find_building(id)) return *b;
  throw PreconditionError("unknown building id '" + id + "'");
}

bool World::is_occupied(Vec3 point) const {
  if (!bounds_.contains(point.xy())) {
    throw PreconditionError("point outside world bounds");
  }
  return std::any_of(buildings_.begin(), buildings_.end(),
                     [&](const Building& b) { return b.contains(point); });
}

double World::max_height_at(Vec2 p, double margin) const {
  double h = 0.0;
  for (const auto& b : buildings_) {
    if (b.footprint.inflated(margin).contains(p)) h = std::max(h, b.height);
  }
  return h;
}

GeodeticAnchor World::to_geodetic(Vec2 local) const {
  if (!anchor_) throw PreconditionError("world '" + name_ + "' has no geodetic anchor");
  // Local tangent plane approximation; adequate over a few kilometers.
  constexpr double kEarthRadius = 6378137.0;
  const double lat0 = anchor_->lat_deg * std::numbers::pi / 180.0;
  const double dlat = local.y / kEarthRadius;
  const double dlon = local.x / (kEarthRadius * std::cos(lat0));
  return {anchor_->lat_deg + dlat * 180.0 / std::numbers::pi,
          anchor_->lon_deg + dlon * 180.0 / std::numbers::pi};
}

namespace {

Vec2 read_xy(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(std::string("expected [x, y] for ") + what);
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json xy_json(Vec2 p) { return nlohmann::json::array({p.x, p.y}); }

}  // namespace

World world_from_json(const nlohmann::json& j) {
  try {
    std::optional<GeodeticAnchor> anchor;
    if (j.contains("anchor") && !j.at("anchor").is_null()) {
      const auto& a = j.at("anchor");
      anchor = GeodeticAnchor{a.at("lat").get<double>(), a.at("lon").get<double>()};
    }
    const auto& jb = j.at("bounds");
    Rect bounds{read_xy(jb.at("min"), "bounds.min"), read_xy(jb.at("max"), "bounds.max")};
    Polygon zone;
    for (const auto& v : j.at("launch_zone")) zone.vertices.push_back(read_xy(v, "launch_zone"));
    std::vector<Building> buildings;
    for (const auto& b : j.value("buildings", nlohmann::json::array())) {
      buildings.push_back(Building{b.at("id").get<std::string>(),
                                   Rect{read_xy(b.at("min"), "building.min"),
                                        read_xy(b.at("max"), "building.max")},
                                   b.at("height").get<double>()});
    }
    return World(j.at("name").get<std::string>(), anchor, bounds, std::move(zone),
                 std::move(buildings));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("world schema: ") + e.what());
  }
}

nlohmann::json world_to_json(const World& world) {
  nlohmann::json j;
  j["name"] = world.name();
  if (world.anchor()) {
    j["anchor"] = {{"lat", world.anchor()->lat_deg}, {"lon", world.anchor()->lon_deg}};
  }
  j["bounds"] = {{"min", xy_json(world.bounds().min)}, {"max", xy_json(world.bounds().max)}};
  auto zone = nlohmann::json::array();
  for (const auto& v : world.launch_zone().vertices) zone.push_back(xy_json(v));
  j["launch_zone"] = zone;
  auto buildings = nlohmann::json::array();
  for (const auto& b : world.buildings()) {
    nlohmann::json jb;
    jb["id"] = b.id;
    jb["min"] = xy_json(b.footprint.min);
    jb["max"] = xy_json(b.footprint.max);
    jb["height"] = b.height;
    buildings.push_back(jb);
  }
  j["buildings"] = buildings;
  return j;
}

World load_world(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open world file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return world_from_json(j);
}

void save_world(const World& world, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << world_to_json(world).dump(2) << '\n';
}

World world_from_zone(const Rect& zone) {
  return World("zone", std::nullopt, zone, Polygon::from_rect(zone), {});
}

}  // namespace swarmcongest
