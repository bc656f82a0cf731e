#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swarmcongest/geometry.hpp"

namespace swarmcongest {

struct GeodeticAnchor {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

// Axis-aligned box building. Footprint in local ENU meters, height above ground.
struct Building {
  std::string id;
  Rect footprint;
  double height = 0.0;

  bool contains(Vec3 p) const {
    return p.z >= 0.0 && p.z <= height && footprint.contains(p.xy());
  }
};

// Geometric model of a training site. Immutable after construction.
class World {
 public:
  World() = default;

  // Throws InvariantError if any type invariant fails.
  World(std::string name, std::optional<GeodeticAnchor> anchor, Rect bounds,
        Polygon launch_zone, std::vector<Building> buildings);

  const std::string& name() const { return name_; }
  const std::optional<GeodeticAnchor>& anchor() const { return anchor_; }
  const Rect& bounds() const { return bounds_; }
  const Polygon& launch_zone() const { return launch_zone_; }
  const std::vector<Building>& buildings() const { return buildings_; }

  // nullptr when no building carries that id.
  const Building* find_building(const std::string& id) const;
  const Building& building(const std::string& id) const;  // throws PreconditionError

  // True iff the point is inside some building volume. Throws
  // PreconditionError for points outside the world bounds.
  bool is_occupied(Vec3 point) const;

  // Tallest building whose footprint, inflated by margin, covers p. 0 if none.
  double max_height_at(Vec2 p, double margin = 0.0) const;

  // Converts a local ENU point to (lat, lon) degrees. Requires an anchor.
  GeodeticAnchor to_geodetic(Vec2 local) const;

 private:
  std::string name_;
  std::optional<GeodeticAnchor> anchor_;
  Rect bounds_;
  Polygon launch_zone_;
  std::vector<Building> buildings_;
};

World world_from_json(const nlohmann::json& j);
nlohmann::json world_to_json(const World& world);

World load_world(const std::filesystem::path& path);
void save_world(const World& world, const std::filesystem::path& path);

// Bare world whose bounds and launch zone are the given rectangle.
World world_from_zone(const Rect& zone);

}  // namespace swarmcongest
