#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "swarmcongest/geometry.hpp"
#include "swarmcongest/vehicle.hpp"
#include "swarmcongest/world.hpp"

namespace swarmcongest {

enum class Pattern { Square, Hexagonal };

std::string_view to_string(Pattern p);
Pattern parse_pattern(std::string_view s);

struct ManifestEntry {
  std::string id;
  VehicleSpec spec;
};

struct Slot {
  std::size_t slot_id = 0;
  std::string vehicle_id;
  Vec2 position;
  VehicleSpec vehicle;
};

struct LaunchZoneLayout {
  Pattern pattern = Pattern::Square;
  double spacing = 0.0;
  std::vector<Slot> slots;

  Rect bounding_box() const;
  const Slot* find_vehicle(const std::string& vehicle_id) const;
};

struct Violation {
  enum class Kind { UnsafePair, OutsideZone };
  Kind kind = Kind::UnsafePair;
  std::size_t slot_a = 0;
  std::size_t slot_b = 0;  // unused for OutsideZone
  double distance = 0.0;   // actual separation (UnsafePair) or distance outside (OutsideZone)
  double required = 0.0;

  std::string describe(const LaunchZoneLayout& layout) const;
};

// Row pitch for a pattern: spacing for square, spacing*sqrt(3)/2 for hexagonal.
double row_pitch(Pattern pattern, double spacing);

// Odd-row lateral shift: 0 for square, spacing/2 for hexagonal.
double odd_row_offset(Pattern pattern, double spacing);

// Row-major grid centered on `center`. Row r runs along x at y = r * row_pitch.
std::vector<Vec2> grid_positions(Pattern pattern, double spacing, std::size_t rows,
                                 std::size_t cols, Vec2 center);

// Binds the manifest to the first manifest.size() positions, in order. No safety checks;
// this is how deliberately naive layouts are expressed.
LaunchZoneLayout bind_manifest(Pattern pattern, double spacing, const std::vector<Vec2>& positions,
                               const std::vector<ManifestEntry>& manifest);

// Grid centered in the world's launch zone with the manifest bound row-major.
// Throws LayoutError if a slot falls outside the polygon or any pair is unsafe.
LaunchZoneLayout generate_layout(const World& world, Pattern pattern, double spacing,
                                 const std::vector<ManifestEntry>& manifest, std::size_t rows,
                                 std::size_t cols);

// Every unsafe pair and every slot outside the launch zone. Empty iff the layout is safe.
std::vector<Violation> validate_layout(const LaunchZoneLayout& layout, const World& world);

// Smallest (distance - min_safe_distance) over all slot pairs; +inf for < 2 slots.
double min_clearance_margin(const LaunchZoneLayout& layout);

struct MixRule {
  enum class Grouping {
    RowMixed,       // each row: UGVs contiguous at UGV pitch, boundary gap, then UAVs
    SeparateBlock,  // UGV rows first, boundary gap, then UAV-only rows
  };
  Grouping grouping = Grouping::RowMixed;
  std::size_t max_ugvs = 0;
  std::size_t max_uavs = std::numeric_limits<std::size_t>::max();
  std::size_t max_columns = std::numeric_limits<std::size_t>::max();  // UAVs per row
  std::size_t ugv_columns = std::numeric_limits<std::size_t>::max();  // UGVs per block row
};

struct CapacityResult {
  std::size_t ugv_count = 0;
  std::size_t uav_count = 0;
  std::size_t rows = 0;
  LaunchZoneLayout layout;
};

// Greedy row packing of a rectangular zone. Rows run along the zone's longer side.
CapacityResult max_capacity(const Rect& zone, const MixRule& mix_rule, Pattern pattern);

// Launch-zone configuration file.
struct LaunchZoneConfig {
  Pattern pattern = Pattern::Square;
  double spacing_m = 2.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<ManifestEntry> vehicles;
};

LaunchZoneConfig launch_zone_config_from_json(const nlohmann::json& j);
nlohmann::json launch_zone_config_to_json(const LaunchZoneConfig& config);
LaunchZoneConfig load_launch_zone_config(const std::filesystem::path& path);
LaunchZoneLayout generate_layout(const World& world, const LaunchZoneConfig& config);

nlohmann::json layout_to_json(const LaunchZoneLayout& layout);

// Uniform manifest: `count` UAVs of one platform, every `downward_every`-th one
// carrying a downward camera (0 disables).
std::vector<ManifestEntry> uniform_manifest(std::size_t count, Platform platform,
                                            std::size_t downward_every);

}  // namespace swarmcongest
