#pragma once

#include <string>
#include <string_view>

namespace swarmcongest {

enum class Platform { Solo, IfoS, M500, MicroSeeker, R1_UGV };
enum class VehicleKind { UAV, UGV };
enum class Camera { Forward, Downward, None };

struct VehicleSpec {
  Platform platform = Platform::Solo;
  VehicleKind kind = VehicleKind::UAV;
  double footprint_width = 0.0;   // m
  double footprint_length = 0.0;  // m
  double safety_radius = 1.0;     // m
  double cruise_speed = 5.0;      // m/s
  double ascent_speed = 2.0;      // m/s, also used for descent
  double battery_mean = 22.0;     // minutes
  double battery_std = 2.2;       // minutes
  Camera camera = Camera::Forward;

  bool is_uav() const { return kind == VehicleKind::UAV; }
};

inline constexpr double kUavSafetyRadius = 1.0;
inline constexpr double kUgvSafetyRadius = 3.0;

// Catalog defaults for a platform with the given camera.
VehicleSpec vehicle_spec(Platform platform, Camera camera = Camera::Forward);

// Sum of the two vehicles' safety radii.
inline double min_safe_distance(const VehicleSpec& a, const VehicleSpec& b) {
  return a.safety_radius + b.safety_radius;
}

std::string_view to_string(Platform p);
std::string_view to_string(Camera c);
std::string_view to_string(VehicleKind k);
Platform parse_platform(std::string_view s);  // throws ParseError
Camera parse_camera(std::string_view s);      // throws ParseError

}  // namespace swarmcongest
