#include "swarmcongest/vehicle.hpp"

#include "swarmcongest/error.hpp"

namespace swarmcongest {

VehicleSpec vehicle_spec(Platform platform, Camera camera) {
  VehicleSpec s;
  s.platform = platform;
  s.camera = camera;
  switch (platform) {
    case Platform::R1_UGV:
      s.kind = VehicleKind::UGV;
      s.footprint_width = 0.426;
      s.footprint_length = 0.486;
      s.safety_radius = kUgvSafetyRadius;
      s.cruise_speed = 1.0;
      s.ascent_speed = 0.0;
      s.battery_mean = 60.0;
      s.camera = Camera::None;
      break;
    case Platform::Solo:
      s.footprint_width = 0.259;
      s.footprint_length = 0.188;
      s.battery_mean = 22.0;
      break;
    case Platform::IfoS:
      s.footprint_width = 0.275;
      s.footprint_length = 0.275;
      s.battery_mean = 20.0;
      break;
    case Platform::M500:
      s.footprint_width = 0.3937;
      s.footprint_length = 0.3937;
      s.battery_mean = 30.0;
      break;
    case Platform::MicroSeeker:
      s.footprint_width = 0.191;
      s.footprint_length = 0.191;
      s.battery_mean = 15.0;
      break;
  }
  // Spread defaults to 10% of the mean.
  s.battery_std = 0.1 * s.battery_mean;
  return s;
}

std::string_view to_string(Platform p) {
  switch (p) {
    case Platform::Solo: return "Solo";
    case Platform::IfoS: return "IfoS";
    case Platform::M500: return "M500";
    case Platform::MicroSeeker: return "MicroSeeker";
    case Platform::R1_UGV: return "R1_UGV";
  }
  return "?";
}

std::string_view to_string(Camera c) {
  switch (c) {
    case Camera::Forward: return "forward";
    case Camera::Downward: return "downward";
    case Camera::None: return "none";
  }
  return "?";
}

std::string_view to_string(VehicleKind k) { return k == VehicleKind::UAV ? "UAV" : "UGV"; }

Platform parse_platform(std::string_view s) {
  for (Platform p : {Platform::Solo, Platform::IfoS, Platform::M500, Platform::MicroSeeker,
                     Platform::R1_UGV}) {
    if (to_string(p) == s) return p;
  }
  throw ParseError("unknown platform '" + std::string(s) + "'");
}

Camera parse_camera(std::string_view s) {
  for (Camera c : {Camera::Forward, Camera::Downward, Camera::None}) {
    if (to_string(c) == s) return c;
  }
  throw ParseError("unknown camera '" + std::string(s) + "'");
}

}  // namespace swarmcongest
