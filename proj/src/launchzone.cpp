#include "swarmcongest/launchzone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "swarmcongest/error.hpp"

namespace swarmcongest {

namespace {
constexpr double kBoundaryGap = kUavSafetyRadius + kUgvSafetyRadius;  // UAV-UGV
constexpr double kUgvPitch = 2 * kUgvSafetyRadius;
constexpr double kUavPitch = 2 * kUavSafetyRadius;
constexpr double kEps = 1e-9;
}  // namespace

std::string_view to_string(Pattern p) { return p == Pattern::Square ? "square" : "hexagonal"; }

Pattern parse_pattern(std::string_view s) {
  if (s == "square") return Pattern::Square;
  if (s == "hexagonal" || s == "hex") return Pattern::Hexagonal;
  throw ParseError("unknown pattern '" + std::string(s) + "'");
}

Rect LaunchZoneLayout::bounding_box() const {
  Polygon p;
  for (const auto& s : slots) p.vertices.push_back(s.position);
  return p.bounding_box();
}

const Slot* LaunchZoneLayout::find_vehicle(const std::string& vehicle_id) const {
  auto it = std::find_if(slots.begin(), slots.end(),
                         [&](const Slot& s) { return s.vehicle_id == vehicle_id; });
  return it == slots.end() ? nullptr : &*it;
}

std::string Violation::describe(const LaunchZoneLayout& layout) const {
  std::ostringstream os;
  if (kind == Kind::UnsafePair) {
    os << "unsafe pair " << layout.slots[slot_a].vehicle_id << " ("
       << to_string(layout.slots[slot_a].vehicle.kind) << ") / "
       << layout.slots[slot_b].vehicle_id << " (" << to_string(layout.slots[slot_b].vehicle.kind)
       << "): " << distance << " m < " << required << " m";
  } else {
    os << "slot " << layout.slots[slot_a].vehicle_id << " outside launch zone by " << distance
       << " m";
  }
  return os.str();
}

double row_pitch(Pattern pattern, double spacing) {
  return pattern == Pattern::Square ? spacing : spacing * std::sqrt(3.0) / 2.0;
}

double odd_row_offset(Pattern pattern, double spacing) {
  return pattern == Pattern::Square ? 0.0 : spacing / 2.0;
}

std::vector<Vec2> grid_positions(Pattern pattern, double spacing, std::size_t rows,
                                 std::size_t cols, Vec2 center) {
  if (!(spacing > 0.0)) throw PreconditionError("spacing must be positive");
  std::vector<Vec2> out;
  out.reserve(rows * cols);
  const double pitch = row_pitch(pattern, spacing);
  const double offset = odd_row_offset(pattern, spacing);
  const double span_x = (cols > 0 ? (cols - 1) * spacing : 0.0) + (rows > 1 ? offset : 0.0);
  const double span_y = rows > 0 ? (rows - 1) * pitch : 0.0;
  const Vec2 origin{center.x - span_x / 2, center.y - span_y / 2};
  for (std::size_t r = 0; r < rows; ++r) {
    const double shift = (r % 2 == 1) ? offset : 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      out.push_back({origin.x + shift + c * spacing, origin.y + r * pitch});
    }
  }
  return out;
}

LaunchZoneLayout bind_manifest(Pattern pattern, double spacing, const std::vector<Vec2>& positions,
                               const std::vector<ManifestEntry>& manifest) {
  if (positions.size() < manifest.size()) {
    throw PreconditionError("layout has " + std::to_string(positions.size()) +
                            " slots for a manifest of " + std::to_string(manifest.size()));
  }
  LaunchZoneLayout layout{pattern, spacing, {}};
  layout.slots.reserve(manifest.size());
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    layout.slots.push_back(Slot{i, manifest[i].id, positions[i], manifest[i].spec});
  }
  return layout;
}

LaunchZoneLayout generate_layout(const World& world, Pattern pattern, double spacing,
                                 const std::vector<ManifestEntry>& manifest, std::size_t rows,
                                 std::size_t cols) {
  if (rows * cols < manifest.size()) {
    throw PreconditionError("rows x cols smaller than manifest");
  }
  const Vec2 center = world.launch_zone().bounding_box().center();
  auto layout = bind_manifest(pattern, spacing, grid_positions(pattern, spacing, rows, cols, center),
                              manifest);
  const auto violations = validate_layout(layout, world);
  if (!violations.empty()) {
    throw LayoutError(violations.front().describe(layout) + " (" +
                      std::to_string(violations.size()) + " violations)");
  }
  return layout;
}

std::vector<Violation> validate_layout(const LaunchZoneLayout& layout, const World& world) {
  std::vector<Violation> out;
  const auto& slots = layout.slots;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!world.launch_zone().contains(slots[i].position)) {
      out.push_back(Violation{Violation::Kind::OutsideZone, i, i,
                              world.launch_zone().distance_to(slots[i].position), 0.0});
    }
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    for (std::size_t j = i + 1; j < slots.size(); ++j) {
      const double d = distance(slots[i].position, slots[j].position);
      const double need = min_safe_distance(slots[i].vehicle, slots[j].vehicle);
      if (d < need - kEps) {
        out.push_back(Violation{Violation::Kind::UnsafePair, i, j, d, need});
      }
    }
  }
  return out;
}

double min_clearance_margin(const LaunchZoneLayout& layout) {
  double best = std::numeric_limits<double>::infinity();
  const auto& s = layout.slots;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      best = std::min(best, distance(s[i].position, s[j].position) -
                                min_safe_distance(s[i].vehicle, s[j].vehicle));
    }
  }
  return best;
}

namespace {

struct Placed {
  double u;  // along the row
  double v;  // across rows
  bool ugv;
};

std::size_t fit_count(double length, double pitch) {
  if (length < -kEps) return 0;
  return static_cast<std::size_t>(std::floor(length / pitch + kEps)) + 1;
}

// Distributes `want` items over rows with the given capacities, as evenly as the
// capacities allow, earlier rows taking the remainder.
std::vector<std::size_t> distribute(std::size_t want, const std::vector<std::size_t>& capacity) {
  std::vector<std::size_t> take(capacity.size(), 0);
  std::size_t remaining = want;
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < capacity.size(); ++i) open.push_back(i);
  while (remaining > 0 && !open.empty()) {
    const std::size_t share = remaining / open.size() + (remaining % open.size() != 0);
    std::vector<std::size_t> still_open;
    std::size_t given = 0;
    for (std::size_t i : open) {
      const std::size_t g = std::min({share, capacity[i] - take[i], remaining - given});
      take[i] += g;
      given += g;
      if (take[i] < capacity[i]) still_open.push_back(i);
    }
    remaining -= given;
    if (given == 0) break;
    open = std::move(still_open);
  }
  return take;
}

std::vector<Placed> pack_row_mixed(double length, double width, const MixRule& rule,
                                   Pattern pattern) {
  const bool any_ugv = rule.max_ugvs > 0;
  const double cross = any_ugv ? kUgvPitch : row_pitch(pattern, kUavPitch);
  const std::size_t rows = fit_count(width, cross);
  const double uav_shift = odd_row_offset(pattern, kUavPitch);

  // UGVs spread evenly across rows, bounded by what a row can hold.
  std::vector<std::size_t> ugv_cap(rows, fit_count(length, kUgvPitch));
  const auto ugvs = distribute(rule.max_ugvs, ugv_cap);

  std::vector<std::size_t> uav_cap(rows, 0);
  std::vector<double> uav_start(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    double start = ugvs[r] > 0 ? (ugvs[r] - 1) * kUgvPitch + kBoundaryGap : 0.0;
    if (r % 2 == 1) start += uav_shift;
    uav_start[r] = start;
    uav_cap[r] = std::min(fit_count(length - start, kUavPitch), rule.max_columns);
  }
  const auto uavs = distribute(rule.max_uavs, uav_cap);

  std::vector<Placed> out;
  const double used_width = rows > 0 ? (rows - 1) * cross : 0.0;
  const double v0 = (width - used_width) / 2;
  for (std::size_t r = 0; r < rows; ++r) {
    if (ugvs[r] == 0 && uavs[r] == 0) continue;
    const double v = v0 + r * cross;
    for (std::size_t k = 0; k < ugvs[r]; ++k) out.push_back({k * kUgvPitch, v, true});
    for (std::size_t k = 0; k < uavs[r]; ++k) {
      out.push_back({uav_start[r] + k * kUavPitch, v, false});
    }
  }
  return out;
}

std::vector<Placed> pack_separate_block(double length, double width, const MixRule& rule,
                                        Pattern pattern) {
  std::vector<Placed> out;
  const std::size_t ugv_cols =
      std::min(rule.ugv_columns, fit_count(length, kUgvPitch));
  std::size_t ugv_rows = 0;
  std::size_t placed_ugvs = 0;
  if (rule.max_ugvs > 0 && ugv_cols > 0) {
    const std::size_t want_rows = (rule.max_ugvs + ugv_cols - 1) / ugv_cols;
    ugv_rows = std::min(want_rows, fit_count(width, kUgvPitch));
    for (std::size_t r = 0; r < ugv_rows; ++r) {
      for (std::size_t c = 0; c < ugv_cols && placed_ugvs < rule.max_ugvs; ++c, ++placed_ugvs) {
        out.push_back({c * kUgvPitch, r * kUgvPitch, true});
      }
    }
  }
  double v = ugv_rows > 0 ? (ugv_rows - 1) * kUgvPitch + kBoundaryGap : 0.0;
  const double pitch = row_pitch(pattern, kUavPitch);
  const double shift = odd_row_offset(pattern, kUavPitch);
  std::size_t placed_uavs = 0;
  for (std::size_t r = 0; v <= width + kEps && placed_uavs < rule.max_uavs; ++r, v += pitch) {
    const double start = (r % 2 == 1) ? shift : 0.0;
    const std::size_t cols = std::min(fit_count(length - start, kUavPitch), rule.max_columns);
    for (std::size_t c = 0; c < cols && placed_uavs < rule.max_uavs; ++c, ++placed_uavs) {
      out.push_back({start + c * kUavPitch, v, false});
    }
  }
  return out;
}

}  // namespace

CapacityResult max_capacity(const Rect& zone, const MixRule& mix_rule, Pattern pattern) {
  if (!(zone.width() > kUavPitch) || !(zone.height() > kUavPitch)) {
    throw PreconditionError("zone too small for any vehicle (both sides must exceed 2 m)");
  }
  const bool along_x = zone.width() >= zone.height();
  const double length = along_x ? zone.width() : zone.height();
  const double width = along_x ? zone.height() : zone.width();

  const auto placed = mix_rule.grouping == MixRule::Grouping::RowMixed
                          ? pack_row_mixed(length, width, mix_rule, pattern)
                          : pack_separate_block(length, width, mix_rule, pattern);

  CapacityResult result;
  result.layout.pattern = pattern;
  result.layout.spacing = kUavPitch;
  std::vector<double> row_vs;
  std::size_t ugv_i = 0;
  std::size_t uav_i = 0;
  for (const auto& p : placed) {
    const Vec2 pos = along_x ? Vec2{zone.min.x + p.u, zone.min.y + p.v}
                             : Vec2{zone.min.x + p.v, zone.min.y + p.u};
    Slot slot;
    slot.slot_id = result.layout.slots.size();
    slot.position = pos;
    if (p.ugv) {
      slot.vehicle = vehicle_spec(Platform::R1_UGV, Camera::None);
      slot.vehicle_id = "ugv-" + std::to_string(++ugv_i);
    } else {
      slot.vehicle = vehicle_spec(Platform::Solo, Camera::Forward);
      slot.vehicle_id = "uav-" + std::to_string(++uav_i);
    }
    result.layout.slots.push_back(std::move(slot));
    if (std::none_of(row_vs.begin(), row_vs.end(),
                     [&](double v) { return std::abs(v - p.v) < kEps; })) {
      row_vs.push_back(p.v);
    }
  }
  result.ugv_count = ugv_i;
  result.uav_count = uav_i;
  result.rows = row_vs.size();
  return result;
}

LaunchZoneConfig launch_zone_config_from_json(const nlohmann::json& j) {
  try {
    LaunchZoneConfig c;
    c.pattern = parse_pattern(j.at("pattern").get<std::string>());
    c.spacing_m = j.at("spacing_m").get<double>();
    c.rows = j.at("rows").get<std::size_t>();
    c.cols = j.at("cols").get<std::size_t>();
    for (const auto& v : j.at("vehicles")) {
      const Platform p = parse_platform(v.at("platform").get<std::string>());
      const Camera cam = parse_camera(v.value("camera", std::string("forward")));
      c.vehicles.push_back(ManifestEntry{v.at("id").get<std::string>(), vehicle_spec(p, cam)});
    }
    if (!(c.spacing_m > 0.0)) throw ParseError("spacing_m must be positive");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("launch-zone config: ") + e.what());
  }
}

nlohmann::json launch_zone_config_to_json(const LaunchZoneConfig& config) {
  nlohmann::ordered_json j;
  j["pattern"] = to_string(config.pattern);
  j["spacing_m"] = config.spacing_m;
  j["rows"] = config.rows;
  j["cols"] = config.cols;
  auto vehicles = nlohmann::ordered_json::array();
  for (const auto& v : config.vehicles) {
    vehicles.push_back({{"id", v.id},
                        {"platform", to_string(v.spec.platform)},
                        {"camera", to_string(v.spec.camera)}});
  }
  j["vehicles"] = vehicles;
  return j;
}

LaunchZoneConfig load_launch_zone_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open launch-zone config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return launch_zone_config_from_json(j);
}

LaunchZoneLayout generate_layout(const World& world, const LaunchZoneConfig& config) {
  return generate_layout(world, config.pattern, config.spacing_m, config.vehicles, config.rows,
                         config.cols);
}

nlohmann::json layout_to_json(const LaunchZoneLayout& layout) {
  nlohmann::ordered_json j;
  j["pattern"] = to_string(layout.pattern);
  j["spacing_m"] = layout.spacing;
  auto slots = nlohmann::ordered_json::array();
  for (const auto& s : layout.slots) {
    slots.push_back({{"slot_id", s.slot_id},
                     {"vehicle_id", s.vehicle_id},
                     {"platform", to_string(s.vehicle.platform)},
                     {"kind", to_string(s.vehicle.kind)},
                     {"camera", to_string(s.vehicle.camera)},
                     {"x", s.position.x},
                     {"y", s.position.y}});
  }
  j["slots"] = slots;
  return j;
}

std::vector<ManifestEntry> uniform_manifest(std::size_t count, Platform platform,
                                            std::size_t downward_every) {
  std::vector<ManifestEntry> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const bool down = downward_every > 0 && (i % downward_every) == downward_every - 1;
    char id[32];
    std::snprintf(id, sizeof id, "uav-%03zu", i + 1);
    out.push_back({id, vehicle_spec(platform, down ? Camera::Downward : Camera::Forward)});
  }
  return out;
}

}  // namespace swarmcongest
