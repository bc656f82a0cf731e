#pragma once

#include <cstdint>
#include <random>

#include "swarmcongest/vehicle.hpp"

namespace swarmcongest {

enum class Activity { Cruise, Hover, Ascend, Descend, Ground };

// Linear battery: `drawn` accumulates seconds of cruise-equivalent flight.
struct Battery {
  double capacity = 0.0;  // s
  double drawn = 0.0;     // s
  double hover_multiplier = 1.5;
  double rtl_threshold = 0.25;  // fraction of capacity left that triggers RTL

  double remaining() const { return capacity - drawn; }
  bool at_rtl_level() const { return remaining() <= rtl_threshold * capacity; }
};

Battery drain_battery(Battery battery, std::int64_t dt_ms, Activity activity);

// Normal(mean, std) minutes, clamped to [0.5, 1.5] x mean, returned in seconds.
double sample_battery_capacity(const VehicleSpec& spec, std::mt19937_64& rng);

}  // namespace swarmcongest
