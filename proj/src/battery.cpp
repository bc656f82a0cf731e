#include "swarmcongest/battery.hpp"

#include <algorithm>

#include "swarmcongest/error.hpp"

namespace swarmcongest {

Battery drain_battery(Battery battery, std::int64_t dt_ms, Activity activity) {
  if (dt_ms < 0) throw PreconditionError("negative battery time step");
  double rate = 1.0;
  switch (activity) {
    case Activity::Cruise:
    case Activity::Ascend:
    case Activity::Descend:
      rate = 1.0;
      break;
    case Activity::Hover:
      rate = battery.hover_multiplier;
      break;
    case Activity::Ground:
      rate = 0.0;
      break;
  }
  battery.drawn = std::min(battery.capacity, battery.drawn + dt_ms / 1000.0 * rate);
  return battery;
}

double sample_battery_capacity(const VehicleSpec& spec, std::mt19937_64& rng) {
  const double mean = spec.battery_mean;
  double minutes = mean;
  if (spec.battery_std > 0.0) {
    std::normal_distribution<double> dist(mean, spec.battery_std);
    minutes = std::clamp(dist(rng), 0.5 * mean, 1.5 * mean);
  }
  return minutes * 60.0;
}

}  // namespace swarmcongest
