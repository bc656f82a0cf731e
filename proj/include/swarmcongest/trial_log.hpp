#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "swarmcongest/block_tracker.hpp"
#include "swarmcongest/geometry.hpp"

namespace swarmcongest {

enum class EventKind { BlockStart, BlockEnd, Bind, Transition, BatteryRtl, Land };

std::string_view to_string(EventKind e);
EventKind parse_event_kind(std::string_view s);

struct LogRecord {
  std::int64_t t_ms = 0;
  std::string vehicle_id;
  EventKind event = EventKind::Transition;
  Vec3 position;
  std::string detail;  // mode name, tactic binding, ...

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

struct TrialLog {
  std::uint64_t seed = 0;
  std::int64_t end_ms = 0;
  std::vector<LogRecord> records;
};

using RawBlocksByVehicle = std::map<std::string, std::vector<RawBlockEvent>>;

// Pairs block_start/block_end records per vehicle. Throws ParseError on an
// unmatched or out-of-order pair.
RawBlocksByVehicle raw_blocks(const std::vector<LogRecord>& records);

// One JSON object per line: {t_ms, vehicle_id, event, x, y, z[, detail]}.
void write_trial_log(std::ostream& out, const TrialLog& log);
void write_trial_log(const std::filesystem::path& path, const TrialLog& log);
std::string serialize_trial_log(const TrialLog& log);
std::vector<LogRecord> read_trial_log(std::istream& in);
std::vector<LogRecord> read_trial_log(const std::filesystem::path& path);

}  // namespace swarmcongest
