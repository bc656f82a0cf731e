#include "swarmcongest/trial_log.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "swarmcongest/error.hpp"

namespace swarmcongest {

std::string_view to_string(EventKind e) {
  switch (e) {
    case EventKind::BlockStart: return "block_start";
    case EventKind::BlockEnd: return "block_end";
    case EventKind::Bind: return "bind";
    case EventKind::Transition: return "transition";
    case EventKind::BatteryRtl: return "battery_rtl";
    case EventKind::Land: return "land";
  }
  return "?";
}

EventKind parse_event_kind(std::string_view s) {
  for (EventKind e : {EventKind::BlockStart, EventKind::BlockEnd, EventKind::Bind,
                      EventKind::Transition, EventKind::BatteryRtl, EventKind::Land}) {
    if (to_string(e) == s) return e;
  }
  throw ParseError("unknown event '" + std::string(s) + "'");
}

RawBlocksByVehicle raw_blocks(const std::vector<LogRecord>& records) {
  RawBlocksByVehicle out;
  std::map<std::string, const LogRecord*> open;
  for (const auto& r : records) {
    if (r.event == EventKind::BlockStart) {
      if (open.count(r.vehicle_id)) {
        throw ParseError("vehicle " + r.vehicle_id + ": block_start while a block is open");
      }
      open[r.vehicle_id] = &r;
    } else if (r.event == EventKind::BlockEnd) {
      auto it = open.find(r.vehicle_id);
      if (it == open.end()) throw ParseError("vehicle " + r.vehicle_id + ": unmatched block_end");
      if (r.t_ms < it->second->t_ms) {
        throw ParseError("vehicle " + r.vehicle_id + ": block ends before it starts");
      }
      out[r.vehicle_id].push_back({it->second->t_ms, r.t_ms, it->second->position});
      open.erase(it);
    }
  }
  if (!open.empty()) throw ParseError("vehicle " + open.begin()->first + ": block never closed");
  return out;
}

void write_trial_log(std::ostream& out, const TrialLog& log) {
  for (const auto& r : log.records) {
    nlohmann::ordered_json j;
    j["t_ms"] = r.t_ms;
    j["vehicle_id"] = r.vehicle_id;
    j["event"] = to_string(r.event);
    j["x"] = r.position.x;
    j["y"] = r.position.y;
    j["z"] = r.position.z;
    if (!r.detail.empty()) j["detail"] = r.detail;
    out << j.dump() << '\n';
  }
}

void write_trial_log(const std::filesystem::path& path, const TrialLog& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_trial_log(out, log);
}

std::string serialize_trial_log(const TrialLog& log) {
  std::ostringstream os;
  write_trial_log(os, log);
  return os.str();
}

std::vector<LogRecord> read_trial_log(std::istream& in) {
  std::vector<LogRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      LogRecord r;
      r.t_ms = j.at("t_ms").get<std::int64_t>();
      r.vehicle_id = j.at("vehicle_id").get<std::string>();
      r.event = parse_event_kind(j.at("event").get<std::string>());
      r.position = {j.at("x").get<double>(), j.at("y").get<double>(), j.at("z").get<double>()};
      r.detail = j.value("detail", std::string{});
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("trial log line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<LogRecord> read_trial_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open trial log " + path.string());
  return read_trial_log(in);
}

}  // namespace swarmcongest
