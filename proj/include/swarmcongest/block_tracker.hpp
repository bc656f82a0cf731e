#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "swarmcongest/geometry.hpp"

namespace swarmcongest {

inline constexpr std::int64_t kBlockResetMs = 10'000;
inline constexpr int kResetsBeforePlannerReset = 3;

struct RawBlockEvent {
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  Vec3 position;  // agent position when the raw block opened

  std::int64_t duration_ms() const { return end_ms - start_ms; }
  friend bool operator==(const RawBlockEvent&, const RawBlockEvent&) = default;
};

enum class PlanningOutcome { Found, Blocked };

struct BlockTracker {
  std::optional<std::int64_t> blocked_since;
  Vec3 open_position;
  int resets = 0;
  std::int64_t last_update_ms = 0;
  std::vector<RawBlockEvent> raw_events;

  bool is_blocked() const { return blocked_since.has_value(); }
};

struct BlockUpdate {
  std::vector<RawBlockEvent> closed;   // raw events finished by this update, in order
  std::vector<std::int64_t> opened;    // start times of raw events opened by this update
  bool planner_reset = false;
};

// A blocked outcome opens a raw event; a block persisting 10 s is closed and
// reopened (one reset); the third reset requests a full planner reset. A found
// outcome closes any open event. Throws PreconditionError if time runs backwards.
BlockUpdate update_block_state(BlockTracker& tracker, PlanningOutcome outcome, std::int64_t now_ms,
                               Vec3 position);

// Closes an open raw event at now_ms (trial end). Returns it if one was open.
std::optional<RawBlockEvent> close_block(BlockTracker& tracker, std::int64_t now_ms);

}  // namespace swarmcongest
