#include "swarmcongest/block_tracker.hpp"

#include "swarmcongest/error.hpp"

namespace swarmcongest {

BlockUpdate update_block_state(BlockTracker& tracker, PlanningOutcome outcome, std::int64_t now_ms,
                               Vec3 position) {
  if (now_ms < tracker.last_update_ms) {
    throw PreconditionError("block tracker updated with a time in the past");
  }
  tracker.last_update_ms = now_ms;
  BlockUpdate update;

  if (outcome == PlanningOutcome::Found) {
    if (auto ev = close_block(tracker, now_ms)) update.closed.push_back(*ev);
    tracker.resets = 0;
    return update;
  }

  if (!tracker.blocked_since) {
    tracker.blocked_since = now_ms;
    tracker.open_position = position;
    update.opened.push_back(now_ms);
    return update;
  }

  while (now_ms - *tracker.blocked_since >= kBlockResetMs) {
    const std::int64_t split = *tracker.blocked_since + kBlockResetMs;
    RawBlockEvent ev{*tracker.blocked_since, split, tracker.open_position};
    tracker.raw_events.push_back(ev);
    update.closed.push_back(ev);
    tracker.blocked_since = split;
    tracker.open_position = position;
    update.opened.push_back(split);
    if (++tracker.resets >= kResetsBeforePlannerReset) {
      tracker.resets = 0;
      update.planner_reset = true;
    }
  }
  return update;
}

std::optional<RawBlockEvent> close_block(BlockTracker& tracker, std::int64_t now_ms) {
  if (!tracker.blocked_since) return std::nullopt;
  RawBlockEvent ev{*tracker.blocked_since, now_ms, tracker.open_position};
  tracker.blocked_since.reset();
  tracker.resets = 0;
  if (ev.end_ms <= ev.start_ms) return std::nullopt;  // opened and closed in the same instant
  tracker.raw_events.push_back(ev);
  return ev;
}

}  // namespace swarmcongest
