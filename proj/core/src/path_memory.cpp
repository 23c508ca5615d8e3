#include "forage/path_memory.hpp"

#include <set>

namespace forage {

std::vector<LocationEstimate> walk_plan(const PlanMap& plan, LocationEstimate start,
                                        std::size_t max_steps) {
  std::vector<LocationEstimate> out{start};
  std::set<LocationEstimate> seen{start};
  LocationEstimate cur = start;
  for (std::size_t i = 0; i < max_steps; ++i) {
    const auto a = plan.lookup(cur);
    if (!a) break;
    cur = integrate(cur, *a);
    out.push_back(cur);
    if (!seen.insert(cur).second) break;
  }
  return out;
}

std::optional<Action> path_memory_select(const StrategyContext& ctx, const PathMemoryState& st) {
  if (st.replay_food && ctx.estimate == *st.replay_food) return std::nullopt;
  const auto a = st.replay.lookup(ctx.estimate);
  if (!a) return std::nullopt;
  if (!ctx.sense.legal.contains(*a)) return std::nullopt;
  return a;
}

void path_memory_record(const StrategyContext& ctx, const ExecutedAction& taken,
                        PathMemoryState& st) {
  st.recording.set(ctx.estimate, taken.action);
}

std::optional<Action> PathMemoryStrategy::select_action(const StrategyContext& ctx, Rng&) {
  return path_memory_select(ctx, state_);
}

void PathMemoryStrategy::new_day(const StrategyContext&) {
  if (frozen_) return;
  state_.replay = std::move(state_.recording);
  state_.replay_food = state_.recording_food;
  state_.recording.clear();
  state_.recording_food.reset();
}

void PathMemoryStrategy::post_action(const StrategyContext& ctx, const ExecutedAction& taken) {
  if (!frozen_) path_memory_record(ctx, taken, state_);
}

void PathMemoryStrategy::upon_reward(const StrategyContext& ctx) {
  if (!frozen_) state_.recording_food = ctx.estimate;
}

}  // namespace forage
