#pragma once

#include "forage/plan_map.hpp"

namespace forage {

struct PathMemoryState {
  /// Yesterday's recording, frozen for the day.
  PlanMap replay;
  /// Today's recording, written after every executed action.
  PlanMap recording;
  std::optional<LocationEstimate> replay_food;
  std::optional<LocationEstimate> recording_food;
};

/// Replays yesterday's location→action recording. Fails when the current
/// estimate is not recorded, when the recorded action is illegal today, or
/// when standing on the remembered food location without the day ending.
/// Never replans.
class PathMemoryStrategy final : public Strategy {
 public:
  std::string_view name() const override { return "path"; }
  std::optional<Action> select_action(const StrategyContext& ctx, Rng& rng) override;
  void new_day(const StrategyContext& ctx) override;
  void post_action(const StrategyContext& ctx, const ExecutedAction& taken) override;
  void upon_reward(const StrategyContext& ctx) override;
  void set_learning_frozen(bool frozen) override { frozen_ = frozen; }

  const PathMemoryState& state() const { return state_; }

 private:
  PathMemoryState state_;
  bool frozen_ = false;
};

std::optional<Action> path_memory_select(const StrategyContext& ctx, const PathMemoryState& st);
void path_memory_record(const StrategyContext& ctx, const ExecutedAction& taken,
                        PathMemoryState& st);

}  // namespace forage
