#include "forage/strategies_basic.hpp"

#include "forage/sampling.hpp"

namespace forage {

std::optional<Action> RandomStrategy::select_action(const StrategyContext& ctx, Rng& rng) {
  if (ctx.sense.legal.empty()) return std::nullopt;
  return pick_uniform(ctx.sense.legal, rng);
}

void BiasedRandomStrategy::new_day(const StrategyContext&) { last_action_.reset(); }

void BiasedRandomStrategy::post_action(const StrategyContext&, const ExecutedAction& taken) {
  last_action_ = taken.action;
}

std::optional<Action> BiasedRandomStrategy::select_action(const StrategyContext& ctx, Rng& rng) {
  ActionSet options = ctx.sense.legal;
  if (options.empty()) return std::nullopt;
  if (ctx.last_executed_action) {
    ActionSet without_back = options;
    without_back.erase(reverse(*ctx.last_executed_action));
    if (!without_back.empty()) options = without_back;
  }
  return pick_uniform(options, rng);
}

std::optional<Action> GreedyStrategy::select_action(const StrategyContext& ctx, Rng& rng) {
  const ActionSet options = ctx.sense.greedy.intersect(ctx.sense.legal);
  if (options.empty()) return std::nullopt;
  return pick_uniform(options, rng);
}

ActionSet gradient_actions(LocationEstimate from, LocationEstimate to) {
  ActionSet out;
  if (to.x > from.x) out.insert(Action::Right);
  if (to.x < from.x) out.insert(Action::Left);
  if (to.y > from.y) out.insert(Action::Down);
  if (to.y < from.y) out.insert(Action::Up);
  return out;
}

std::optional<Action> MemoryGreedyStrategy::select_action(const StrategyContext& ctx, Rng& rng) {
  if (!remembered_food_) return std::nullopt;
  const ActionSet options = gradient_actions(ctx.estimate, *remembered_food_).intersect(ctx.sense.legal);
  if (options.empty()) return std::nullopt;
  return pick_uniform(options, rng);
}

void MemoryGreedyStrategy::upon_reward(const StrategyContext& ctx) {
  if (!frozen_) remembered_food_ = ctx.estimate;
}

}  // namespace forage
