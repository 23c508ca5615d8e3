#pragma once

#include <optional>

#include "forage/agent.hpp"

namespace forage {

/// Uniform over legal moves. Never fails.
class RandomStrategy final : public Strategy {
 public:
  std::string_view name() const override { return "random"; }
  std::optional<Action> select_action(const StrategyContext& ctx, Rng& rng) override;
};

/// Random walk that avoids reversing the previous executed action unless
/// that is the only legal move.
class BiasedRandomStrategy final : public Strategy {
 public:
  std::string_view name() const override { return "biased"; }
  std::optional<Action> select_action(const StrategyContext& ctx, Rng& rng) override;
  void new_day(const StrategyContext& ctx) override;
  void post_action(const StrategyContext& ctx, const ExecutedAction& taken) override;

  std::optional<Action> last_action() const { return last_action_; }

 private:
  std::optional<Action> last_action_;
};

/// Follows the smell gradient: uniform over greedy ∩ legal, fails when empty.
class GreedyStrategy final : public Strategy {
 public:
  std::string_view name() const override { return "greedy"; }
  std::optional<Action> select_action(const StrategyContext& ctx, Rng& rng) override;
};

/// Actions from `from` that reduce Manhattan distance to `to`.
ActionSet gradient_actions(LocationEstimate from, LocationEstimate to);

/// Greedy toward the food location remembered from the last reward, using
/// the path-integration estimate instead of smell.
class MemoryGreedyStrategy final : public Strategy {
 public:
  std::string_view name() const override { return "memgreedy"; }
  std::optional<Action> select_action(const StrategyContext& ctx, Rng& rng) override;
  void upon_reward(const StrategyContext& ctx) override;
  void set_learning_frozen(bool frozen) override { frozen_ = frozen; }

  std::optional<LocationEstimate> remembered_food() const { return remembered_food_; }

 private:
  std::optional<LocationEstimate> remembered_food_;
  bool frozen_ = false;
};

}  // namespace forage
