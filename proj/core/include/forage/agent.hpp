#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forage/grid_env.hpp"

namespace forage {

/// Path-integration estimate, relative to home = (0,0). Same axis
/// convention as Position (Up decreases y).
struct LocationEstimate {
  int x = 0;
  int y = 0;
  constexpr auto operator<=>(const LocationEstimate&) const = default;
};

struct LocationEstimateHash {
  std::size_t operator()(const LocationEstimate& e) const noexcept {
    const auto ux = static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.x));
    const auto uy = static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.y));
    return std::hash<std::uint64_t>{}((ux << 32) | uy);
  }
};

/// Adds the intended displacement; the noisy outcome is never observed.
constexpr LocationEstimate integrate(LocationEstimate e, Action intended) {
  const Offset d = delta(intended);
  return {e.x + d.dx, e.y + d.dy};
}

constexpr Position to_absolute(LocationEstimate e, Position home) {
  return {home.x + e.x, home.y + e.y};
}

constexpr LocationEstimate relative_to(Position p, Position home) {
  return {p.x - home.x, p.y - home.y};
}

constexpr int manhattan(LocationEstimate a, LocationEstimate b) {
  return manhattan(Position{a.x, a.y}, Position{b.x, b.y});
}

/// Privileged view of the world. Only the oracle strategy reads it.
struct GroundTruth {
  const Environment* env = nullptr;
  Position position;
};

/// Common data the agent hands to every strategy callback within a tick.
struct StrategyContext {
  int day = 1;
  int tick = 0;
  LocationEstimate estimate;
  SenseData sense;
  /// The action executed on the previous tick (by any strategy or bypass).
  std::optional<Action> last_executed_action;
  bool last_action_was_bypass = false;

  /// Ticks left in the active slot's budget; nullopt when unlimited.
  std::optional<int> budget_left;
  /// Increases every time the scheduler (re)activates a slot; never reset.
  std::uint64_t activation_serial = 0;

  GroundTruth truth;
};

struct ExecutedAction {
  Action action = Action::Up;
  bool bypass = false;
};

/// Per-strategy statistics surfaced to the experiment harness.
struct StrategyReport {
  int plannings_today = 0;
  std::optional<std::size_t> episodic_memories;
  std::optional<std::size_t> visited_cells;
  std::optional<std::size_t> food_candidates;
};

/// A pluggable action-selection policy. Only select_action is mandatory;
/// it runs on the active strategy only. The other callbacks run on every
/// strategy of the agent.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string_view name() const = 0;

  /// nullopt signals Failure to the scheduler.
  virtual std::optional<Action> select_action(const StrategyContext& ctx, Rng& rng) = 0;

  virtual void new_day(const StrategyContext& /*ctx*/) {}
  virtual void pre_action(const StrategyContext& /*ctx*/) {}
  virtual void post_action(const StrategyContext& /*ctx*/, const ExecutedAction& /*taken*/) {}
  virtual void upon_reward(const StrategyContext& /*ctx*/) {}

  /// While frozen, across-day memories are not updated; action selection
  /// stays live.
  virtual void set_learning_frozen(bool /*frozen*/) {}
  virtual void report(StrategyReport& /*out*/) const {}
};

enum class SwitchReason { Failure, TimesUp };

struct StrategySlot {
  std::string strategy_id;
  /// 0 means unlimited (only Failure advances).
  int initial_budget = 0;
  int current_budget = 0;
  int ticks_used_this_activation = 0;
  int activations_today = 0;
};

/// Round-robin over slots in priority order with progressive budgets: each
/// reactivation within a day multiplies the slot's budget.
class Scheduler {
 public:
  struct SlotConfig {
    std::string strategy_id;
    int initial_budget = 5;
  };

  explicit Scheduler(std::vector<SlotConfig> slots, int budget_multiplier = 2);

  void begin_day();
  std::size_t active_index() const { return active_; }
  const StrategySlot& active() const { return slots_[active_]; }
  std::span<const StrategySlot> slots() const { return slots_; }
  std::uint64_t activation_serial() const { return serial_; }

  bool times_up() const;
  std::optional<int> budget_left() const;
  void consume_tick() { ++slots_[active_].ticks_used_this_activation; }

  /// Moves to the next slot cyclically and returns its strategy id.
  const std::string& advance(SwitchReason reason);

 private:
  void activate(std::size_t index);

  std::vector<StrategySlot> slots_;
  int multiplier_ = 2;
  std::size_t active_ = 0;
  std::uint64_t serial_ = 0;
};

class AllStrategiesFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DayResult {
  int steps = 0;
  int plannings = 0;
  std::vector<int> activations;
  int failures = 0;
  int bypasses = 0;
  bool gave_up = false;
};

struct DayOptions {
  int step_cap = 200'000;
  NoiseParams noise;
  /// Optional line-oriented per-tick trace (see kTraceHeader).
  std::ostream* trace = nullptr;
};

inline constexpr std::string_view kTraceHeader =
    "day,tick,strategy,est_x,est_y,true_x,true_y,action,bypass";

/// The action onto an adjacent Food cell, if any.
std::optional<Action> bypass_check(const SenseData& sense);

/// One daily trip from env.home() until the true position reaches food or
/// the step cap is hit. Strategies and scheduler slots correspond by index.
DayResult run_day(std::span<Strategy* const> strategies, Scheduler& scheduler,
                  const Environment& env, const DayOptions& options, Rng& rng);

/// Owns a composite agent: strategies in priority order plus their scheduler.
class Agent {
 public:
  struct Member {
    std::unique_ptr<Strategy> strategy;
    int initial_budget = 5;
  };

  explicit Agent(std::vector<Member> members, int budget_multiplier = 2);

  DayResult run_day(const Environment& env, const DayOptions& options, Rng& rng);

  void set_learning_frozen(bool frozen);
  StrategyReport report() const;

  std::span<Strategy* const> strategies() const { return views_; }
  const Scheduler& scheduler() const { return scheduler_; }

 private:
  std::vector<std::unique_ptr<Strategy>> owned_;
  std::vector<Strategy*> views_;
  Scheduler scheduler_;
};

}  // namespace forage
