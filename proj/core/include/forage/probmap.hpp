#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "forage/episodic.hpp"
#include "forage/planner.hpp"

namespace forage {

struct ProbMapParams {
  /// Memories are kept while (today - day) <= memory_horizon.
  int memory_horizon = 5;
  std::size_t within_day_window = 10;
  std::size_t daily_window = 5;
  /// Locations whose best food probability is at or below this are not goals.
  double food_threshold = 0.01;
  /// A* attempts per planning session, each with a fresh goal and map draw.
  int plan_iterations = 5;
  /// Added to estimates in the food log so it reads in grid coordinates.
  Position log_offset{0, 0};
};

struct FoodCandidate {
  LocationEstimate location;
  double probability = 0.0;
};

struct ProbMapState {
  explicit ProbMapState(const ProbMapParams& p = {})
      : params(p), memories(p.memory_horizon), bank(p.within_day_window, p.daily_window) {}

  ProbMapParams params;
  EpisodicStore memories;
  PredictorBank bank;
  std::optional<Plan> current_plan;
  std::uint64_t plan_activation = 0;
  long planning_count = 0;
  int plannings_today = 0;
};

/// Pre-action step: for each neighbor, score and update the within-day
/// predictor of every retained memory type there, then store today's
/// observation.
void observe_and_update(ProbMapState& state, const StrategyContext& ctx);

void begin_day(ProbMapState& state, int today);
/// Stores the food memory at `food_at` and merges within-day into daily.
void end_day(ProbMapState& state, LocationEstimate food_at, int today, int tick);

/// Locations with a food memory, scored by the highest food probability
/// any of their memory types predicts; only those above the threshold.
std::vector<FoodCandidate> food_candidates(const ProbMapState& state, int today);

/// The memory type used to sample a location: lowest mean log-loss
/// (unscored types rank last), then smaller age, then Empty<Barrier<Food.
MemoryType best_memory_type(const PredictorBank& bank, const std::vector<EpisodicMemory>& mems,
                            int today);

/// One barrier draw per remembered location from its best memory type.
/// Locations without memories are assumed empty.
BarrierSet sample_barrier_map(const ProbMapState& state, int today, Rng& rng);

/// Planning length bound: perimeter of the box spanning everything
/// remembered plus the start and goal.
int planning_bound(const ProbMapState& state, LocationEstimate start, LocationEstimate goal,
                   int today);

/// Up to params.plan_iterations A* attempts; each samples a goal
/// proportional to food probability and a fresh barrier map. Counts one
/// planning session when any candidate exists.
std::optional<Plan> make_plan(ProbMapState& state, LocationEstimate start, int today, Rng& rng);

class ProbMapStrategy final : public Strategy {
 public:
  explicit ProbMapStrategy(const ProbMapParams& params = {}, std::ostream* food_log = nullptr)
      : state_(params), food_log_(food_log) {}

  std::string_view name() const override { return "probmap"; }
  std::optional<Action> select_action(const StrategyContext& ctx, Rng& rng) override;
  void new_day(const StrategyContext& ctx) override;
  void pre_action(const StrategyContext& ctx) override;
  void upon_reward(const StrategyContext& ctx) override;
  void set_learning_frozen(bool frozen) override { frozen_ = frozen; }
  void report(StrategyReport& out) const override;

  const ProbMapState& state() const { return state_; }

 private:
  std::optional<Action> next_planned_action(const StrategyContext& ctx) const;
  bool replan(const StrategyContext& ctx, Rng& rng);

  ProbMapState state_;
  std::ostream* food_log_ = nullptr;
  bool frozen_ = false;
  int today_ = 1;
};

}  // namespace forage
