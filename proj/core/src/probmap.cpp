#include "forage/probmap.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>

namespace forage {

void observe_and_update(ProbMapState& state, const StrategyContext& ctx) {
  for (Action a : kAllActions) {
    const LocationEstimate loc = integrate(ctx.estimate, a);
    const CellState seen = ctx.sense.at(a);
    for (const EpisodicMemory& m : state.memories.retained(loc, ctx.day))
      state.bank.score_and_update(memory_type_of(m, ctx.day), seen);
    state.memories.record(loc, seen, ctx.day, ctx.tick);
  }
}

void begin_day(ProbMapState& state, int today) {
  state.memories.prune(today);
  state.bank.begin_day();
  state.current_plan.reset();
  state.plannings_today = 0;
}

void end_day(ProbMapState& state, LocationEstimate food_at, int today, int tick) {
  state.memories.record(food_at, CellState::Food, today, tick);
  state.bank.end_day();
}

std::vector<FoodCandidate> food_candidates(const ProbMapState& state, int today) {
  std::vector<FoodCandidate> out;
  state.memories.for_each_location(today, [&](LocationEstimate loc, const auto& mems) {
    const bool has_food = std::any_of(mems.begin(), mems.end(), [](const EpisodicMemory& m) {
      return m.object == CellState::Food;
    });
    if (!has_food) return;
    double best = 0.0;
    for (const EpisodicMemory& m : mems)
      best = std::max(best, state.bank.predict(memory_type_of(m, today))[CellState::Food]);
    if (best > state.params.food_threshold) out.push_back({loc, best});
  });
  return out;
}

MemoryType best_memory_type(const PredictorBank& bank, const std::vector<EpisodicMemory>& mems,
                            int today) {
  constexpr double kUnscored = std::numeric_limits<double>::infinity();
  std::optional<MemoryType> best;
  double best_loss = kUnscored;
  for (const EpisodicMemory& m : mems) {
    const MemoryType t = memory_type_of(m, today);
    const double loss = bank.mean_logloss(t).value_or(kUnscored);
    if (!best || loss < best_loss || (loss == best_loss && t < *best)) {
      best = t;
      best_loss = loss;
    }
  }
  return best.value_or(MemoryType{});
}

BarrierSet sample_barrier_map(const ProbMapState& state, int today, Rng& rng) {
  BarrierSet out;
  state.memories.for_each_location(today, [&](LocationEstimate loc, const auto& mems) {
    const MemoryType t = best_memory_type(state.bank, mems, today);
    if (sample(state.bank.predict(t), rng) == CellState::Barrier) out.insert(loc);
  });
  return out;
}

namespace {

SearchBox remembered_box(const ProbMapState& state, LocationEstimate start, LocationEstimate goal,
                         int today) {
  SearchBox box = SearchBox::spanning(start, goal);
  state.memories.for_each_location(today, [&](LocationEstimate loc, const auto&) { box.include(loc); });
  return box;
}

}  // namespace

int planning_bound(const ProbMapState& state, LocationEstimate start, LocationEstimate goal,
                   int today) {
  return remembered_box(state, start, goal, today).perimeter();
}

std::optional<Plan> make_plan(ProbMapState& state, LocationEstimate start, int today, Rng& rng) {
  const std::vector<FoodCandidate> candidates = food_candidates(state, today);
  if (candidates.empty()) return std::nullopt;
  ++state.planning_count;
  ++state.plannings_today;

  std::vector<double> weights;
  weights.reserve(candidates.size());
  for (const FoodCandidate& c : candidates) weights.push_back(c.probability);
  std::discrete_distribution<std::size_t> pick_goal(weights.begin(), weights.end());

  for (int i = 0; i < state.params.plan_iterations; ++i) {
    const LocationEstimate goal = candidates[pick_goal(rng)].location;
    BarrierSet barriers = sample_barrier_map(state, today, rng);
    if (goal == start) continue;
    barriers.erase(start);
    barriers.erase(goal);
    const SearchBox known = remembered_box(state, start, goal, today);
    const int max_len = known.perimeter();
    if (auto plan = astar(start, goal, barriers, max_len, known.grown(max_len))) return plan;
  }
  return std::nullopt;
}

std::optional<Action> ProbMapStrategy::next_planned_action(const StrategyContext& ctx) const {
  if (!state_.current_plan) return std::nullopt;
  const Plan& plan = *state_.current_plan;
  // Standing on the planned goal while the day continues: no food here.
  if (ctx.estimate == plan.goal) return std::nullopt;
  const auto a = plan.steps.lookup(ctx.estimate);
  if (!a || !ctx.sense.legal.contains(*a)) return std::nullopt;
  return a;
}

bool ProbMapStrategy::replan(const StrategyContext& ctx, Rng& rng) {
  state_.current_plan = make_plan(state_, ctx.estimate, ctx.day, rng);
  state_.plan_activation = ctx.activation_serial;
  return state_.current_plan.has_value();
}

std::optional<Action> ProbMapStrategy::select_action(const StrategyContext& ctx, Rng& rng) {
  // Every (re)activation starts with a fresh plan.
  if (ctx.activation_serial != state_.plan_activation) state_.current_plan.reset();

  bool planned_this_tick = false;
  if (!state_.current_plan) {
    if (!replan(ctx, rng)) return std::nullopt;
    planned_this_tick = true;
  }
  if (auto a = next_planned_action(ctx)) return a;

  // Execution failure: at most one replanning session per tick.
  if (planned_this_tick || !replan(ctx, rng)) {
    state_.current_plan.reset();
    return std::nullopt;
  }
  if (auto a = next_planned_action(ctx)) return a;
  state_.current_plan.reset();
  return std::nullopt;
}

void ProbMapStrategy::new_day(const StrategyContext& ctx) {
  today_ = ctx.day;
  if (frozen_) {
    state_.bank.begin_day();
    state_.current_plan.reset();
    state_.plannings_today = 0;
  } else {
    begin_day(state_, ctx.day);
  }
  if (food_log_) {
    std::vector<FoodCandidate> cands = food_candidates(state_, ctx.day);
    std::stable_sort(cands.begin(), cands.end(), [](const FoodCandidate& a, const FoodCandidate& b) {
      return a.probability > b.probability;
    });
    std::ostream& log = *food_log_;
    log << "day " << ctx.day << ":";
    const Position off = state_.params.log_offset;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const Position p = to_absolute(cands[i].location, off);
      log << (i == 0 ? " " : ", ") << "((" << p.x << ", " << p.y << "), " << std::fixed
          << std::setprecision(2) << cands[i].probability << ")";
    }
    log << '\n';
    log.unsetf(std::ios::floatfield);
  }
}

void ProbMapStrategy::pre_action(const StrategyContext& ctx) {
  if (!frozen_) observe_and_update(state_, ctx);
}

void ProbMapStrategy::upon_reward(const StrategyContext& ctx) {
  if (!frozen_) end_day(state_, ctx.estimate, ctx.day, ctx.tick);
}

void ProbMapStrategy::report(StrategyReport& out) const {
  out.plannings_today = state_.plannings_today;
  out.episodic_memories = state_.memories.size(today_);
  out.food_candidates = food_candidates(state_, today_).size();
}

}  // namespace forage
