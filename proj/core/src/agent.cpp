#include "forage/agent.hpp"

#include <ostream>
#include <stdexcept>

namespace forage {

Scheduler::Scheduler(std::vector<SlotConfig> slots, int budget_multiplier)
    : multiplier_(budget_multiplier) {
  if (slots.empty()) throw std::invalid_argument("scheduler needs at least one slot");
  if (budget_multiplier < 1) throw std::invalid_argument("budget multiplier must be >= 1");
  for (auto& cfg : slots) {
    if (cfg.initial_budget < 0) throw std::invalid_argument("budgets must be non-negative");
    StrategySlot slot;
    slot.strategy_id = std::move(cfg.strategy_id);
    slot.initial_budget = cfg.initial_budget;
    slot.current_budget = cfg.initial_budget;
    slots_.push_back(std::move(slot));
  }
}

void Scheduler::begin_day() {
  for (auto& s : slots_) {
    s.current_budget = s.initial_budget;
    s.ticks_used_this_activation = 0;
    s.activations_today = 0;
  }
  activate(0);
}

void Scheduler::activate(std::size_t index) {
  active_ = index;
  StrategySlot& s = slots_[active_];
  if (s.activations_today > 0 && s.initial_budget > 0) s.current_budget *= multiplier_;
  ++s.activations_today;
  s.ticks_used_this_activation = 0;
  ++serial_;
}

bool Scheduler::times_up() const {
  const StrategySlot& s = slots_[active_];
  return s.initial_budget > 0 && s.ticks_used_this_activation >= s.current_budget;
}

std::optional<int> Scheduler::budget_left() const {
  const StrategySlot& s = slots_[active_];
  if (s.initial_budget == 0) return std::nullopt;
  return s.current_budget - s.ticks_used_this_activation;
}

const std::string& Scheduler::advance(SwitchReason /*reason*/) {
  activate((active_ + 1) % slots_.size());
  return slots_[active_].strategy_id;
}

std::optional<Action> bypass_check(const SenseData& sense) {
  for (Action a : kAllActions)
    if (sense.at(a) == CellState::Food) return a;
  return std::nullopt;
}

DayResult run_day(std::span<Strategy* const> strategies, Scheduler& scheduler,
                  const Environment& env, const DayOptions& options, Rng& rng) {
  if (strategies.empty()) throw std::invalid_argument("agent has no strategies");
  if (strategies.size() != scheduler.slots().size())
    throw std::invalid_argument("strategy list and scheduler slots differ in size");

  DayResult result;
  result.activations.assign(strategies.size(), 0);

  StrategyContext ctx;
  ctx.day = env.day();
  ctx.tick = 0;
  ctx.truth = {&env, env.home()};
  ctx.sense = sense(env, env.home());

  scheduler.begin_day();
  for (Strategy* s : strategies) s->new_day(ctx);

  Position pos = env.home();
  while (pos != env.food()) {
    if (ctx.tick >= options.step_cap) {
      result.gave_up = true;
      break;
    }
    ctx.sense = sense(env, pos);
    ctx.truth.position = pos;
    ctx.budget_left.reset();
    for (Strategy* s : strategies) s->pre_action(ctx);

    std::optional<Action> chosen = bypass_check(ctx.sense);
    const bool bypass = chosen.has_value();
    if (bypass) {
      ++result.bypasses;
    } else {
      std::size_t failures_in_row = 0;
      while (!chosen) {
        if (scheduler.times_up()) {
          scheduler.advance(SwitchReason::TimesUp);
          continue;
        }
        ctx.budget_left = scheduler.budget_left();
        ctx.activation_serial = scheduler.activation_serial();
        std::optional<Action> proposal =
            strategies[scheduler.active_index()]->select_action(ctx, rng);
        if (proposal && ctx.sense.legal.contains(*proposal)) {
          chosen = proposal;
          break;
        }
        ++result.failures;
        if (++failures_in_row >= strategies.size())
          throw AllStrategiesFailed("every strategy failed within one round-robin cycle");
        scheduler.advance(SwitchReason::Failure);
      }
    }

    const ExecutedAction taken{*chosen, bypass};
    for (Strategy* s : strategies) s->post_action(ctx, taken);

    const std::size_t active = scheduler.active_index();
    if (options.trace) {
      const Position before = pos;
      pos = execute_action(env, pos, taken.action, options.noise, rng);
      *options.trace << ctx.day << ',' << ctx.tick << ','
                     << (bypass ? std::string_view("bypass") : strategies[active]->name()) << ','
                     << ctx.estimate.x << ',' << ctx.estimate.y << ',' << before.x << ','
                     << before.y << ',' << to_string(taken.action) << ',' << (bypass ? 1 : 0)
                     << '\n';
    } else {
      pos = execute_action(env, pos, taken.action, options.noise, rng);
    }
    scheduler.consume_tick();
    ctx.estimate = integrate(ctx.estimate, taken.action);
    ctx.last_executed_action = taken.action;
    ctx.last_action_was_bypass = bypass;
    ++ctx.tick;
  }

  result.steps = ctx.tick;
  for (std::size_t i = 0; i < strategies.size(); ++i)
    result.activations[i] = scheduler.slots()[i].activations_today;

  if (!result.gave_up) {
    ctx.sense = sense(env, pos);
    ctx.truth.position = pos;
    ctx.budget_left.reset();
    for (Strategy* s : strategies) s->upon_reward(ctx);
  }

  for (Strategy* s : strategies) {
    StrategyReport r;
    s->report(r);
    result.plannings += r.plannings_today;
  }
  return result;
}

namespace {

std::vector<Scheduler::SlotConfig> slot_configs(const std::vector<Agent::Member>& members) {
  std::vector<Scheduler::SlotConfig> out;
  for (const auto& m : members) {
    if (!m.strategy) throw std::invalid_argument("agent member without a strategy");
    out.push_back({std::string(m.strategy->name()), m.initial_budget});
  }
  return out;
}

}  // namespace

Agent::Agent(std::vector<Member> members, int budget_multiplier)
    : scheduler_(slot_configs(members), budget_multiplier) {
  for (auto& m : members) {
    views_.push_back(m.strategy.get());
    owned_.push_back(std::move(m.strategy));
  }
}

DayResult Agent::run_day(const Environment& env, const DayOptions& options, Rng& rng) {
  return forage::run_day(views_, scheduler_, env, options, rng);
}

void Agent::set_learning_frozen(bool frozen) {
  for (Strategy* s : views_) s->set_learning_frozen(frozen);
}

StrategyReport Agent::report() const {
  StrategyReport total;
  const auto add = [](std::optional<std::size_t>& acc, const std::optional<std::size_t>& v) {
    if (v) acc = acc.value_or(0) + *v;
  };
  for (const Strategy* s : views_) {
    StrategyReport r;
    s->report(r);
    total.plannings_today += r.plannings_today;
    add(total.episodic_memories, r.episodic_memories);
    add(total.visited_cells, r.visited_cells);
    add(total.food_candidates, r.food_candidates);
  }
  return total;
}

}  // namespace forage
