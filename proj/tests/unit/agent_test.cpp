#include <gtest/gtest.h>

#include <sstream>

#include "forage/agent.hpp"
#include "forage/oracle.hpp"
#include "forage/strategies_basic.hpp"
#include "forage/strategy_factory.hpp"
#include "test_support.hpp"

namespace forage {
namespace {

using testing::open_grid;

// Records every callback and replays a scripted list of proposals.
class ScriptedStrategy : public Strategy {
 public:
  explicit ScriptedStrategy(std::string name, std::vector<std::optional<Action>> script = {})
      : name_(std::move(name)), script_(std::move(script)) {}

  std::string_view name() const override { return name_; }
  std::optional<Action> select_action(const StrategyContext& ctx, Rng&) override {
    ++selects;
    select_ticks.push_back(ctx.tick);
    if (script_.empty()) return std::nullopt;
    const auto a = script_[cursor_ % script_.size()];
    ++cursor_;
    return a;
  }
  void new_day(const StrategyContext&) override { ++new_days; }
  void pre_action(const StrategyContext& ctx) override {
    ++pre;
    contexts.push_back(ctx.estimate);
  }
  void post_action(const StrategyContext&, const ExecutedAction& taken) override {
    ++post;
    executed.push_back(taken);
  }
  void upon_reward(const StrategyContext&) override { ++rewards; }

  int selects = 0, new_days = 0, pre = 0, post = 0, rewards = 0;
  std::vector<int> select_ticks;
  std::vector<LocationEstimate> contexts;
  std::vector<ExecutedAction> executed;

 private:
  std::string name_;
  std::vector<std::optional<Action>> script_;
  std::size_t cursor_ = 0;
};

TEST(PathIntegration, Examples) {
  EXPECT_EQ(integrate({0, 0}, Action::Left), (LocationEstimate{-1, 0}));
  EXPECT_EQ(integrate({3, 2}, Action::Right), (LocationEstimate{4, 2}));
  EXPECT_EQ(integrate({0, 0}, Action::Up), (LocationEstimate{0, -1}));
  EXPECT_EQ(to_absolute({-1, 2}, {7, 7}), (Position{6, 9}));
  EXPECT_EQ(relative_to({6, 9}, {7, 7}), (LocationEstimate{-1, 2}));
}

TEST(Scheduler, ProgressiveBudgetsDoubleOnReactivation) {
  Scheduler s({{"a", 5}, {"b", 5}});
  s.begin_day();
  EXPECT_EQ(s.active_index(), 0u);
  EXPECT_EQ(s.active().current_budget, 5);
  s.advance(SwitchReason::TimesUp);
  EXPECT_EQ(s.active().current_budget, 5);
  s.advance(SwitchReason::TimesUp);
  EXPECT_EQ(s.active_index(), 0u);
  EXPECT_EQ(s.active().current_budget, 10);
  s.advance(SwitchReason::TimesUp);
  s.advance(SwitchReason::TimesUp);
  EXPECT_EQ(s.active().current_budget, 20);
}

TEST(Scheduler, BudgetsResetEachDay) {
  Scheduler s({{"a", 5}, {"b", 3}});
  s.begin_day();
  for (int i = 0; i < 6; ++i) s.advance(SwitchReason::Failure);
  EXPECT_GT(s.active().current_budget, 5);
  s.begin_day();
  EXPECT_EQ(s.active_index(), 0u);
  EXPECT_EQ(s.slots()[0].current_budget, 5);
  EXPECT_EQ(s.slots()[1].current_budget, 3);
  EXPECT_EQ(s.slots()[1].activations_today, 0);
}

TEST(Scheduler, UnlimitedBudgetNeverTimesOut) {
  Scheduler s({{"a", 0}, {"b", 5}});
  s.begin_day();
  for (int i = 0; i < 10'000; ++i) s.consume_tick();
  EXPECT_FALSE(s.times_up());
  EXPECT_FALSE(s.budget_left().has_value());
}

TEST(Scheduler, TimesUpAfterBudgetTicks) {
  Scheduler s({{"a", 3}});
  s.begin_day();
  for (int i = 0; i < 3; ++i) {
    EXPECT_FALSE(s.times_up());
    EXPECT_EQ(s.budget_left(), 3 - i);
    s.consume_tick();
  }
  EXPECT_TRUE(s.times_up());
}

TEST(Scheduler, FixedBudgetsWithUnitMultiplier) {
  Scheduler s({{"a", 5}, {"b", 5}}, 1);
  s.begin_day();
  for (int i = 0; i < 8; ++i) {
    s.advance(SwitchReason::TimesUp);
    EXPECT_EQ(s.active().current_budget, 5);
  }
}

TEST(RunDay, FailingFirstSlotAlternatesWithGrowingBudgets) {
  // Slot 0 fails on every activation; slot 1 walks right along a corridor.
  const Environment env = Environment::from_text(
      "##########\n"
      "H........F\n"
      "##########\n"
      "##########\n"
      "##########\n"
      "##########\n"
      "##########\n"
      "##########\n"
      "##########\n"
      "##########\n");
  ScriptedStrategy fails("fails");
  ScriptedStrategy walker("walker", {Action::Right});
  std::vector<Strategy*> strategies{&fails, &walker};
  Scheduler sched({{"fails", 5}, {"walker", 2}});
  Rng rng(1);
  const DayResult r = run_day(strategies, sched, env, {}, rng);
  // Food becomes adjacent after 8 moves; the last move is a bypass.
  EXPECT_EQ(r.steps, 9);
  EXPECT_EQ(r.bypasses, 1);
  // Walker budgets 2, 4, then 8: slot 0 was tried at ticks 0, 2 and 6.
  EXPECT_EQ(fails.select_ticks, (std::vector<int>{0, 2, 6}));
  EXPECT_EQ(r.failures, 3);
  EXPECT_EQ(r.activations, (std::vector<int>{3, 3}));
}

TEST(RunDay, CallbacksRunOncePerStrategyPerTick) {
  const Environment env = open_grid(9, {4, 4}, {8, 4});
  ScriptedStrategy first("first", {Action::Right});
  ScriptedStrategy second("second", {Action::Right});
  std::vector<Strategy*> strategies{&first, &second};
  Scheduler sched({{"first", 2}, {"second", 2}});
  Rng rng(2);
  const DayResult r = run_day(strategies, sched, env, {}, rng);
  EXPECT_EQ(r.steps, 4);
  for (const ScriptedStrategy* s : {&first, &second}) {
    EXPECT_EQ(s->new_days, 1);
    EXPECT_EQ(s->pre, r.steps);
    EXPECT_EQ(s->post, r.steps);
    EXPECT_EQ(s->rewards, 1);
  }
  // 3 moves by strategies (2 first, 1 second); the 4th is a bypass.
  EXPECT_EQ(first.selects + second.selects, 3);
  EXPECT_EQ(first.selects, 2);
}

TEST(RunDay, BypassOverridesActiveStrategy) {
  const Environment env = open_grid(9, {4, 4}, {5, 4});
  ScriptedStrategy wants_left("left", {Action::Left});
  std::vector<Strategy*> strategies{&wants_left};
  Scheduler sched({{"left", 0}});
  Rng rng(3);
  const DayResult r = run_day(strategies, sched, env, {}, rng);
  EXPECT_EQ(r.steps, 1);
  EXPECT_EQ(r.bypasses, 1);
  EXPECT_EQ(wants_left.selects, 0);
  ASSERT_EQ(wants_left.executed.size(), 1u);
  EXPECT_EQ(wants_left.executed[0].action, Action::Right);
  EXPECT_TRUE(wants_left.executed[0].bypass);
}

TEST(RunDay, BypassCheckExamples) {
  SenseData s;
  s.adjacent = {CellState::Empty, CellState::Barrier, CellState::Empty, CellState::Food};
  EXPECT_EQ(bypass_check(s), Action::Right);
  s.adjacent[3] = CellState::Empty;
  EXPECT_FALSE(bypass_check(s).has_value());
}

TEST(RunDay, IllegalProposalIsFailureWithoutTick) {
  const Environment env = Environment::from_text(
      ".....\n"
      "..#..\n"
      "..H..\n"
      ".....\n"
      "....F\n");
  ScriptedStrategy bumps("bumps", {Action::Up});
  ScriptedStrategy walker("walker", {Action::Down, Action::Down, Action::Right, Action::Right});
  std::vector<Strategy*> strategies{&bumps, &walker};
  Scheduler sched({{"bumps", 0}, {"walker", 0}});
  Rng rng(4);
  const DayResult r = run_day(strategies, sched, env, {}, rng);
  EXPECT_EQ(r.failures, 1);
  EXPECT_EQ(r.steps, 4);
  EXPECT_EQ(bumps.selects, 1);
}

TEST(RunDay, AllFailingThrows) {
  const Environment env = open_grid(5, {2, 2}, {4, 4});
  ScriptedStrategy a("a"), b("b");
  std::vector<Strategy*> strategies{&a, &b};
  Scheduler sched({{"a", 5}, {"b", 5}});
  Rng rng(5);
  EXPECT_THROW(run_day(strategies, sched, env, {}, rng), AllStrategiesFailed);
}

TEST(RunDay, StepCapSkipsReward) {
  const Environment env = open_grid(5, {0, 0}, {4, 4});
  ScriptedStrategy pacer("pacer", {Action::Right, Action::Left});
  std::vector<Strategy*> strategies{&pacer};
  Scheduler sched({{"pacer", 0}});
  Rng rng(6);
  DayOptions opts;
  opts.step_cap = 50;
  const DayResult r = run_day(strategies, sched, env, opts, rng);
  EXPECT_TRUE(r.gave_up);
  EXPECT_EQ(r.steps, 50);
  EXPECT_EQ(pacer.rewards, 0);
}

TEST(RunDay, OracleOnOpenGridTakesManhattanSteps) {
  const Environment env = open_grid(15, {7, 7}, {14, 14});
  Agent agent = make_agent(AgentSpec::parse("oracle"));
  Rng rng(7);
  EXPECT_EQ(agent.run_day(env, {}, rng).steps, 14);
}

TEST(RunDay, UnlimitedGreedyOnOpenGrid) {
  const Environment env = open_grid(15, {7, 7}, {14, 14});
  Agent agent = make_agent(AgentSpec::parse("greedy:0+biased:5"));
  Rng rng(8);
  for (int day = 0; day < 20; ++day) {
    const DayResult r = agent.run_day(env, {}, rng);
    EXPECT_EQ(r.steps, 14);
    EXPECT_EQ(r.failures, 0);
  }
}

TEST(RunDay, ExpiringBudgetHandsOverToBiased) {
  const Environment env = open_grid(15, {7, 7}, {14, 14});
  Agent agent = make_agent(AgentSpec::parse("greedy:5+biased:5"));
  Rng rng(8);
  for (int day = 0; day < 20; ++day) {
    const DayResult r = agent.run_day(env, {}, rng);
    EXPECT_GE(r.steps, 14);
    EXPECT_EQ(r.steps % 2, 0);
    EXPECT_GE(r.activations[1], 1);
  }
}

// Trace rows: day,tick,strategy,est_x,est_y,true_x,true_y,action,bypass
struct TraceRow {
  LocationEstimate est;
  Position truth;
};

std::vector<TraceRow> parse_trace(const std::string& text) {
  std::vector<TraceRow> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> f;
    std::istringstream fields(line);
    for (std::string x; std::getline(fields, x, ',');) f.push_back(x);
    rows.push_back({{std::stoi(f[3]), std::stoi(f[4])}, {std::stoi(f[5]), std::stoi(f[6])}});
  }
  return rows;
}

TEST(RunDay, NoiselessEstimateTracksTruth) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Environment env = generate({15, 0.3, {7, 7}, {14, 14}, {}}, rng);
    Agent agent = make_agent(AgentSpec::parse("random"));
    std::ostringstream trace;
    DayOptions opts;
    opts.trace = &trace;
    agent.run_day(env, opts, rng);
    for (const TraceRow& row : parse_trace(trace.str()))
      ASSERT_EQ(to_absolute(row.est, env.home()), row.truth);
  }
}

TEST(RunDay, NoisyDriftChangesByAtMostTwoPerTick) {
  Rng rng(10);
  const Environment env = generate({15, 0.2, {7, 7}, {14, 14}, {}}, rng);
  Agent agent = make_agent(AgentSpec::parse("unvisited"));
  std::ostringstream trace;
  DayOptions opts;
  opts.trace = &trace;
  opts.noise = {0.3, 0.5};
  agent.run_day(env, opts, rng);
  const auto rows = parse_trace(trace.str());
  ASSERT_GT(rows.size(), 2u);
  const auto error = [&](const TraceRow& r) {
    return LocationEstimate{r.est.x - (r.truth.x - env.home().x), r.est.y - (r.truth.y - env.home().y)};
  };
  for (std::size_t i = 1; i < rows.size(); ++i)
    ASSERT_LE(manhattan(error(rows[i - 1]), error(rows[i])), 2);
}

TEST(RunDay, TraceHeaderNamesColumns) {
  EXPECT_EQ(kTraceHeader, "day,tick,strategy,est_x,est_y,true_x,true_y,action,bypass");
}

TEST(RunDay, NoFailedStrategySelectedTwiceInARow) {
  Rng rng(11);
  const Environment env = generate({15, 0.3, {7, 7}, {14, 14}, {}}, rng);
  ScriptedStrategy fails("fails");
  auto walker = make_strategy("unvisited");
  std::vector<Strategy*> strategies{&fails, walker.get()};
  Scheduler sched({{"fails", 5}, {"unvisited", 5}});
  const DayResult r = run_day(strategies, sched, env, {}, rng);
  for (std::size_t i = 1; i < fails.select_ticks.size(); ++i)
    EXPECT_LT(fails.select_ticks[i - 1], fails.select_ticks[i]);
  EXPECT_EQ(r.failures, fails.selects);
}

}  // namespace
}  // namespace forage
