#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "forage/oracle.hpp"
#include "forage/probmap.hpp"
#include "forage/strategy_factory.hpp"
#include "test_support.hpp"

namespace forage {
namespace {

constexpr CellState E = CellState::Empty;
constexpr CellState B = CellState::Barrier;
constexpr CellState F = CellState::Food;

TEST(ProbMap, NoFoodMemoriesNoCandidates) {
  ProbMapState state;
  state.memories.record({1, 0}, B, 1, 0);
  EXPECT_TRUE(food_candidates(state, 1).empty());
  Rng rng(1);
  EXPECT_FALSE(make_plan(state, {0, 0}, 1, rng).has_value());
  EXPECT_EQ(state.planning_count, 0);
}

TEST(ProbMap, YesterdaysFoodIsCertain) {
  ProbMapState state;
  state.memories.record({7, 7}, F, 1, 30);
  const auto c = food_candidates(state, 2);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].location, (LocationEstimate{7, 7}));
  EXPECT_DOUBLE_EQ(c[0].probability, 1.0);
}

TEST(ProbMap, CandidatesBelowThresholdDropped) {
  ProbMapState state;
  state.memories.record({3, 3}, F, 1, 0);
  for (int i = 0; i < 10; ++i) state.bank.score_and_update({1, F}, E);
  EXPECT_TRUE(food_candidates(state, 2).empty());
}

TEST(ProbMap, GoalSampledProportionallyToFoodProbability) {
  ProbMapState state;
  const LocationEstimate a{6, 0}, b{0, 6};
  state.memories.record(a, F, 2, 0);  // <1,Food> on day 3
  state.memories.record(b, F, 1, 0);  // <2,Food> on day 3
  state.bank.score_and_update({1, F}, F);
  state.bank.score_and_update({1, F}, E);
  for (int i = 0; i < 7; ++i) state.bank.score_and_update({2, F}, F);
  for (int i = 0; i < 3; ++i) state.bank.score_and_update({2, F}, E);
  const auto c = food_candidates(state, 3);
  ASSERT_EQ(c.size(), 2u);

  Rng rng(2);
  int to_a = 0;
  const int draws = 20'000;
  for (int i = 0; i < draws; ++i) {
    const auto plan = make_plan(state, {0, 0}, 3, rng);
    ASSERT_TRUE(plan);
    to_a += plan->goal == a ? 1 : 0;
  }
  EXPECT_NEAR(to_a / double(draws), 0.5 / 1.2, 0.01);
  EXPECT_EQ(state.planning_count, draws);
}

TEST(ProbMap, BestMemoryTypeOrdering) {
  PredictorBank bank;
  const std::vector<EpisodicMemory> mems{{{0, 0}, B, 4, 0}, {{0, 0}, E, 5, 0}, {{0, 0}, B, 3, 0}};
  // Nothing scored: smallest age wins.
  EXPECT_EQ(best_memory_type(bank, mems, 6), (MemoryType{1, E}));
  // A scored type beats unscored ones.
  bank.score_and_update({3, B}, B);
  EXPECT_EQ(best_memory_type(bank, mems, 6), (MemoryType{3, B}));
  // Lower loss wins.
  bank.score_and_update({2, B}, B);
  bank.score_and_update({3, B}, E);
  EXPECT_EQ(best_memory_type(bank, mems, 6), (MemoryType{2, B}));
}

TEST(ProbMap, BestMemoryTypeTieBreaksOnAgeThenObject) {
  PredictorBank bank;
  bank.score_and_update({1, B}, B);
  bank.score_and_update({1, E}, E);
  bank.score_and_update({2, E}, E);
  const std::vector<EpisodicMemory> same_age{{{0, 0}, B, 2, 0}, {{0, 0}, E, 2, 0}};
  EXPECT_EQ(best_memory_type(bank, same_age, 3), (MemoryType{1, E}));
  const std::vector<EpisodicMemory> ages{{{0, 0}, E, 1, 0}, {{0, 0}, B, 2, 0}};
  EXPECT_EQ(best_memory_type(bank, ages, 3), (MemoryType{1, B}));
}

TEST(ProbMap, BarrierSamplingFrequency) {
  ProbMapState state;
  const LocationEstimate loc{2, 2};
  state.memories.record(loc, B, 1, 0);
  state.bank.score_and_update({1, B}, E);
  for (int i = 0; i < 9; ++i) state.bank.score_and_update({1, B}, B);
  state.memories.record({5, 5}, B, 2, 0);  // <0,Barrier>, fresh predictor: always a barrier
  Rng rng(3);
  int hits = 0;
  for (int i = 0; i < 10'000; ++i) {
    const BarrierSet s = sample_barrier_map(state, 2, rng);
    hits += s.contains(loc) ? 1 : 0;
    ASSERT_TRUE(s.contains({5, 5}));
    ASSERT_FALSE(s.contains({9, 9}));
  }
  EXPECT_NEAR(hits / 1e4, 0.9, 0.02);
}

TEST(ProbMap, RetriesOnUnluckyBarrierDraws) {
  // Food at G is enclosed except through X, a coin-flip barrier.
  ProbMapState state;
  const int today = 3;
  const LocationEstimate goal{5, 0}, gate{4, 0};
  state.memories.record(goal, F, 2, 0);
  state.memories.record(gate, B, 1, 0);
  for (LocationEstimate wall : {LocationEstimate{6, 0}, LocationEstimate{5, -1}, LocationEstimate{5, 1}})
    state.memories.record(wall, B, 2, 0);
  state.bank.score_and_update({2, B}, B);
  state.bank.score_and_update({2, B}, E);

  Rng rng(4);
  const int trials = 4000;
  int found = 0;
  for (int i = 0; i < trials; ++i) found += make_plan(state, {0, 0}, today, rng) ? 1 : 0;
  EXPECT_NEAR(found / double(trials), 1.0 - std::pow(0.5, 5), 0.01);
}

TEST(ProbMap, PlanningBoundIsRememberedPerimeter) {
  ProbMapState state;
  state.memories.record({3, -2}, E, 1, 0);
  EXPECT_EQ(planning_bound(state, {0, 0}, {5, 1}, 1), 2 * (6 + 4));
}

TEST(ProbMap, ObservationsScoreThenStore) {
  const Environment env = Environment::from_text(
      ".....\n"
      "..#..\n"
      "..H..\n"
      ".....\n"
      "....F\n");
  ProbMapState state;
  StrategyContext ctx = testing::context_at(env, env.home(), 1, 0);
  observe_and_update(state, ctx);
  EXPECT_EQ(state.memories.size(1), 4u);
  EXPECT_TRUE(state.bank.losses().empty());
  ctx.tick = 1;
  observe_and_update(state, ctx);
  EXPECT_EQ(state.memories.size(1), 4u);
  EXPECT_EQ(state.bank.losses().at({0, B}).count, 1);
  EXPECT_EQ(state.bank.losses().at({0, E}).count, 3);
}

TEST(ProbMap, FirstDayFailsImmediately) {
  ProbMapStrategy s;
  Rng rng(5);
  const Environment env = testing::open_grid(9, {4, 4}, {8, 8});
  const StrategyContext ctx = testing::context_at(env, env.home());
  s.new_day(ctx);
  s.pre_action(ctx);
  EXPECT_FALSE(s.select_action(ctx, rng).has_value());
}

TEST(ProbMap, StaticOpenWorldPlansOncePerDay) {
  const Environment env = testing::open_grid(15, {7, 7}, {14, 14});
  Agent agent = make_agent(AgentSpec::parse("probmap:0+unvisited:5"));
  Rng rng(6);
  agent.run_day(env, {}, rng);
  for (int day = 2; day <= 6; ++day) {
    Environment today = env;
    today.set_day(day);
    const DayResult r = agent.run_day(today, {}, rng);
    EXPECT_EQ(r.steps, 14);
    EXPECT_EQ(r.plannings, 1);
    EXPECT_EQ(r.failures, 0);
  }
}

TEST(ProbMap, NewBarrierTriggersOneReplanThatTick) {
  const Environment day1 = testing::open_grid(9, {1, 4}, {7, 4});
  auto owned = std::make_unique<ProbMapStrategy>();
  ProbMapStrategy* pm = owned.get();
  std::vector<Agent::Member> members;
  members.push_back({std::move(owned), 0});
  members.push_back({make_strategy("unvisited"), 0});
  Agent agent(std::move(members));
  Rng rng(7);
  agent.run_day(day1, {}, rng);

  // Day 2: drive the strategy by hand along its plan until the wall shows up.
  const Environment day2(9, {1, 4}, {7, 4}, {{4, 4}, {4, 3}, {4, 5}}, {}, 2);
  Position pos = day2.home();
  StrategyContext ctx = testing::context_at(day2, pos, 2, 0);
  ctx.activation_serial = 1;
  pm->new_day(ctx);
  bool replanned_on_wall = false;
  for (int tick = 0; tick < 60 && pos != day2.food(); ++tick) {
    ctx.tick = tick;
    ctx.sense = sense(day2, pos);
    ctx.truth.position = pos;
    pm->pre_action(ctx);
    const long before = pm->state().planning_count;
    const auto a = pm->select_action(ctx, rng);
    const long used = pm->state().planning_count - before;
    ASSERT_LE(used, 1);
    if (tick > 0 && used == 1 && ctx.sense.at(Action::Right) == B) replanned_on_wall = true;
    const Action move = a.value_or(ctx.sense.legal.to_vector().front());
    ASSERT_TRUE(ctx.sense.legal.contains(move));
    pos = execute_action(day2, pos, move, {}, rng);
    ctx.estimate = integrate(ctx.estimate, move);
  }
  EXPECT_TRUE(replanned_on_wall);
}

TEST(ProbMap, FoodLogShowsCandidatesInGridFrame) {
  std::ostringstream log;
  ProbMapParams params;
  params.log_offset = {7, 7};
  auto owned = std::make_unique<ProbMapStrategy>(params, &log);
  std::vector<Agent::Member> members;
  members.push_back({std::move(owned), 0});
  members.push_back({make_strategy("unvisited"), 5});
  Agent agent(std::move(members));
  const Environment env = testing::open_grid(15, {7, 7}, {14, 14});
  Rng rng(8);
  agent.run_day(env, {}, rng);
  Environment day2 = env;
  day2.set_day(2);
  agent.run_day(day2, {}, rng);
  EXPECT_EQ(log.str(), "day 1:\nday 2: ((14, 14), 1.00)\n");
}

TEST(ProbMap, FrozenStateStopsChanging) {
  Rng rng(9);
  const Environment env = generate({15, 0.3, {7, 7}, {14, 14}, {}}, rng);
  auto owned = std::make_unique<ProbMapStrategy>();
  ProbMapStrategy* pm = owned.get();
  std::vector<Agent::Member> members;
  members.push_back({std::move(owned), 5});
  members.push_back({make_strategy("unvisited"), 5});
  Agent agent(std::move(members));
  Environment today = env;
  for (int day = 1; day <= 3; ++day) {
    agent.run_day(today, {}, rng);
    today = daily_change(today, 0.1, rng);
  }
  agent.set_learning_frozen(true);
  const std::size_t memories = pm->state().memories.size(3);
  const auto daily = pm->state().bank.daily();
  agent.run_day(today, {}, rng);
  EXPECT_EQ(pm->state().memories.size(3), memories);
  EXPECT_EQ(pm->state().bank.daily(), daily);
}

TEST(ProbMap, EpisodicStoreBoundedByHorizon) {
  Rng rng(10);
  Environment env = generate({15, 0.3, {7, 7}, {14, 14}, {}}, rng);
  auto owned = std::make_unique<ProbMapStrategy>();
  ProbMapStrategy* pm = owned.get();
  std::vector<Agent::Member> members;
  members.push_back({std::move(owned), 5});
  members.push_back({make_strategy("unvisited"), 5});
  Agent agent(std::move(members));
  for (int day = 1; day <= 12; ++day) {
    agent.run_day(env, {}, rng);
    const auto& store = pm->state().memories;
    EXPECT_LE(store.size(day), 6 * store.locations());
    env = daily_change(env, 0.1, rng);
  }
}

TEST(Oracle, NoiselessStepsEqualShortestPath) {
  Rng rng(11);
  Environment env = generate({15, 0.3, {7, 7}, {14, 14}, {}}, rng);
  Agent agent = make_agent(AgentSpec::parse("oracle"));
  for (int day = 1; day <= 20; ++day) {
    const DayResult r = agent.run_day(env, {}, rng);
    EXPECT_EQ(r.steps, shortest_path_len(env, env.home(), env.food()));
    env = daily_change(env, 0.1, rng);
  }
}

TEST(Oracle, RecoversFromNoise) {
  Rng rng(12);
  const Environment env = generate({15, 0.3, {7, 7}, {14, 14}, {}}, rng);
  Agent agent = make_agent(AgentSpec::parse("oracle"));
  DayOptions opts;
  opts.noise = {0.2, 0.5};
  for (int day = 0; day < 20; ++day) {
    const DayResult r = agent.run_day(env, opts, rng);
    EXPECT_FALSE(r.gave_up);
    EXPECT_EQ(r.failures, 0);
  }
}

}  // namespace
}  // namespace forage
