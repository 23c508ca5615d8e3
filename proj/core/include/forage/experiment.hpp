#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forage/agent.hpp"
#include "forage/strategy_factory.hpp"

namespace forage {

enum class FoodPatternKind { Fixed, Uniform, RoundRobin };

/// Where the food goes each day. Non-fixed patterns cycle over the first
/// k corners of corner_order().
struct FoodPattern {
  FoodPatternKind kind = FoodPatternKind::Fixed;
  int k = 1;

  /// "fixed", "uniform:K" or "roundrobin:K"
  static FoodPattern parse(std::string_view text);
  std::string to_string() const;
  bool operator==(const FoodPattern&) const = default;
};

/// lower-right, lower-left, upper-right, upper-left
std::vector<Position> corner_order(int n);

struct ExperimentConfig {
  int n = 15;
  double barrier_proportion = 0.3;
  double change_rate = 0.1;
  NoiseParams noise{0.02, 0.5};
  /// Outer loop: number of generated environments.
  int envs = 50;
  /// Inner loop: days per environment.
  int days = 20;
  int step_cap = 200'000;
  AgentSpec agent = AgentSpec::parse("probmap:5+unvisited:5");
  int budget_multiplier = 2;
  int memory_horizon = 5;
  FoodPattern food_pattern;
  /// Strategy memory updates stop after this day.
  std::optional<int> freeze_after_day;
  std::uint64_t seed = 1;
  /// Days 1..warmup_days are left out of the aggregates.
  int warmup_days = 0;
  /// Leave step-capped days out of the aggregates (default: count them at the cap).
  bool exclude_gave_up = false;
  /// Defaults: home at the grid center, food at the lower-right corner.
  std::optional<Position> home;
  std::optional<Position> food;
  int threads = 1;

  Position home_cell() const;
  Position food_cell() const;
  void validate() const;
};

struct DayRecord {
  int steps = 0;
  int plannings = 0;
  bool gave_up = false;
};

struct Aggregates {
  double mean_mean = 0.0;
  double med_mean = 0.0;
  double med_med = 0.0;
  double max_mean = 0.0;
  double max_max = 0.0;
  /// Standard deviation of the per-environment means.
  double mean_sd = 0.0;
};

struct EnvironmentRun {
  int env_index = 0;
  std::vector<DayRecord> days;
  std::size_t episodic_memories_last_day = 0;
  std::size_t visited_cells_day1 = 0;
  std::size_t visited_cells_day2 = 0;
};

struct RunStats {
  ExperimentConfig config;
  /// Environments that completed, ordered by index.
  std::vector<EnvironmentRun> runs;
  /// Environments dropped because generation or a daily change failed.
  std::vector<int> skipped;
  Aggregates aggregates;

  /// Mean steps per day across environments (index 0 = day 1).
  std::vector<double> day_means() const;
  /// Mean steps over an inclusive range of days.
  double mean_over_days(int first_day, int last_day) const;
};

/// Median with the usual even-length convention (mean of the middle two).
double median(std::vector<double> values);

/// Aggregates of a steps matrix (one row per environment, one column per
/// day). Entries flagged in `exclude` (same shape, may be empty) are left out.
Aggregates aggregate(const std::vector<std::vector<double>>& steps,
                     const std::vector<std::vector<bool>>& exclude = {});

/// Moves the food for `day` per the pattern. Fixed leaves it unchanged.
void place_food(Environment& env, const FoodPattern& pattern, int day, Rng& rng);

/// Child seed for environment `env_index`; a pure function of both inputs.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

struct RunHooks {
  /// Called after every simulated day. May be invoked from worker threads
  /// when config.threads > 1.
  std::function<void(int env_index, int day, const Agent& agent, const Environment& env,
                     const DayResult& result)>
      after_day;
  /// Optional per-tick trace of every environment, in environment order.
  std::ostream* trace = nullptr;
  /// Optional day-start food-candidate log of the probmap strategy.
  std::ostream* food_log = nullptr;
};

/// k1 environments × k2 days. Per environment: seed a child rng, generate,
/// then each day place food, run the day and apply the daily change.
RunStats run_experiment(const ExperimentConfig& cfg, const RunHooks& hooks = {});

void write_day_csv(const RunStats& stats, std::ostream& out);
void write_summary_csv(const RunStats& stats, std::ostream& out);

/// Writes days.csv and summary.csv into `dir` (created if needed).
/// Throws std::filesystem::filesystem_error / std::runtime_error on I/O failure.
void emit_csv(const RunStats& stats, const std::filesystem::path& dir);

/// key=value lines, one per config field; read_config accepts the same.
void write_config(const ExperimentConfig& cfg, std::ostream& out);
ExperimentConfig read_config(std::istream& in, ExperimentConfig base = {});
/// Applies one key=value setting. Throws std::invalid_argument on unknown
/// keys or malformed values.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

inline constexpr std::string_view kSweepAxes[] = {"barrier_proportion", "n", "change_rate",
                                                  "noise.p", "memory_horizon"};

ExperimentConfig with_axis_value(ExperimentConfig cfg, std::string_view axis, double value);

struct SweepResult {
  std::string axis;
  std::vector<double> values;
  std::vector<AgentSpec> agents;
  /// runs[value_index][agent_index]
  std::vector<std::vector<RunStats>> runs;
};

/// One experiment per (value, agent). All agents at a given value share
/// the value's derived seed, hence the same environments.
SweepResult sweep(const ExperimentConfig& base, std::string_view axis,
                  const std::vector<double>& values, const std::vector<AgentSpec>& agents);

/// Long format: axis,value,agent,statistic,result
void write_sweep_csv(const SweepResult& result, std::ostream& out);
/// mean_mean of every other agent divided by the first agent's.
void write_sweep_ratio_csv(const SweepResult& result, std::ostream& out);

}  // namespace forage
