#include "forage/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace forage {

FoodPattern FoodPattern::parse(std::string_view text) {
  if (text == "fixed") return {};
  const std::size_t colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  FoodPattern out;
  if (kind == "uniform")
    out.kind = FoodPatternKind::Uniform;
  else if (kind == "roundrobin")
    out.kind = FoodPatternKind::RoundRobin;
  else
    throw std::invalid_argument("unknown food pattern '" + std::string(text) + "'");
  if (colon == std::string_view::npos)
    throw std::invalid_argument("food pattern needs a corner count: '" + std::string(text) + "'");
  const std::string_view num = text.substr(colon + 1);
  const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), out.k);
  if (ec != std::errc{} || ptr != num.data() + num.size())
    throw std::invalid_argument("bad corner count in '" + std::string(text) + "'");
  if (out.k < 2 || out.k > 4)
    throw std::invalid_argument("food pattern corner count must be in [2, 4]: '" + std::string(text) + "'");
  return out;
}

std::string FoodPattern::to_string() const {
  switch (kind) {
    case FoodPatternKind::Fixed: return "fixed";
    case FoodPatternKind::Uniform: return "uniform:" + std::to_string(k);
    case FoodPatternKind::RoundRobin: return "roundrobin:" + std::to_string(k);
  }
  return "fixed";
}

std::vector<Position> corner_order(int n) {
  return {{n - 1, n - 1}, {0, n - 1}, {n - 1, 0}, {0, 0}};
}

Position ExperimentConfig::home_cell() const { return home.value_or(Position{n / 2, n / 2}); }

Position ExperimentConfig::food_cell() const {
  if (food) return *food;
  return corner_order(n).front();
}

void ExperimentConfig::validate() const {
  const auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (n < 2) fail("n must be at least 2");
  if (!(barrier_proportion >= 0.0 && barrier_proportion < 1.0))
    fail("barrier_proportion must be in [0, 1)");
  if (!(change_rate >= 0.0 && change_rate <= 1.0)) fail("change_rate must be in [0, 1]");
  if (!(noise.p >= 0.0 && noise.p <= 1.0)) fail("noise.p must be in [0, 1]");
  if (!(noise.p2 >= 0.0 && noise.p2 <= 1.0)) fail("noise.p2 must be in [0, 1]");
  if (envs < 1) fail("envs must be at least 1");
  if (days < 1) fail("days must be at least 1");
  if (step_cap < 1) fail("step_cap must be at least 1");
  if (budget_multiplier < 1) fail("budget_multiplier must be at least 1");
  if (memory_horizon < 0) fail("memory_horizon must be non-negative");
  if (warmup_days < 0 || warmup_days >= days) fail("warmup_days must be in [0, days)");
  if (threads < 1) fail("threads must be at least 1");
  if (agent.members.empty()) fail("agent names no strategies");
  if (food_pattern.kind != FoodPatternKind::Fixed && (food_pattern.k < 2 || food_pattern.k > 4))
    fail("food pattern corner count must be in [2, 4]");
  if (freeze_after_day && *freeze_after_day < 0) fail("freeze_after_day must be non-negative");
  const auto inside = [&](Position p) { return p.x >= 0 && p.y >= 0 && p.x < n && p.y < n; };
  if (!inside(home_cell())) fail("home lies outside the grid");
  if (!inside(food_cell())) fail("food lies outside the grid");
  if (home_cell() == food_cell()) fail("home and food coincide");
  if (food_pattern.kind != FoodPatternKind::Fixed) {
    const auto corners = corner_order(n);
    for (int i = 0; i < food_pattern.k; ++i)
      if (corners[static_cast<std::size_t>(i)] == home_cell()) fail("home coincides with a food corner");
  }
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

Aggregates aggregate(const std::vector<std::vector<double>>& steps,
                     const std::vector<std::vector<bool>>& exclude) {
  std::vector<double> means, medians, maxima;
  double global_max = 0.0;
  for (std::size_t e = 0; e < steps.size(); ++e) {
    std::vector<double> kept;
    for (std::size_t d = 0; d < steps[e].size(); ++d) {
      if (!exclude.empty() && exclude[e][d]) continue;
      kept.push_back(steps[e][d]);
    }
    if (kept.empty()) continue;
    means.push_back(std::accumulate(kept.begin(), kept.end(), 0.0) / static_cast<double>(kept.size()));
    maxima.push_back(*std::max_element(kept.begin(), kept.end()));
    global_max = std::max(global_max, maxima.back());
    medians.push_back(median(std::move(kept)));
  }
  Aggregates out;
  if (means.empty()) return out;
  const auto mean_of = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  out.mean_mean = mean_of(means);
  out.med_mean = mean_of(medians);
  out.med_med = median(medians);
  out.max_mean = mean_of(maxima);
  out.max_max = global_max;
  if (means.size() > 1) {
    double ss = 0.0;
    for (double m : means) ss += (m - out.mean_mean) * (m - out.mean_mean);
    out.mean_sd = std::sqrt(ss / static_cast<double>(means.size() - 1));
  }
  return out;
}

std::vector<double> RunStats::day_means() const {
  std::vector<double> out(static_cast<std::size_t>(config.days), 0.0);
  if (runs.empty()) return out;
  for (const auto& r : runs)
    for (std::size_t d = 0; d < r.days.size(); ++d) out[d] += r.days[d].steps;
  for (double& v : out) v /= static_cast<double>(runs.size());
  return out;
}

double RunStats::mean_over_days(int first_day, int last_day) const {
  const std::vector<double> means = day_means();
  first_day = std::max(first_day, 1);
  last_day = std::min(last_day, config.days);
  if (first_day > last_day) return 0.0;
  double sum = 0.0;
  for (int d = first_day; d <= last_day; ++d) sum += means[static_cast<std::size_t>(d - 1)];
  return sum / (last_day - first_day + 1);
}

void place_food(Environment& env, const FoodPattern& pattern, int day, Rng& rng) {
  if (pattern.kind == FoodPatternKind::Fixed) return;
  const auto corners = corner_order(env.size());
  std::size_t index = 0;
  if (pattern.kind == FoodPatternKind::RoundRobin) {
    index = static_cast<std::size_t>((day - 1) % pattern.k);
  } else {
    std::uniform_int_distribution<int> pick(0, pattern.k - 1);
    index = static_cast<std::size_t>(pick(rng));
  }
  env.set_food(corners[index]);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

namespace {

struct EnvOutcome {
  std::optional<EnvironmentRun> run;
  std::string trace;
  std::string food_log;
  std::string error;
};

GridSpec grid_spec_for(const ExperimentConfig& cfg) {
  GridSpec spec;
  spec.n = cfg.n;
  spec.barrier_proportion = cfg.barrier_proportion;
  spec.home = cfg.home_cell();
  spec.food = cfg.food_cell();
  if (cfg.food_pattern.kind != FoodPatternKind::Fixed) {
    const auto corners = corner_order(cfg.n);
    spec.food = corners.front();
    spec.reserved.assign(corners.begin(), corners.begin() + cfg.food_pattern.k);
  }
  return spec;
}

EnvOutcome run_environment(const ExperimentConfig& cfg, int env_index, const RunHooks& hooks) {
  EnvOutcome out;
  std::ostringstream trace, food_log;
  Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(env_index)));
  try {
    Environment env = generate(grid_spec_for(cfg), rng);

    StrategyOptions options;
    options.probmap.memory_horizon = cfg.memory_horizon;
    options.probmap.log_offset = env.home();
    if (hooks.food_log) options.food_log = &food_log;
    Agent agent = make_agent(cfg.agent, options, cfg.budget_multiplier);

    DayOptions day_options;
    day_options.step_cap = cfg.step_cap;
    day_options.noise = cfg.noise;
    if (hooks.trace) day_options.trace = &trace;

    if (hooks.food_log) food_log << "env " << env_index << '\n';
    EnvironmentRun run;
    run.env_index = env_index;
    for (int day = 1; day <= cfg.days; ++day) {
      place_food(env, cfg.food_pattern, day, rng);
      if (cfg.freeze_after_day && day > *cfg.freeze_after_day) agent.set_learning_frozen(true);
      const DayResult result = agent.run_day(env, day_options, rng);
      run.days.push_back({result.steps, result.plannings, result.gave_up});

      const StrategyReport report = agent.report();
      if (day == 1) run.visited_cells_day1 = report.visited_cells.value_or(0);
      if (day == 2) run.visited_cells_day2 = report.visited_cells.value_or(0);
      if (day == cfg.days) run.episodic_memories_last_day = report.episodic_memories.value_or(0);
      if (hooks.after_day) hooks.after_day(env_index, day, agent, env, result);

      if (day < cfg.days) env = daily_change(env, cfg.change_rate, rng);
    }
    out.run = std::move(run);
  } catch (const GenerationFailed& e) {
    out.error = e.what();
  }
  out.trace = trace.str();
  out.food_log = food_log.str();
  return out;
}

}  // namespace

RunStats run_experiment(const ExperimentConfig& cfg, const RunHooks& hooks) {
  cfg.validate();
  std::vector<EnvOutcome> outcomes(static_cast<std::size_t>(cfg.envs));

  const unsigned workers = static_cast<unsigned>(std::min(cfg.threads, cfg.envs));
  if (workers <= 1) {
    for (int i = 0; i < cfg.envs; ++i) outcomes[static_cast<std::size_t>(i)] = run_environment(cfg, i, hooks);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int i = next++; i < cfg.envs; i = next++)
          outcomes[static_cast<std::size_t>(i)] = run_environment(cfg, i, hooks);
      });
  }

  RunStats stats;
  stats.config = cfg;
  if (hooks.trace) *hooks.trace << "env," << kTraceHeader << '\n';
  std::vector<std::vector<double>> steps;
  std::vector<std::vector<bool>> exclude;
  for (int i = 0; i < cfg.envs; ++i) {
    EnvOutcome& o = outcomes[static_cast<std::size_t>(i)];
    if (hooks.trace) {
      std::istringstream lines(o.trace);
      for (std::string line; std::getline(lines, line);) *hooks.trace << i << ',' << line << '\n';
    }
    if (hooks.food_log) *hooks.food_log << o.food_log;
    if (!o.run) {
      stats.skipped.push_back(i);
      continue;
    }
    std::vector<double> row;
    std::vector<bool> skip;
    for (std::size_t d = 0; d < o.run->days.size(); ++d) {
      const DayRecord& r = o.run->days[d];
      row.push_back(r.steps);
      skip.push_back(static_cast<int>(d) < cfg.warmup_days || (cfg.exclude_gave_up && r.gave_up));
    }
    steps.push_back(std::move(row));
    exclude.push_back(std::move(skip));
    stats.runs.push_back(std::move(*o.run));
  }
  stats.aggregates = aggregate(steps, exclude);
  return stats;
}

ExperimentConfig with_axis_value(ExperimentConfig cfg, std::string_view axis, double value) {
  if (axis == "barrier_proportion")
    cfg.barrier_proportion = value;
  else if (axis == "n")
    cfg.n = static_cast<int>(std::lround(value));
  else if (axis == "change_rate")
    cfg.change_rate = value;
  else if (axis == "noise.p")
    cfg.noise.p = value;
  else if (axis == "memory_horizon")
    cfg.memory_horizon = static_cast<int>(std::lround(value));
  else
    throw std::invalid_argument("unknown sweep axis '" + std::string(axis) + "'");
  // A custom food cell may not fit a smaller grid.
  if (axis == "n") {
    cfg.home.reset();
    cfg.food.reset();
  }
  return cfg;
}

SweepResult sweep(const ExperimentConfig& base, std::string_view axis,
                  const std::vector<double>& values, const std::vector<AgentSpec>& agents) {
  SweepResult out;
  out.axis = std::string(axis);
  out.values = values;
  out.agents = agents.empty() ? std::vector<AgentSpec>{base.agent} : agents;
  for (std::size_t v = 0; v < values.size(); ++v) {
    ExperimentConfig cfg = with_axis_value(base, axis, values[v]);
    cfg.seed = derive_seed(base.seed, ~static_cast<std::uint64_t>(v));
    std::vector<RunStats> row;
    for (const AgentSpec& agent : out.agents) {
      cfg.agent = agent;
      row.push_back(run_experiment(cfg));
    }
    out.runs.push_back(std::move(row));
  }
  return out;
}

}  // namespace forage
