#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "forage/experiment.hpp"

namespace fs = std::filesystem;
using namespace forage;

namespace {

constexpr int kExitGenerationFailed = 3;

struct ConfigFlags {
  std::optional<std::string> config_file;
  std::uint64_t seed = 0;
  // config key -> raw flag value, applied after the config file
  std::map<std::string, std::string> values;

  void add_to(CLI::App& app) {
    app.add_option("--config", config_file, "key=value config file; flags override it")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "master seed")->required();
    const std::pair<const char*, const char*> fields[] = {
        {"n", "grid side"},
        {"barrier_proportion", "fraction of cells that are barriers"},
        {"change_rate", "fraction of barriers moved between days"},
        {"noise.p", "motion noise probability"},
        {"noise.p2", "share of noise outcomes that stay or overshoot"},
        {"envs", "number of environments (outer loop)"},
        {"days", "days per environment (inner loop)"},
        {"step_cap", "ticks before a day is abandoned"},
        {"agent", "strategies with budgets, e.g. probmap:5+unvisited:5"},
        {"budget_multiplier", "budget growth on reactivation (1 = fixed budgets)"},
        {"memory_horizon", "days an episodic memory is kept"},
        {"food_pattern", "fixed | uniform:K | roundrobin:K"},
        {"freeze_after_day", "stop memory updates after this day (none = never)"},
        {"warmup_days", "leading days left out of the aggregates"},
        {"exclude_gave_up", "leave step-capped days out of the aggregates"},
        {"home", "home cell x,y (default: grid center)"},
        {"food", "food cell x,y for the fixed pattern (default: lower-right corner)"},
        {"threads", "worker threads over environments"},
    };
    for (const auto& [key, help] : fields) {
      std::string flag = key;
      for (char& c : flag)
        if (c == '_' || c == '.') c = '-';
      app.add_option("--" + flag, values[key], help);
    }
  }

  ExperimentConfig build(const CLI::App& app) const {
    ExperimentConfig cfg;
    if (config_file) {
      std::ifstream in(*config_file);
      cfg = read_config(in);
    }
    for (const auto& [key, value] : values) {
      std::string flag = key;
      for (char& c : flag)
        if (c == '_' || c == '.') c = '-';
      if (app.count("--" + flag) > 0) apply_setting(cfg, key, value);
    }
    cfg.seed = seed;
    cfg.validate();
    return cfg;
  }
};

void warn_about(const ExperimentConfig& cfg) {
  if (cfg.barrier_proportion > 0.3)
    std::cerr << "warning: barrier_proportion " << cfg.barrier_proportion
              << " may exhaust environment generation\n";
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
}

void print_summary(const RunStats& stats, std::ostream& out) {
  const Aggregates& a = stats.aggregates;
  out << stats.config.agent.to_string() << ": mean_mean " << a.mean_mean << " (sd " << a.mean_sd
      << "), med_mean " << a.med_mean << ", med_med " << a.med_med << ", max_mean " << a.max_mean
      << ", max_max " << a.max_max << '\n';
  if (!stats.skipped.empty())
    out << "skipped " << stats.skipped.size() << " of " << stats.config.envs
        << " environments (generation failed)\n";
}

int run_command(const ExperimentConfig& cfg, const fs::path& out_dir, bool trace, bool food_log) {
  warn_about(cfg);
  fs::create_directories(out_dir);
  {
    std::ofstream f(out_dir / "config.txt");
    write_config(cfg, f);
  }
  std::ofstream trace_file, food_file;
  RunHooks hooks;
  if (trace) {
    trace_file.open(out_dir / "trace.csv");
    hooks.trace = &trace_file;
  }
  if (food_log) {
    food_file.open(out_dir / "food_log.txt");
    hooks.food_log = &food_file;
  }
  const RunStats stats = run_experiment(cfg, hooks);
  emit_csv(stats, out_dir);
  print_summary(stats, std::cout);
  return stats.skipped.empty() ? EXIT_SUCCESS : kExitGenerationFailed;
}

int sweep_command(const ExperimentConfig& base, const fs::path& out_dir, const std::string& axis,
                  const std::vector<double>& values, const std::vector<std::string>& agent_texts) {
  warn_about(base);
  std::vector<AgentSpec> agents;
  for (const auto& text : agent_texts) agents.push_back(AgentSpec::parse(text));
  fs::create_directories(out_dir);
  {
    std::ofstream f(out_dir / "config.txt");
    write_config(base, f);
    f << "axis=" << axis << '\n';
  }
  const SweepResult result = sweep(base, axis, values, agents);
  bool skipped = false;
  for (std::size_t v = 0; v < result.values.size(); ++v)
    for (std::size_t a = 0; a < result.agents.size(); ++a) {
      const RunStats& stats = result.runs[v][a];
      emit_csv(stats, out_dir / ("value" + std::to_string(v)) / ("agent" + std::to_string(a)));
      std::cout << axis << '=' << result.values[v] << ' ';
      print_summary(stats, std::cout);
      skipped = skipped || !stats.skipped.empty();
    }
  {
    std::ofstream f(out_dir / "sweep.csv");
    write_sweep_csv(result, f);
  }
  {
    std::ofstream f(out_dir / "ratios.csv");
    write_sweep_ratio_csv(result, f);
  }
  return skipped ? kExitGenerationFailed : EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Daily foraging simulations in changing grid worlds"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run one experiment configuration");
  ConfigFlags run_flags;
  run_flags.add_to(*run);
  std::string run_out = "run";
  bool trace = false;
  bool food_log = false;
  run->add_option("--out", run_out, "output directory");
  run->add_flag("--trace", trace, "write a per-tick trace.csv");
  run->add_flag("--food-log", food_log, "write the day-start food candidates of probmap");

  CLI::App* sw = app.add_subcommand("sweep", "run one experiment per value of a parameter");
  ConfigFlags sweep_flags;
  sweep_flags.add_to(*sw);
  std::string sweep_out = "sweep";
  std::string axis;
  std::vector<double> values;
  std::vector<std::string> agents;
  sw->add_option("--out", sweep_out, "output directory");
  sw->add_option("--axis", axis, "barrier_proportion | n | change_rate | noise.p | memory_horizon")
      ->required()
      ->check(CLI::IsMember({"barrier_proportion", "n", "change_rate", "noise.p", "memory_horizon"}));
  sw->add_option("--values", values, "comma separated axis values")->required()->delimiter(',');
  sw->add_option("--agents", agents,
                 "agents to compare, comma separated; ratios are taken against the first")
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(run_flags.build(*run), run_out, trace, food_log);
    return sweep_command(sweep_flags.build(*sw), sweep_out, axis, values, agents);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
}
