#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "forage/experiment.hpp"

namespace forage {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fixed4(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw std::invalid_argument("bad value for " + std::string(key) + ": '" + std::string(value) + "'");
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("bad value for " + std::string(key) + ": '" + std::string(value) + "'");
}

std::optional<Position> parse_cell(std::string_view key, std::string_view value) {
  if (value == "default" || value.empty()) return std::nullopt;
  const std::size_t comma = value.find(',');
  if (comma == std::string_view::npos)
    throw std::invalid_argument("expected x,y for " + std::string(key));
  return Position{parse_number<int>(key, trim(value.substr(0, comma))),
                  parse_number<int>(key, trim(value.substr(comma + 1)))};
}

std::string cell_text(const std::optional<Position>& p) {
  if (!p) return "default";
  return std::to_string(p->x) + "," + std::to_string(p->y);
}

constexpr std::pair<std::string_view, double Aggregates::*> kAggregateRows[] = {
    {"mean_mean", &Aggregates::mean_mean}, {"med_mean", &Aggregates::med_mean},
    {"med_med", &Aggregates::med_med},     {"max_mean", &Aggregates::max_mean},
    {"max_max", &Aggregates::max_max}};

}  // namespace

void write_day_csv(const RunStats& stats, std::ostream& out) {
  out << "env_index,day,steps,plannings,gave_up\n";
  for (const auto& run : stats.runs)
    for (std::size_t d = 0; d < run.days.size(); ++d) {
      const DayRecord& r = run.days[d];
      out << run.env_index << ',' << d + 1 << ',' << r.steps << ',' << r.plannings << ','
          << (r.gave_up ? 1 : 0) << '\n';
    }
}

void write_summary_csv(const RunStats& stats, std::ostream& out) {
  out << "statistic,value\n";
  for (const auto& [name, field] : kAggregateRows) out << name << ',' << fixed4(stats.aggregates.*field) << '\n';
}

void emit_csv(const RunStats& stats, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto write = [&](const char* name, auto&& body) {
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("cannot open " + (dir / name).string() + " for writing");
    body(f);
    if (!f) throw std::runtime_error("write failed: " + (dir / name).string());
  };
  write("days.csv", [&](std::ostream& f) { write_day_csv(stats, f); });
  write("summary.csv", [&](std::ostream& f) { write_summary_csv(stats, f); });
}

void write_config(const ExperimentConfig& cfg, std::ostream& out) {
  out << "n=" << cfg.n << '\n'
      << "barrier_proportion=" << format_double(cfg.barrier_proportion) << '\n'
      << "change_rate=" << format_double(cfg.change_rate) << '\n'
      << "noise.p=" << format_double(cfg.noise.p) << '\n'
      << "noise.p2=" << format_double(cfg.noise.p2) << '\n'
      << "envs=" << cfg.envs << '\n'
      << "days=" << cfg.days << '\n'
      << "step_cap=" << cfg.step_cap << '\n'
      << "agent=" << cfg.agent.to_string() << '\n'
      << "budget_multiplier=" << cfg.budget_multiplier << '\n'
      << "memory_horizon=" << cfg.memory_horizon << '\n'
      << "food_pattern=" << cfg.food_pattern.to_string() << '\n'
      << "freeze_after_day="
      << (cfg.freeze_after_day ? std::to_string(*cfg.freeze_after_day) : std::string("none")) << '\n'
      << "seed=" << cfg.seed << '\n'
      << "warmup_days=" << cfg.warmup_days << '\n'
      << "exclude_gave_up=" << (cfg.exclude_gave_up ? "true" : "false") << '\n'
      << "home=" << cell_text(cfg.home) << '\n'
      << "food=" << cell_text(cfg.food) << '\n'
      << "threads=" << cfg.threads << '\n';
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "n") cfg.n = parse_number<int>(key, value);
  else if (key == "barrier_proportion") cfg.barrier_proportion = parse_number<double>(key, value);
  else if (key == "change_rate") cfg.change_rate = parse_number<double>(key, value);
  else if (key == "noise.p") cfg.noise.p = parse_number<double>(key, value);
  else if (key == "noise.p2") cfg.noise.p2 = parse_number<double>(key, value);
  else if (key == "envs" || key == "k1") cfg.envs = parse_number<int>(key, value);
  else if (key == "days" || key == "k2") cfg.days = parse_number<int>(key, value);
  else if (key == "step_cap") cfg.step_cap = parse_number<int>(key, value);
  else if (key == "agent" || key == "strategy_spec") cfg.agent = AgentSpec::parse(value);
  else if (key == "budget_multiplier") cfg.budget_multiplier = parse_number<int>(key, value);
  else if (key == "memory_horizon") cfg.memory_horizon = parse_number<int>(key, value);
  else if (key == "food_pattern") cfg.food_pattern = FoodPattern::parse(value);
  else if (key == "freeze_after_day") {
    if (value == "none" || value.empty()) cfg.freeze_after_day.reset();
    else cfg.freeze_after_day = parse_number<int>(key, value);
  }
  else if (key == "seed" || key == "master_seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "warmup_days") cfg.warmup_days = parse_number<int>(key, value);
  else if (key == "exclude_gave_up") cfg.exclude_gave_up = parse_bool(key, value);
  else if (key == "home") cfg.home = parse_cell(key, value);
  else if (key == "food") cfg.food = parse_cell(key, value);
  else if (key == "threads") cfg.threads = parse_number<int>(key, value);
  else throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
}

ExperimentConfig read_config(std::istream& in, ExperimentConfig base) {
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key=value");
    apply_setting(base, text.substr(0, eq), text.substr(eq + 1));
  }
  return base;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "axis,value,agent,statistic,result\n";
  for (std::size_t v = 0; v < result.values.size(); ++v)
    for (std::size_t a = 0; a < result.agents.size(); ++a)
      for (const auto& [name, field] : kAggregateRows)
        out << result.axis << ',' << format_double(result.values[v]) << ','
            << result.agents[a].to_string() << ',' << name << ','
            << fixed4(result.runs[v][a].aggregates.*field) << '\n';
}

void write_sweep_ratio_csv(const SweepResult& result, std::ostream& out) {
  out << "axis,value,numerator,denominator,ratio\n";
  if (result.agents.size() < 2) return;
  for (std::size_t v = 0; v < result.values.size(); ++v) {
    const double base = result.runs[v][0].aggregates.mean_mean;
    for (std::size_t a = 1; a < result.agents.size(); ++a) {
      const double num = result.runs[v][a].aggregates.mean_mean;
      out << result.axis << ',' << format_double(result.values[v]) << ','
          << result.agents[a].to_string() << ',' << result.agents[0].to_string() << ','
          << (base > 0 ? fixed4(num / base) : std::string("nan")) << '\n';
    }
  }
}

}  // namespace forage
