#include "forage/strategy_factory.hpp"

#include <charconv>
#include <stdexcept>

#include "forage/least_visited.hpp"
#include "forage/oracle.hpp"
#include "forage/path_memory.hpp"
#include "forage/strategies_basic.hpp"

namespace forage {

AgentSpec AgentSpec::parse(std::string_view text) {
  AgentSpec spec;
  while (!text.empty()) {
    const std::size_t plus = text.find('+');
    std::string_view item = text.substr(0, plus);
    text = plus == std::string_view::npos ? std::string_view{} : text.substr(plus + 1);

    AgentMemberSpec member;
    const std::size_t colon = item.find(':');
    member.strategy = std::string(item.substr(0, colon));
    if (colon != std::string_view::npos) {
      const std::string_view budget = item.substr(colon + 1);
      const auto [ptr, ec] = std::from_chars(budget.data(), budget.data() + budget.size(),
                                             member.initial_budget);
      if (ec != std::errc{} || ptr != budget.data() + budget.size() || member.initial_budget < 0)
        throw std::invalid_argument("bad budget in agent spec: '" + std::string(item) + "'");
    }
    bool known = false;
    for (std::string_view n : kStrategyNames) known = known || n == member.strategy;
    if (!known) throw std::invalid_argument("unknown strategy '" + member.strategy + "'");
    spec.members.push_back(std::move(member));
  }
  if (spec.members.empty()) throw std::invalid_argument("agent spec names no strategies");
  return spec;
}

std::string AgentSpec::to_string() const {
  std::string out;
  for (const auto& m : members) {
    if (!out.empty()) out += '+';
    out += m.strategy + ':' + std::to_string(m.initial_budget);
  }
  return out;
}

std::string AgentSpec::label() const {
  std::string out;
  for (const auto& m : members) {
    if (!out.empty()) out += '+';
    out += m.strategy;
  }
  return out;
}

std::unique_ptr<Strategy> make_strategy(std::string_view name, const StrategyOptions& options) {
  if (name == "random") return std::make_unique<RandomStrategy>();
  if (name == "biased") return std::make_unique<BiasedRandomStrategy>();
  if (name == "greedy") return std::make_unique<GreedyStrategy>();
  if (name == "memgreedy") return std::make_unique<MemoryGreedyStrategy>();
  if (name == "unvisited") return std::make_unique<LeastVisitedStrategy>();
  if (name == "path") return std::make_unique<PathMemoryStrategy>();
  if (name == "probmap") return std::make_unique<ProbMapStrategy>(options.probmap, options.food_log);
  if (name == "oracle") return std::make_unique<OracleStrategy>();
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

Agent make_agent(const AgentSpec& spec, const StrategyOptions& options, int budget_multiplier) {
  std::vector<Agent::Member> members;
  for (const auto& m : spec.members)
    members.push_back({make_strategy(m.strategy, options), m.initial_budget});
  return Agent(std::move(members), budget_multiplier);
}

}  // namespace forage
