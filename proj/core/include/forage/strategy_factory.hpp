#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "forage/agent.hpp"
#include "forage/probmap.hpp"

namespace forage {

/// Names accepted by make_strategy.
inline constexpr std::string_view kStrategyNames[] = {
    "random", "biased", "greedy", "memgreedy", "unvisited", "path", "probmap", "oracle"};

struct AgentMemberSpec {
  std::string strategy;
  int initial_budget = 5;
  bool operator==(const AgentMemberSpec&) const = default;
};

/// Ordered strategy list, written "probmap:5+unvisited:5". A member
/// without ":budget" gets the default of 5; 0 means unlimited.
struct AgentSpec {
  std::vector<AgentMemberSpec> members;

  static AgentSpec parse(std::string_view text);
  /// Canonical "name:budget+name:budget" form.
  std::string to_string() const;
  /// "probmap+unvisited"
  std::string label() const;

  bool operator==(const AgentSpec&) const = default;
};

struct StrategyOptions {
  ProbMapParams probmap;
  std::ostream* food_log = nullptr;
};

std::unique_ptr<Strategy> make_strategy(std::string_view name, const StrategyOptions& options = {});

Agent make_agent(const AgentSpec& spec, const StrategyOptions& options = {},
                 int budget_multiplier = 2);

}  // namespace forage
