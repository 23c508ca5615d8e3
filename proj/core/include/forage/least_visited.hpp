#pragma once

#include <unordered_map>

#include "forage/agent.hpp"

namespace forage {

using VisitCounts = std::unordered_map<LocationEstimate, int, LocationEstimateHash>;

/// Day-scoped explorer: moves to the legal neighbor with the lowest visit
/// count (missing = 0), ties broken uniformly. Never fails.
class LeastVisitedStrategy final : public Strategy {
 public:
  std::string_view name() const override { return "unvisited"; }
  std::optional<Action> select_action(const StrategyContext& ctx, Rng& rng) override;
  void new_day(const StrategyContext& ctx) override;
  void pre_action(const StrategyContext& ctx) override;
  void report(StrategyReport& out) const override;

  const VisitCounts& counts() const { return counts_; }
  long total_visits() const;

 private:
  VisitCounts counts_;
};

/// The selection rule on its own, for reuse and testing.
std::optional<Action> least_visited_select(const StrategyContext& ctx, const VisitCounts& counts,
                                           Rng& rng);

}  // namespace forage
