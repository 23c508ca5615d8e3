#pragma once

#include "forage/planner.hpp"

namespace forage {

/// Reference strategy with the full, current map and the true position.
/// Plans with A* over true barriers and replans whenever noise moves the
/// agent off its plan. Never fails on a solvable grid.
class OracleStrategy final : public Strategy {
 public:
  std::string_view name() const override { return "oracle"; }
  std::optional<Action> select_action(const StrategyContext& ctx, Rng& rng) override;
  void new_day(const StrategyContext& ctx) override;

  int plannings_today() const { return plannings_today_; }
  void report(StrategyReport& out) const override { out.plannings_today = plannings_today_; }

 private:
  void load_map(const Environment& env);

  BarrierSet barriers_;
  SearchBox grid_box_;
  LocationEstimate food_;
  std::optional<Plan> plan_;
  int plannings_today_ = 0;
  int loaded_day_ = 0;
};

}  // namespace forage
