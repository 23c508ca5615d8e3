#include "forage/least_visited.hpp"

#include <limits>

#include "forage/sampling.hpp"

namespace forage {

std::optional<Action> least_visited_select(const StrategyContext& ctx, const VisitCounts& counts,
                                           Rng& rng) {
  ActionSet best;
  int best_count = std::numeric_limits<int>::max();
  for (Action a : ctx.sense.legal.to_vector()) {
    const auto it = counts.find(integrate(ctx.estimate, a));
    const int c = it == counts.end() ? 0 : it->second;
    if (c < best_count) {
      best_count = c;
      best = ActionSet{a};
    } else if (c == best_count) {
      best.insert(a);
    }
  }
  if (best.empty()) return std::nullopt;
  return pick_uniform(best, rng);
}

std::optional<Action> LeastVisitedStrategy::select_action(const StrategyContext& ctx, Rng& rng) {
  return least_visited_select(ctx, counts_, rng);
}

void LeastVisitedStrategy::new_day(const StrategyContext&) { counts_.clear(); }

void LeastVisitedStrategy::pre_action(const StrategyContext& ctx) { ++counts_[ctx.estimate]; }

void LeastVisitedStrategy::report(StrategyReport& out) const { out.visited_cells = counts_.size(); }

long LeastVisitedStrategy::total_visits() const {
  long total = 0;
  for (const auto& [loc, c] : counts_) total += c;
  return total;
}

}  // namespace forage
