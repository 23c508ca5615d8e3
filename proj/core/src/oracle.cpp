#include "forage/oracle.hpp"

#include <stdexcept>

namespace forage {

void OracleStrategy::load_map(const Environment& env) {
  const Position home = env.home();
  barriers_.clear();
  for (Position b : env.barriers()) barriers_.insert(relative_to(b, home));
  const int n = env.size();
  grid_box_ = {-home.x, -home.y, n - 1 - home.x, n - 1 - home.y};
  food_ = relative_to(env.food(), home);
  loaded_day_ = env.day();
  plan_.reset();
}

void OracleStrategy::new_day(const StrategyContext& ctx) {
  plannings_today_ = 0;
  if (ctx.truth.env) load_map(*ctx.truth.env);
}

std::optional<Action> OracleStrategy::select_action(const StrategyContext& ctx, Rng&) {
  if (!ctx.truth.env) throw std::logic_error("oracle strategy requires ground truth");
  const Environment& env = *ctx.truth.env;
  if (loaded_day_ != env.day() || food_ != relative_to(env.food(), env.home())) load_map(env);

  const LocationEstimate here = relative_to(ctx.truth.position, env.home());
  if (!plan_ || !plan_->steps.contains(here)) {
    const int unbounded = env.size() * env.size();
    plan_ = astar(here, food_, barriers_, unbounded, grid_box_);
    ++plannings_today_;
    if (!plan_) return std::nullopt;
  }
  return plan_->steps.lookup(here);
}

}  // namespace forage
