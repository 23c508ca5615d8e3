#pragma once

#include <cassert>
#include <random>
#include <span>

#include "forage/grid_env.hpp"

namespace forage {

template <typename T>
const T& pick_uniform(std::span<const T> items, Rng& rng) {
  assert(!items.empty());
  std::uniform_int_distribution<std::size_t> pick(0, items.size() - 1);
  return items[pick(rng)];
}

inline Action pick_uniform(ActionSet set, Rng& rng) {
  const std::vector<Action> v = set.to_vector();
  return pick_uniform<Action>(v, rng);
}

}  // namespace forage
