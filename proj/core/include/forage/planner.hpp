#pragma once

#include <optional>
#include <unordered_set>
#include <vector>

#include "forage/plan_map.hpp"

namespace forage {

using BarrierSet = std::unordered_set<LocationEstimate, LocationEstimateHash>;

/// Inclusive rectangle bounding a search. Cells outside are impassable.
struct SearchBox {
  int min_x = 0;
  int min_y = 0;
  int max_x = 0;
  int max_y = 0;

  bool contains(LocationEstimate e) const {
    return e.x >= min_x && e.x <= max_x && e.y >= min_y && e.y <= max_y;
  }
  /// Smallest box holding both points.
  static SearchBox spanning(LocationEstimate a, LocationEstimate b);
  void include(LocationEstimate e);
  SearchBox grown(int margin) const {
    return {min_x - margin, min_y - margin, max_x + margin, max_y + margin};
  }
  int perimeter() const { return 2 * ((max_x - min_x + 1) + (max_y - min_y + 1)); }
};

struct Plan {
  PlanMap steps;
  LocationEstimate goal;
  /// start, ..., goal
  std::vector<LocationEstimate> path;
  int length() const { return static_cast<int>(path.size()) - 1; }
};

/// 4-connected A* with the Manhattan heuristic. Cells in `barriers` or
/// outside `box` are blocked; everything else is passable. Nodes whose
/// f = g + h exceeds `max_len` are never expanded. Returns nullopt when the
/// goal is unreachable within those limits. start == goal yields an empty
/// plan.
std::optional<Plan> astar(LocationEstimate start, LocationEstimate goal,
                          const BarrierSet& barriers, int max_len, const SearchBox& box);

}  // namespace forage
