#include "forage/planner.hpp"

#include <algorithm>
#include <queue>
#include <tuple>
#include <unordered_map>

namespace forage {

SearchBox SearchBox::spanning(LocationEstimate a, LocationEstimate b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
}

void SearchBox::include(LocationEstimate e) {
  min_x = std::min(min_x, e.x);
  min_y = std::min(min_y, e.y);
  max_x = std::max(max_x, e.x);
  max_y = std::max(max_y, e.y);
}

namespace {

struct Node {
  int f;
  int h;
  long order;
  LocationEstimate at;
};

// Lowest f first; among equal f prefer deeper nodes (smaller h), then FIFO.
struct NodeAfter {
  bool operator()(const Node& a, const Node& b) const {
    return std::tie(a.f, a.h, a.order) > std::tie(b.f, b.h, b.order);
  }
};

struct Visit {
  int g;
  Action via;
  bool closed;
};

}  // namespace

std::optional<Plan> astar(LocationEstimate start, LocationEstimate goal,
                          const BarrierSet& barriers, int max_len, const SearchBox& box) {
  const auto blocked = [&](LocationEstimate e) { return !box.contains(e) || barriers.contains(e); };
  if (blocked(start) || blocked(goal)) return std::nullopt;

  if (start == goal) {
    Plan p;
    p.goal = goal;
    p.path = {start};
    return p;
  }
  if (manhattan(start, goal) > max_len) return std::nullopt;

  std::unordered_map<LocationEstimate, Visit, LocationEstimateHash> seen;
  std::priority_queue<Node, std::vector<Node>, NodeAfter> open;
  long order = 0;
  const int h0 = manhattan(start, goal);
  seen[start] = {0, Action::Up, false};
  open.push({h0, h0, order++, start});

  bool found = false;
  while (!open.empty()) {
    const Node node = open.top();
    open.pop();
    Visit& v = seen[node.at];
    if (v.closed) continue;
    v.closed = true;
    if (node.at == goal) {
      found = true;
      break;
    }
    const int g = v.g;
    for (Action a : kAllActions) {
      const LocationEstimate next = integrate(node.at, a);
      if (blocked(next)) continue;
      const int g2 = g + 1;
      const int h = manhattan(next, goal);
      if (g2 + h > max_len) continue;
      auto [it, inserted] = seen.try_emplace(next, Visit{g2, a, false});
      if (!inserted) {
        if (it->second.closed || it->second.g <= g2) continue;
        it->second = {g2, a, false};
      }
      open.push({g2 + h, h, order++, next});
    }
  }
  if (!found) return std::nullopt;

  Plan plan;
  plan.goal = goal;
  std::vector<LocationEstimate> reversed{goal};
  LocationEstimate cur = goal;
  while (cur != start) {
    const Action via = seen.at(cur).via;
    cur = integrate(cur, reverse(via));
    plan.steps.set(cur, via);
    reversed.push_back(cur);
  }
  plan.path.assign(reversed.rbegin(), reversed.rend());
  return plan;
}

}  // namespace forage
