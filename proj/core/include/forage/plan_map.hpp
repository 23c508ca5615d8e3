#pragma once

#include <optional>
#include <unordered_map>

#include "forage/agent.hpp"

namespace forage {

/// Location-estimate → action. The executable form shared by remembered
/// paths, computed plans and the oracle. Later writes overwrite.
class PlanMap {
 public:
  void set(LocationEstimate at, Action a) { entries_[at] = a; }
  std::optional<Action> lookup(LocationEstimate at) const {
    const auto it = entries_.find(at);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(LocationEstimate at) const { return entries_.contains(at); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  void clear() { entries_.clear(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool operator==(const PlanMap&) const = default;

 private:
  std::unordered_map<LocationEstimate, Action, LocationEstimateHash> entries_;
};

/// Follows `plan` from `start` until reaching a location with no entry or
/// exceeding `max_steps`. Returns the visited locations including start and
/// the final one; stops early (without repeating) if a location recurs.
std::vector<LocationEstimate> walk_plan(const PlanMap& plan, LocationEstimate start,
                                        std::size_t max_steps);

}  // namespace forage
