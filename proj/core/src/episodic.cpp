#include "forage/episodic.hpp"

#include <algorithm>
#include <cmath>

namespace forage {

void EpisodicStore::record(LocationEstimate at, CellState object, int day, int tick) {
  auto& list = memories_[at];
  for (EpisodicMemory& m : list) {
    if (m.day == day) {
      m.object = object;
      m.tick = tick;
      return;
    }
  }
  list.push_back({at, object, day, tick});
}

std::vector<EpisodicMemory> EpisodicStore::retained(LocationEstimate at, int today) const {
  std::vector<EpisodicMemory> out;
  const auto it = memories_.find(at);
  if (it == memories_.end()) return out;
  for (const EpisodicMemory& m : it->second)
    if (today - m.day <= horizon_) out.push_back(m);
  return out;
}

void EpisodicStore::prune(int today) {
  for (auto it = memories_.begin(); it != memories_.end();) {
    auto& list = it->second;
    std::erase_if(list, [&](const EpisodicMemory& m) { return today - m.day > horizon_; });
    if (list.empty()) it = memories_.erase(it);
    else ++it;
  }
}

std::size_t EpisodicStore::size(int today) const {
  std::size_t n = 0;
  for (const auto& [loc, list] : memories_)
    for (const EpisodicMemory& m : list)
      if (today - m.day <= horizon_) ++n;
  return n;
}

void PredictorBank::begin_day() {
  within_.clear();
  for (const auto& [type, pred] : daily_)
    within_.emplace(type, pred.clone_with_capacity(within_window_));
}

void PredictorBank::end_day() {
  for (const auto& [type, pred] : within_) {
    auto it = daily_.find(type);
    if (it == daily_.end()) it = daily_.emplace(type, WindowPredictor(type.object, daily_window_)).first;
    it->second.update(pred.predict());
  }
  within_.clear();
}

Distribution PredictorBank::predict(MemoryType type) const {
  const auto it = within_.find(type);
  if (it == within_.end()) return Distribution::one_hot(type.object);
  return it->second.predict();
}

double PredictorBank::score_and_update(MemoryType type, CellState observed) {
  auto it = within_.find(type);
  if (it == within_.end()) it = within_.emplace(type, WindowPredictor(type.object, within_window_)).first;
  const double p = std::max(it->second.predict()[observed], kLogLossFloor);
  const double loss = -std::log(p);
  LossStat& stat = loss_[type];
  stat.sum += loss;
  ++stat.count;
  it->second.update(Distribution::one_hot(observed));
  return loss;
}

std::optional<double> PredictorBank::mean_logloss(MemoryType type) const {
  const auto it = loss_.find(type);
  if (it == loss_.end() || it->second.count == 0) return std::nullopt;
  return it->second.mean();
}

}  // namespace forage
