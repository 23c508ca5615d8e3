#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "forage/agent.hpp"
#include "forage/predictor.hpp"

namespace forage {

/// What was seen at a location, and when.
struct EpisodicMemory {
  LocationEstimate location;
  CellState object = CellState::Empty;
  int day = 1;
  int tick = 0;
};

/// Generalization class of a memory: its age in days and the object seen.
struct MemoryType {
  int age = 0;
  CellState object = CellState::Empty;
  constexpr auto operator<=>(const MemoryType&) const = default;
};

constexpr MemoryType memory_type_of(const EpisodicMemory& mem, int today) {
  return {today - mem.day, mem.object};
}

/// Location-keyed memories, at most one per day per location. Memories
/// older than the horizon are ignored on read and dropped by prune().
class EpisodicStore {
 public:
  explicit EpisodicStore(int horizon) : horizon_(horizon) {}

  /// Stores today's observation, overwriting an earlier one from the same day.
  void record(LocationEstimate at, CellState object, int day, int tick);

  /// Memories of `at` with (today - day) <= horizon, oldest first.
  std::vector<EpisodicMemory> retained(LocationEstimate at, int today) const;

  template <typename Fn>
  void for_each_location(int today, Fn&& fn) const {
    for (const auto& [loc, list] : memories_) {
      std::vector<EpisodicMemory> kept;
      for (const EpisodicMemory& m : list)
        if (today - m.day <= horizon_) kept.push_back(m);
      if (!kept.empty()) fn(loc, kept);
    }
  }

  void prune(int today);
  /// Count of memories within the horizon as of `today`.
  std::size_t size(int today) const;
  std::size_t locations() const { return memories_.size(); }
  int horizon() const { return horizon_; }

 private:
  int horizon_;
  std::map<LocationEstimate, std::vector<EpisodicMemory>> memories_;
};

/// Running −log-loss total for one memory type.
struct LossStat {
  double sum = 0.0;
  long count = 0;
  double mean() const { return count > 0 ? sum / static_cast<double>(count) : 0.0; }
};

/// Predictions below this probability are floored when scoring log-loss.
inline constexpr double kLogLossFloor = 1e-4;

/// Per-memory-type predictors kept at two tiers. The daily tier is only
/// touched by end_day(); during the day, the within-day clones are used
/// and updated.
class PredictorBank {
 public:
  using Table = std::map<MemoryType, WindowPredictor>;

  PredictorBank(std::size_t within_day_window = 10, std::size_t daily_window = 5)
      : within_window_(within_day_window), daily_window_(daily_window) {}

  /// Clones every daily predictor into a fresh within-day bank.
  void begin_day();
  /// Feeds each within-day prediction into its daily predictor (allocating
  /// on first use) and discards the within-day bank.
  void end_day();

  /// The within-day prediction, or the fresh prior when none exists yet.
  Distribution predict(MemoryType type) const;

  /// Scores the current within-day prediction against `observed`, then
  /// updates that predictor with the one-hot observation. Returns the
  /// log-loss increment.
  double score_and_update(MemoryType type, CellState observed);

  std::optional<double> mean_logloss(MemoryType type) const;

  const Table& daily() const { return daily_; }
  const Table& within_day() const { return within_; }
  const std::map<MemoryType, LossStat>& losses() const { return loss_; }

 private:
  std::size_t within_window_;
  std::size_t daily_window_;
  Table daily_;
  Table within_;
  std::map<MemoryType, LossStat> loss_;
};

}  // namespace forage
