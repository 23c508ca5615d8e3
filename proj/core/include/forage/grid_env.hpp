#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace forage {

/// The single random source type used throughout the simulator. Every
/// stochastic operation takes one by reference; nothing draws from a global.
using Rng = std::mt19937_64;

enum class CellState : std::uint8_t { Empty = 0, Barrier = 1, Food = 2 };

/// Up decreases y and Down increases y (screen convention), in both the
/// absolute grid frame and the agent's path-integration frame.
enum class Action : std::uint8_t { Up = 0, Down = 1, Left = 2, Right = 3 };

inline constexpr std::array<Action, 4> kAllActions{Action::Up, Action::Down,
                                                   Action::Left, Action::Right};

struct Offset {
  int dx = 0;
  int dy = 0;
};

constexpr Offset delta(Action a) {
  switch (a) {
    case Action::Up: return {0, -1};
    case Action::Down: return {0, 1};
    case Action::Left: return {-1, 0};
    case Action::Right: return {1, 0};
  }
  return {0, 0};
}

constexpr Action reverse(Action a) {
  switch (a) {
    case Action::Up: return Action::Down;
    case Action::Down: return Action::Up;
    case Action::Left: return Action::Right;
    case Action::Right: return Action::Left;
  }
  return a;
}

std::string_view to_string(Action a);
std::string_view to_string(CellState s);

/// Small fixed-order set of actions (bitmask over the four moves).
class ActionSet {
 public:
  constexpr ActionSet() = default;
  constexpr ActionSet(std::initializer_list<Action> actions) {
    for (Action a : actions) insert(a);
  }

  constexpr void insert(Action a) { bits_ |= bit(a); }
  constexpr void erase(Action a) { bits_ &= static_cast<std::uint8_t>(~bit(a)); }
  constexpr bool contains(Action a) const { return (bits_ & bit(a)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const {
    int n = 0;
    for (Action a : kAllActions) n += contains(a) ? 1 : 0;
    return n;
  }
  constexpr ActionSet intersect(ActionSet other) const {
    ActionSet out;
    out.bits_ = static_cast<std::uint8_t>(bits_ & other.bits_);
    return out;
  }
  /// Members in Up, Down, Left, Right order.
  std::vector<Action> to_vector() const;

  constexpr bool operator==(const ActionSet&) const = default;

 private:
  static constexpr std::uint8_t bit(Action a) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(a));
  }
  std::uint8_t bits_ = 0;
};

/// Absolute cell coordinates. Environment-held positions are always in-grid.
struct Position {
  int x = 0;
  int y = 0;
  constexpr auto operator<=>(const Position&) const = default;
};

constexpr Position step(Position p, Action a, int times = 1) {
  const Offset d = delta(a);
  return {p.x + d.dx * times, p.y + d.dy * times};
}

constexpr int manhattan(Position a, Position b) {
  return (a.x > b.x ? a.x - b.x : b.x - a.x) + (a.y > b.y ? a.y - b.y : b.y - a.y);
}

/// Motion noise. With probability `p` the executed move is replaced by a
/// noisy outcome; a fraction `p2` of those pick uniformly between staying and
/// moving two cells forward, the rest pick uniformly among the 4 neighbors.
struct NoiseParams {
  double p = 0.0;
  double p2 = 0.5;
};

class GenerationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SenseData {
  /// Indexed by Action. Off-grid neighbors read as Barrier.
  std::array<CellState, 4> adjacent{};
  ActionSet legal;
  /// Actions that reduce Manhattan distance to the food (at most 2).
  ActionSet greedy;

  CellState at(Action a) const { return adjacent[static_cast<std::size_t>(a)]; }
};

/// Ground truth for one grid. The agent never sees this object directly.
///
/// Reserved cells (always including home and the current food) can never
/// hold a barrier and must stay reachable from home.
class Environment {
 public:
  Environment(int n, Position home, Position food, std::vector<Position> barriers,
              std::vector<Position> reserved = {}, int day = 1);

  int size() const { return n_; }
  Position home() const { return home_; }
  Position food() const { return food_; }
  int day() const { return day_; }
  std::span<const Position> barriers() const { return barriers_; }
  std::span<const Position> reserved() const { return reserved_; }

  bool in_bounds(Position p) const { return p.x >= 0 && p.y >= 0 && p.x < n_ && p.y < n_; }
  bool is_barrier(Position p) const { return !in_bounds(p) || mask_[index(p)] != 0; }
  bool is_reserved(Position p) const;
  /// Off-grid reads as Barrier.
  CellState state_at(Position p) const;

  /// Moves the food. The new cell becomes reserved.
  void set_food(Position p);
  void set_day(int day) { day_ = day; }

  /// Every reserved cell is reachable from home.
  bool targets_reachable() const;

  /// One row per line; '.' empty, '#' barrier, 'F' food, 'H' home.
  std::string to_text() const;
  /// Inverse of to_text. Throws std::invalid_argument on malformed input.
  static Environment from_text(std::string_view text);

 private:
  std::size_t index(Position p) const { return static_cast<std::size_t>(p.y * n_ + p.x); }
  void rebuild_mask();

  int n_ = 0;
  Position home_;
  Position food_;
  int day_ = 1;
  std::vector<Position> barriers_;
  std::vector<Position> reserved_;
  std::vector<std::uint8_t> mask_;
};

/// round(proportion * n^2)
int barrier_count_for(int n, double proportion);

struct GridSpec {
  int n = 15;
  double barrier_proportion = 0.3;
  Position home{7, 7};
  Position food{14, 14};
  /// Additional cells that must stay barrier-free and reachable (e.g. the
  /// corner list of a food relocation pattern).
  std::vector<Position> reserved;
};

inline constexpr int kMaxGenerationAttempts = 10'000;

/// Uniform barrier placement over non-reserved cells, rejection-resampled
/// until all reserved cells are reachable from home.
Environment generate(const GridSpec& spec, Rng& rng);

/// Swaps round(change_rate * |barriers|) barriers for new ones on cells that
/// were empty (and unreserved) before the change. Increments the day.
Environment daily_change(const Environment& env, double change_rate, Rng& rng);

/// Never returns a barrier or off-grid cell.
Position execute_action(const Environment& env, Position pos, Action action,
                        const NoiseParams& noise, Rng& rng);

SenseData sense(const Environment& env, Position pos);

bool path_exists(const Environment& env, Position from, Position to);
/// 4-connected BFS over non-barrier cells.
std::optional<int> shortest_path_len(const Environment& env, Position from, Position to);

}  // namespace forage
