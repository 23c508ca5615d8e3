#pragma once

#include <array>
#include <cstddef>
#include <deque>

#include "forage/grid_env.hpp"

namespace forage {

/// Probability over (Empty, Barrier, Food), in that index order.
struct Distribution {
  std::array<double, 3> probs{1.0, 0.0, 0.0};

  static Distribution one_hot(CellState s) {
    Distribution d;
    d.probs = {0.0, 0.0, 0.0};
    d.probs[static_cast<std::size_t>(s)] = 1.0;
    return d;
  }

  double operator[](CellState s) const { return probs[static_cast<std::size_t>(s)]; }

  /// Non-negative components summing to 1 within `tolerance`.
  bool valid(double tolerance = 1e-9) const;

  bool operator==(const Distribution&) const = default;
};

/// Draws an outcome from `d`.
CellState sample(const Distribution& d, Rng& rng);

/// Fixed-window moving average over distributions. An empty window
/// predicts its own object with probability 1.
class WindowPredictor {
 public:
  WindowPredictor(CellState object, std::size_t capacity);

  /// Appends `obs`, dropping the oldest entry when at capacity.
  void update(const Distribution& obs);
  Distribution predict() const;

  /// Copy holding the most recent `capacity` entries of this window.
  WindowPredictor clone_with_capacity(std::size_t capacity) const;

  CellState object() const { return object_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return window_.size(); }

  bool operator==(const WindowPredictor&) const = default;

 private:
  CellState object_;
  std::size_t capacity_;
  std::deque<Distribution> window_;
};

}  // namespace forage
