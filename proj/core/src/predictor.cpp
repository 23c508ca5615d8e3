#include "forage/predictor.hpp"

#include <stdexcept>

namespace forage {

bool Distribution::valid(double tolerance) const {
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) return false;
    sum += p;
  }
  return sum > 1.0 - tolerance && sum < 1.0 + tolerance;
}

CellState sample(const Distribution& d, Rng& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u < d.probs[0]) return CellState::Empty;
  if (u < d.probs[0] + d.probs[1]) return CellState::Barrier;
  // Guards against rounding leaving a sliver past the last component.
  if (d.probs[2] > 0.0) return CellState::Food;
  return d.probs[1] > 0.0 ? CellState::Barrier : CellState::Empty;
}

WindowPredictor::WindowPredictor(CellState object, std::size_t capacity)
    : object_(object), capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("predictor window capacity must be positive");
}

void WindowPredictor::update(const Distribution& obs) {
  if (window_.size() == capacity_) window_.pop_front();
  window_.push_back(obs);
}

Distribution WindowPredictor::predict() const {
  if (window_.empty()) return Distribution::one_hot(object_);
  std::array<double, 3> sums{0.0, 0.0, 0.0};
  for (const Distribution& d : window_)
    for (std::size_t i = 0; i < 3; ++i) sums[i] += d.probs[i];
  const double total = sums[0] + sums[1] + sums[2];
  Distribution out;
  for (std::size_t i = 0; i < 3; ++i) out.probs[i] = sums[i] / total;
  return out;
}

WindowPredictor WindowPredictor::clone_with_capacity(std::size_t capacity) const {
  WindowPredictor out(object_, capacity);
  const std::size_t skip = window_.size() > capacity ? window_.size() - capacity : 0;
  for (std::size_t i = skip; i < window_.size(); ++i) out.window_.push_back(window_[i]);
  return out;
}

}  // namespace forage
