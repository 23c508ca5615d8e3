#include "forage/grid_env.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace forage {

std::string_view to_string(Action a) {
  switch (a) {
    case Action::Up: return "up";
    case Action::Down: return "down";
    case Action::Left: return "left";
    case Action::Right: return "right";
  }
  return "?";
}

std::string_view to_string(CellState s) {
  switch (s) {
    case CellState::Empty: return "empty";
    case CellState::Barrier: return "barrier";
    case CellState::Food: return "food";
  }
  return "?";
}

std::vector<Action> ActionSet::to_vector() const {
  std::vector<Action> out;
  out.reserve(4);
  for (Action a : kAllActions)
    if (contains(a)) out.push_back(a);
  return out;
}

Environment::Environment(int n, Position home, Position food, std::vector<Position> barriers,
                         std::vector<Position> reserved, int day)
    : n_(n), home_(home), food_(food), day_(day), barriers_(std::move(barriers)),
      reserved_(std::move(reserved)) {
  if (n_ <= 0) throw std::invalid_argument("grid size must be positive");
  if (!in_bounds(home_) || !in_bounds(food_))
    throw std::invalid_argument("home and food must lie inside the grid");
  if (home_ == food_) throw std::invalid_argument("home and food must differ");
  for (Position p : {home_, food_})
    if (!is_reserved(p)) reserved_.push_back(p);
  for (Position p : reserved_)
    if (!in_bounds(p)) throw std::invalid_argument("reserved cell outside the grid");
  rebuild_mask();
  for (Position p : reserved_)
    if (mask_[index(p)] != 0) throw std::invalid_argument("reserved cell holds a barrier");
}

void Environment::rebuild_mask() {
  mask_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
  for (Position b : barriers_) {
    if (!in_bounds(b)) throw std::invalid_argument("barrier outside the grid");
    if (mask_[index(b)] != 0) throw std::invalid_argument("duplicate barrier");
    mask_[index(b)] = 1;
  }
}

bool Environment::is_reserved(Position p) const {
  return std::find(reserved_.begin(), reserved_.end(), p) != reserved_.end();
}

CellState Environment::state_at(Position p) const {
  if (is_barrier(p)) return CellState::Barrier;
  if (p == food_) return CellState::Food;
  return CellState::Empty;
}

void Environment::set_food(Position p) {
  if (!in_bounds(p) || is_barrier(p)) throw std::invalid_argument("food must go on a free cell");
  if (p == home_) throw std::invalid_argument("food cannot be placed at home");
  food_ = p;
  if (!is_reserved(p)) reserved_.push_back(p);
}

namespace {

// Distances from `from` to every cell; -1 when unreachable.
std::vector<int> bfs_distances(const Environment& env, Position from) {
  const int n = env.size();
  std::vector<int> dist(static_cast<std::size_t>(n * n), -1);
  if (env.is_barrier(from)) return dist;
  std::queue<Position> frontier;
  dist[static_cast<std::size_t>(from.y * n + from.x)] = 0;
  frontier.push(from);
  while (!frontier.empty()) {
    const Position cur = frontier.front();
    frontier.pop();
    const int d = dist[static_cast<std::size_t>(cur.y * n + cur.x)];
    for (Action a : kAllActions) {
      const Position nxt = step(cur, a);
      if (env.is_barrier(nxt)) continue;
      int& slot = dist[static_cast<std::size_t>(nxt.y * n + nxt.x)];
      if (slot >= 0) continue;
      slot = d + 1;
      frontier.push(nxt);
    }
  }
  return dist;
}

}  // namespace

bool Environment::targets_reachable() const {
  const std::vector<int> dist = bfs_distances(*this, home_);
  return std::all_of(reserved_.begin(), reserved_.end(),
                     [&](Position p) { return dist[index(p)] >= 0; });
}

std::string Environment::to_text() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(n_ * (n_ + 1)));
  for (int y = 0; y < n_; ++y) {
    for (int x = 0; x < n_; ++x) {
      const Position p{x, y};
      char c = '.';
      if (p == home_) c = 'H';
      else if (p == food_) c = 'F';
      else if (is_barrier(p)) c = '#';
      out.push_back(c);
    }
    out.push_back('\n');
  }
  return out;
}

Environment Environment::from_text(std::string_view text) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) rows.push_back(line);
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw std::invalid_argument("empty grid text");
  std::optional<Position> home, food;
  std::vector<Position> barriers;
  for (int y = 0; y < n; ++y) {
    if (static_cast<int>(rows[static_cast<std::size_t>(y)].size()) != n)
      throw std::invalid_argument("grid text must be square");
    for (int x = 0; x < n; ++x) {
      switch (rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)]) {
        case '.': break;
        case '#': barriers.push_back({x, y}); break;
        case 'H': home = Position{x, y}; break;
        case 'F': food = Position{x, y}; break;
        default: throw std::invalid_argument("unexpected character in grid text");
      }
    }
  }
  if (!home || !food) throw std::invalid_argument("grid text needs one 'H' and one 'F'");
  return Environment(n, *home, *food, std::move(barriers));
}

int barrier_count_for(int n, double proportion) {
  return static_cast<int>(std::lround(proportion * static_cast<double>(n) * n));
}

Environment generate(const GridSpec& spec, Rng& rng) {
  // Validates home/food/reserved before any sampling.
  const Environment blank(spec.n, spec.home, spec.food, {}, spec.reserved);
  const int count = barrier_count_for(spec.n, spec.barrier_proportion);

  std::vector<Position> candidates;
  for (int y = 0; y < spec.n; ++y)
    for (int x = 0; x < spec.n; ++x)
      if (!blank.is_reserved({x, y})) candidates.push_back({x, y});

  if (count < 0 || count > static_cast<int>(candidates.size()))
    throw GenerationFailed("barrier count exceeds the free cells of the grid");

  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::vector<Position> barriers(candidates.begin(), candidates.begin() + count);
    Environment env(spec.n, spec.home, spec.food, std::move(barriers),
                    std::vector<Position>(blank.reserved().begin(), blank.reserved().end()));
    if (env.targets_reachable()) return env;
  }
  throw GenerationFailed("no barrier layout with a path from home to food after " +
                         std::to_string(kMaxGenerationAttempts) + " attempts");
}

Environment daily_change(const Environment& env, double change_rate, Rng& rng) {
  const std::vector<Position> old(env.barriers().begin(), env.barriers().end());
  const std::vector<Position> reserved(env.reserved().begin(), env.reserved().end());
  const int k = static_cast<int>(std::lround(change_rate * static_cast<double>(old.size())));

  if (k == 0) {
    Environment next = env;
    next.set_day(env.day() + 1);
    return next;
  }

  std::vector<Position> empties;
  const int n = env.size();
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const Position p{x, y};
      if (!env.is_barrier(p) && !env.is_reserved(p)) empties.push_back(p);
    }
  if (k > static_cast<int>(empties.size()))
    throw GenerationFailed("not enough free cells to relocate barriers");

  std::vector<std::size_t> order(old.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    std::shuffle(order.begin(), order.end(), rng);
    std::shuffle(empties.begin(), empties.end(), rng);
    std::vector<bool> removed(old.size(), false);
    for (int i = 0; i < k; ++i) removed[order[static_cast<std::size_t>(i)]] = true;

    std::vector<Position> barriers;
    barriers.reserve(old.size());
    for (std::size_t i = 0; i < old.size(); ++i)
      if (!removed[i]) barriers.push_back(old[i]);
    barriers.insert(barriers.end(), empties.begin(), empties.begin() + k);

    Environment next(n, env.home(), env.food(), std::move(barriers), reserved, env.day() + 1);
    if (next.targets_reachable()) return next;
  }
  throw GenerationFailed("daily change could not keep food reachable after " +
                         std::to_string(kMaxGenerationAttempts) + " attempts");
}

Position execute_action(const Environment& env, Position pos, Action action,
                        const NoiseParams& noise, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto land = [&](Position target) { return env.is_barrier(target) ? pos : target; };

  if (noise.p <= 0.0 || unit(rng) >= noise.p) return land(step(pos, action));

  if (unit(rng) < noise.p2) {
    if (std::bernoulli_distribution(0.5)(rng)) return pos;
    const Position mid = step(pos, action);
    if (env.is_barrier(mid)) return pos;
    return land(step(mid, action));
  }
  std::uniform_int_distribution<int> pick(0, 3);
  return land(step(pos, kAllActions[static_cast<std::size_t>(pick(rng))]));
}

SenseData sense(const Environment& env, Position pos) {
  SenseData out;
  for (Action a : kAllActions) {
    const CellState s = env.state_at(step(pos, a));
    out.adjacent[static_cast<std::size_t>(a)] = s;
    if (s != CellState::Barrier) out.legal.insert(a);
  }
  const Position food = env.food();
  if (food.x > pos.x) out.greedy.insert(Action::Right);
  if (food.x < pos.x) out.greedy.insert(Action::Left);
  if (food.y > pos.y) out.greedy.insert(Action::Down);
  if (food.y < pos.y) out.greedy.insert(Action::Up);
  return out;
}

bool path_exists(const Environment& env, Position from, Position to) {
  return shortest_path_len(env, from, to).has_value();
}

std::optional<int> shortest_path_len(const Environment& env, Position from, Position to) {
  if (env.is_barrier(from) || env.is_barrier(to)) return std::nullopt;
  const std::vector<int> dist = bfs_distances(env, from);
  const int d = dist[static_cast<std::size_t>(to.y * env.size() + to.x)];
  if (d < 0) return std::nullopt;
  return d;
}

}  // namespace forage
