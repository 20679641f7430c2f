#include "dfp/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dfp/rng.hpp"

namespace dfp {
namespace {

std::string describe_index(const char* what, int value) {
  return std::string(what) + " " + std::to_string(value) + " out of range";
}

// Advance a mixed-radix counter over the action space; returns false once
// the counter wraps back to all zeros.
bool advance_joint(std::span<int> a, const std::vector<int>& sizes) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (++a[i] < sizes[i]) return true;
    a[i] = 0;
  }
  return false;
}

// Invoke fn(theta, weight) for every state point carrying belief mass.
template <typename Fn>
void for_each_state(const GameSpec& game, const StateBelief& belief, Fn&& fn) {
  if (belief.is_finite()) {
    const auto& pts = game.states().points();
    const auto w = belief.weights();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (w[k] > 0.0) fn(std::span<const double>(pts[k]), w[k]);
    }
  } else {
    fn(std::span<const double>(belief.point()), 1.0);
  }
}

std::uint64_t state_count(const GameSpec& game, const StateBelief& belief) {
  return belief.is_finite() ? static_cast<std::uint64_t>(game.states().points().size()) : 1u;
}

int sample_categorical(RandomStream& rng, std::span<const double> probs) {
  double u = rng.uniform01();
  for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
    u -= probs[k];
    if (u < 0.0) return static_cast<int>(k);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace

ActionSpace::ActionSpace(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.size() < 2) throw ContractError("action space needs at least two agents");
  joint_count_ = 1;
  for (int s : sizes_) {
    if (s < 1) throw ContractError("empty action set");
    const std::uint64_t next = joint_count_ * static_cast<std::uint64_t>(s);
    if (joint_count_ != 0 && next / joint_count_ != static_cast<std::uint64_t>(s)) {
      joint_count_ = std::numeric_limits<std::uint64_t>::max();
      return;
    }
    joint_count_ = next;
  }
}

int ActionSpace::size(int agent) const {
  if (agent < 0 || agent >= agents()) throw ContractError(describe_index("agent", agent));
  return sizes_[static_cast<std::size_t>(agent)];
}

void ActionSpace::check_joint_action(std::span<const int> a) const {
  if (static_cast<int>(a.size()) != agents())
    throw ContractError("joint action has wrong number of agents");
  for (int i = 0; i < agents(); ++i) {
    if (a[i] < 0 || a[i] >= sizes_[static_cast<std::size_t>(i)])
      throw ContractError(describe_index("action", a[i]));
  }
}

MixedStrategy::MixedStrategy(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ContractError("mixed strategy over empty action set");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw ContractError("mixed strategy has a negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ContractError("mixed strategy does not sum to one (|sum-1| > 1e-9)");
}

MixedStrategy MixedStrategy::one_hot(int num_actions, int action) {
  if (num_actions < 1 || action < 0 || action >= num_actions)
    throw ContractError(describe_index("action", action));
  std::vector<double> p(static_cast<std::size_t>(num_actions), 0.0);
  p[static_cast<std::size_t>(action)] = 1.0;
  return MixedStrategy(std::move(p));
}

MixedStrategy MixedStrategy::uniform(int num_actions) {
  if (num_actions < 1) throw ContractError("empty action set");
  std::vector<double> p(static_cast<std::size_t>(num_actions),
                        1.0 / static_cast<double>(num_actions));
  return MixedStrategy(std::move(p));
}

StateSpace StateSpace::finite(std::vector<StatePoint> points) {
  if (points.empty()) throw ContractError("finite state space needs at least one point");
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw ContractError("state points differ in dimension");
  }
  StateSpace s;
  s.finite_ = true;
  s.points_ = std::move(points);
  s.dim_ = static_cast<int>(dim);
  return s;
}

StateSpace StateSpace::parametric(int dim) {
  if (dim < 1) throw ContractError("parametric state space needs positive dimension");
  StateSpace s;
  s.finite_ = false;
  s.dim_ = dim;
  return s;
}

StateBelief StateBelief::finite(std::vector<double> weights) {
  if (weights.empty()) throw ContractError("belief over empty state list");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ContractError("belief has a negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ContractError("belief does not sum to one (|sum-1| > 1e-9)");
  StateBelief b;
  b.finite_ = true;
  b.weights_ = std::move(weights);
  return b;
}

StateBelief StateBelief::point_mass(StatePoint theta) {
  if (theta.empty()) throw ContractError("point-mass belief needs a nonempty point");
  StateBelief b;
  b.finite_ = false;
  b.point_ = std::move(theta);
  return b;
}

std::span<const double> StateBelief::weights() const {
  if (!finite_) throw ContractError("weights() on a point-mass belief");
  return weights_;
}

const StatePoint& StateBelief::point() const {
  if (finite_) throw ContractError("point() on a finite belief");
  return point_;
}

double tv_distance(const StateBelief& p, const StateBelief& q) {
  if (p.is_finite() != q.is_finite())
    throw ContractError("tv_distance across belief representations");
  if (p.is_finite()) {
    const auto wp = p.weights();
    const auto wq = q.weights();
    if (wp.size() != wq.size()) throw ContractError("tv_distance over different state lists");
    double l1 = 0.0;
    for (std::size_t k = 0; k < wp.size(); ++k) l1 += std::abs(wp[k] - wq[k]);
    return 0.5 * l1;
  }
  const auto& a = p.point();
  const auto& b = q.point();
  if (a.size() != b.size()) throw ContractError("tv_distance across parameter dimensions");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) return 1.0;
  }
  return 0.0;
}

GameSpec::GameSpec(ActionSpace actions, StateSpace states, UtilityFn utility)
    : actions_(std::move(actions)), states_(std::move(states)), utility_(std::move(utility)) {
  if (!utility_) throw ContractError("game needs a utility function");
}

void GameSpec::set_enumeration_cap(std::uint64_t cap) {
  if (cap == 0) throw ContractError("enumeration cap must be positive");
  enumeration_cap_ = cap;
}

void check_belief(const GameSpec& game, const StateBelief& belief) {
  if (game.states().is_finite()) {
    if (!belief.is_finite())
      throw ContractError("point-mass belief against a finite state space");
    if (belief.weights().size() != game.states().points().size())
      throw ContractError("belief length does not match state list");
  } else {
    if (belief.is_finite())
      throw ContractError("finite belief against a parametric state space");
    if (static_cast<int>(belief.point().size()) != game.states().dim())
      throw ContractError("belief point has wrong dimension");
  }
}

namespace {

void check_profile(const GameSpec& game, const StrategyProfile& sigma) {
  const auto& space = game.actions();
  if (static_cast<int>(sigma.size()) != space.agents())
    throw ContractError("strategy profile has wrong number of agents");
  for (int i = 0; i < space.agents(); ++i) {
    if (sigma[static_cast<std::size_t>(i)].size() != space.size(i))
      throw ContractError("strategy length does not match action set");
  }
}

double sampled_expected_utility(const GameSpec& game, const StrategyProfile& sigma,
                                const StateBelief& belief) {
  const auto& mc = game.sampler();
  if (!mc || mc->samples == 0)
    throw CapacityError("evaluation exceeds the enumeration cap and no sampler is configured");
  RandomStream rng(mc->seed);
  const int n = game.actions().agents();
  JointAction a(static_cast<std::size_t>(n), 0);
  double acc = 0.0;
  for (std::uint64_t s = 0; s < mc->samples; ++s) {
    for (int i = 0; i < n; ++i)
      a[static_cast<std::size_t>(i)] = sample_categorical(rng, sigma[static_cast<std::size_t>(i)].probs());
    std::span<const double> theta;
    if (belief.is_finite()) {
      const int k = sample_categorical(rng, belief.weights());
      theta = game.states().points()[static_cast<std::size_t>(k)];
    } else {
      theta = belief.point();
    }
    acc += game.utility(a, theta);
  }
  return acc / static_cast<double>(mc->samples);
}

}  // namespace

double expected_utility(const GameSpec& game, const StrategyProfile& sigma,
                        const StateBelief& belief) {
  check_profile(game, sigma);
  check_belief(game, belief);
  // Division form keeps the budget comparison overflow-free.
  if (game.actions().joint_count() > game.enumeration_cap() / state_count(game, belief))
    return sampled_expected_utility(game, sigma, belief);

  const auto& sizes = game.actions().sizes();
  const int n = game.actions().agents();
  JointAction a(static_cast<std::size_t>(n), 0);
  double total = 0.0;
  for_each_state(game, belief, [&](std::span<const double> theta, double w) {
    std::fill(a.begin(), a.end(), 0);
    double acc = 0.0;
    do {
      double p = 1.0;
      for (int i = 0; i < n; ++i) p *= sigma[static_cast<std::size_t>(i)][a[static_cast<std::size_t>(i)]];
      if (p > 0.0) acc += p * game.utility(a, theta);
    } while (advance_joint(a, sizes));
    total += w * acc;
  });
  return total;
}

double pure_profile_utility(const GameSpec& game, std::span<const int> a,
                            const StateBelief& belief) {
  game.actions().check_joint_action(a);
  check_belief(game, belief);
  double total = 0.0;
  for_each_state(game, belief, [&](std::span<const double> theta, double w) {
    total += w * game.utility(a, theta);
  });
  return total;
}

std::vector<double> best_response_values(const GameSpec& game, int agent,
                                         const StrategyProfile& others,
                                         const StateBelief& belief) {
  check_profile(game, others);
  check_belief(game, belief);
  const auto& space = game.actions();
  if (agent < 0 || agent >= space.agents()) throw ContractError(describe_index("agent", agent));
  if (space.joint_count() > game.enumeration_cap() / state_count(game, belief))
    throw CapacityError("best response exceeds the enumeration cap");

  const auto& sizes = space.sizes();
  const int n = space.agents();
  const int own = sizes[static_cast<std::size_t>(agent)];
  std::vector<double> values(static_cast<std::size_t>(own), 0.0);
  JointAction a(static_cast<std::size_t>(n), 0);

  // One sweep over the opponents' joint actions; each carries its product
  // probability to every own action at once.
  std::vector<int> other_sizes = sizes;
  other_sizes[static_cast<std::size_t>(agent)] = 1;
  std::fill(a.begin(), a.end(), 0);
  do {
    double p = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == agent) continue;
      p *= others[static_cast<std::size_t>(j)][a[static_cast<std::size_t>(j)]];
    }
    if (p > 0.0) {
      for (int own_a = 0; own_a < own; ++own_a) {
        a[static_cast<std::size_t>(agent)] = own_a;
        double eu = 0.0;
        for_each_state(game, belief,
                       [&](std::span<const double> theta, double w) { eu += w * game.utility(a, theta); });
        values[static_cast<std::size_t>(own_a)] += p * eu;
      }
      a[static_cast<std::size_t>(agent)] = 0;
    }
  } while (advance_joint(a, other_sizes));
  return values;
}

int best_response(const GameSpec& game, int agent, const StrategyProfile& others,
                  const StateBelief& belief) {
  const std::vector<double> values = best_response_values(game, agent, others, belief);
  int best = 0;
  for (int a = 1; a < static_cast<int>(values.size()); ++a) {
    if (values[static_cast<std::size_t>(a)] > values[static_cast<std::size_t>(best)]) best = a;
  }
  return best;
}

bool is_pure_nash(const GameSpec& game, const JointAction& a, const StateBelief& belief) {
  const double base = pure_profile_utility(game, a, belief);
  JointAction dev = a;
  const int n = game.actions().agents();
  for (int i = 0; i < n; ++i) {
    const int original = a[static_cast<std::size_t>(i)];
    for (int alt = 0; alt < game.actions().size(i); ++alt) {
      if (alt == original) continue;
      dev[static_cast<std::size_t>(i)] = alt;
      if (pure_profile_utility(game, dev, belief) > base + 1e-12) return false;
    }
    dev[static_cast<std::size_t>(i)] = original;
  }
  return true;
}

double strategy_distance(const StrategyProfile& f, const StrategyProfile& g) {
  if (f.size() != g.size()) throw ContractError("profiles differ in number of agents");
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].size() != g[i].size()) throw ContractError("profiles differ in action counts");
    double sq = 0.0;
    for (int a = 0; a < f[i].size(); ++a) {
      const double d = f[i][a] - g[i][a];
      sq += d * d;
    }
    total += std::sqrt(sq);
  }
  return total;
}

}  // namespace dfp
