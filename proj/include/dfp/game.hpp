#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfp/errors.hpp"

namespace dfp {

// A point in a continuous parameter space (e.g. flattened target
// coordinates).  Finite state spaces enumerate a list of these.
using StatePoint = std::vector<double>;

// One action index per agent.
using JointAction = std::vector<int>;

// Per-agent finite action sets.  Multiagent by definition: at least two
// agents, every action set nonempty.
class ActionSpace {
 public:
  explicit ActionSpace(std::vector<int> sizes);

  int agents() const { return static_cast<int>(sizes_.size()); }
  int size(int agent) const;
  const std::vector<int>& sizes() const { return sizes_; }

  // Number of joint actions, saturated at max() on overflow.
  std::uint64_t joint_count() const { return joint_count_; }

  // Throws ContractError unless `a` has one in-range index per agent.
  void check_joint_action(std::span<const int> a) const;

 private:
  std::vector<int> sizes_;
  std::uint64_t joint_count_ = 0;
};

// Probability vector over one agent's actions.  Entries are validated
// nonnegative and summing to one within 1e-9 at construction.
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy one_hot(int num_actions, int action);
  static MixedStrategy uniform(int num_actions);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int a) const { return probs_[static_cast<std::size_t>(a)]; }
  std::span<const double> probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// One mixed strategy per agent.
using StrategyProfile = std::vector<MixedStrategy>;

// Either a finite list of enumerated parameter points or a continuous
// parameter space of fixed dimension.
class StateSpace {
 public:
  static StateSpace finite(std::vector<StatePoint> points);
  static StateSpace parametric(int dim);

  bool is_finite() const { return finite_; }
  const std::vector<StatePoint>& points() const { return points_; }
  int dim() const { return dim_; }

 private:
  StateSpace() = default;
  bool finite_ = false;
  std::vector<StatePoint> points_;  // finite only
  int dim_ = 0;                     // parameter dimension
};

// Belief over the state: a weight vector over a finite space's points, or a
// point mass in a parametric space.  The two representations never coerce
// into each other; mixing them in a binary operation is a contract error.
class StateBelief {
 public:
  static StateBelief finite(std::vector<double> weights);
  static StateBelief point_mass(StatePoint theta);

  bool is_finite() const { return finite_; }
  std::span<const double> weights() const;
  const StatePoint& point() const;

 private:
  StateBelief() = default;
  bool finite_ = false;
  std::vector<double> weights_;
  StatePoint point_;
};

// Total variation distance between beliefs of the same representation.
// Finite: half the L1 distance between weight vectors (equal length
// required).  Point masses: 0 when the points coincide to the last bit,
// else 1.
double tv_distance(const StateBelief& p, const StateBelief& q);

// Optional sampling fallback for expected-utility evaluation past the
// enumeration budget.
struct MonteCarloConfig {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// An identical-interest game: all agents share the utility
// u : A x Theta -> R.  The utility callback must be total on the action
// space and the support of any belief it is evaluated against.
class GameSpec {
 public:
  using UtilityFn = std::function<double(std::span<const int>, std::span<const double>)>;

  GameSpec(ActionSpace actions, StateSpace states, UtilityFn utility);

  const ActionSpace& actions() const { return actions_; }
  const StateSpace& states() const { return states_; }

  double utility(std::span<const int> a, std::span<const double> theta) const {
    return utility_(a, theta);
  }

  // Exact enumeration is used while |A| * max(|Theta|, 1) stays within this
  // budget; beyond it the sampler (if configured) takes over, else the
  // evaluation throws CapacityError.
  std::uint64_t enumeration_cap() const { return enumeration_cap_; }
  void set_enumeration_cap(std::uint64_t cap);

  const std::optional<MonteCarloConfig>& sampler() const { return sampler_; }
  void set_sampler(MonteCarloConfig mc) { sampler_ = mc; }

 private:
  ActionSpace actions_;
  StateSpace states_;
  UtilityFn utility_;
  std::uint64_t enumeration_cap_ = 1000000;
  std::optional<MonteCarloConfig> sampler_;
};

// Throws ContractError unless the belief representation matches the game's
// state space (finite weights of matching length, or a point of matching
// dimension).
void check_belief(const GameSpec& game, const StateBelief& belief);

// Expected utility of a product strategy profile under a state belief.
// Linear in each agent's strategy.  Exact within the enumeration budget.
double expected_utility(const GameSpec& game, const StrategyProfile& sigma,
                        const StateBelief& belief);

// Expected utility of the pure profile `a` under `belief`.
double pure_profile_utility(const GameSpec& game, std::span<const int> a,
                            const StateBelief& belief);

// Expected utility of each action of `agent` against the other agents'
// strategies in `others` (entry `agent` of `others` is ignored).
std::vector<double> best_response_values(const GameSpec& game, int agent,
                                         const StrategyProfile& others,
                                         const StateBelief& belief);

// Argmax of best_response_values with exact lowest-index tie-breaking.
int best_response(const GameSpec& game, int agent, const StrategyProfile& others,
                  const StateBelief& belief);

// True when no unilateral pure deviation improves the shared expected
// utility by more than 1e-12.
bool is_pure_nash(const GameSpec& game, const JointAction& a, const StateBelief& belief);

// Sum over agents of the L2 distance between the agents' strategy vectors.
// Profiles must agree in shape.
double strategy_distance(const StrategyProfile& f, const StrategyProfile& g);

}  // namespace dfp
