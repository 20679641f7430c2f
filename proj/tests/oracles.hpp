#pragma once

// Brute-force reference implementations used to pin down the library's
// numerical results.  Everything here is written against the definitions
// directly (recursive enumeration, naive double loops) rather than sharing
// code paths with the library under test.

#include <cmath>
#include <memory>
#include <vector>

#include "dfp/game.hpp"
#include "dfp/rng.hpp"
#include "dfp/target_assignment.hpp"

namespace oracle {

// Expected utility by plain recursion over agents, then states.
inline double expected_utility_rec(const dfp::GameSpec& game, const dfp::StrategyProfile& sigma,
                                   std::span<const double> theta, dfp::JointAction& a, int agent,
                                   double prob) {
  const int n = game.actions().agents();
  if (agent == n) return prob * game.utility(a, theta);
  double total = 0.0;
  for (int x = 0; x < game.actions().size(agent); ++x) {
    a[static_cast<std::size_t>(agent)] = x;
    const double p = sigma[static_cast<std::size_t>(agent)][x];
    if (p == 0.0) continue;
    total += expected_utility_rec(game, sigma, theta, a, agent + 1, prob * p);
  }
  return total;
}

inline double expected_utility(const dfp::GameSpec& game, const dfp::StrategyProfile& sigma,
                               const dfp::StateBelief& belief) {
  dfp::JointAction a(static_cast<std::size_t>(game.actions().agents()), 0);
  if (belief.is_finite()) {
    double total = 0.0;
    const auto& points = game.states().points();
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (belief.weights()[k] == 0.0) continue;
      total += belief.weights()[k] * expected_utility_rec(game, sigma, points[k], a, 0, 1.0);
    }
    return total;
  }
  return expected_utility_rec(game, sigma, belief.point(), a, 0, 1.0);
}

inline std::vector<double> best_response_values(const dfp::GameSpec& game, int agent,
                                                const dfp::StrategyProfile& others,
                                                const dfp::StateBelief& belief) {
  std::vector<double> values;
  for (int x = 0; x < game.actions().size(agent); ++x) {
    dfp::StrategyProfile pinned = others;
    pinned[static_cast<std::size_t>(agent)] =
        dfp::MixedStrategy::one_hot(game.actions().size(agent), x);
    values.push_back(oracle::expected_utility(game, pinned, belief));
  }
  return values;
}

inline int best_response(const dfp::GameSpec& game, int agent, const dfp::StrategyProfile& others,
                         const dfp::StateBelief& belief) {
  const std::vector<double> values = oracle::best_response_values(game, agent, others, belief);
  int best = 0;
  for (int x = 1; x < static_cast<int>(values.size()); ++x) {
    if (values[static_cast<std::size_t>(x)] > values[static_cast<std::size_t>(best)]) best = x;
  }
  return best;
}

inline bool is_pure_nash(const dfp::GameSpec& game, const dfp::JointAction& a,
                         const dfp::StateBelief& belief) {
  auto pure_payoff = [&](const dfp::JointAction& profile) {
    dfp::StrategyProfile sigma;
    for (int i = 0; i < game.actions().agents(); ++i)
      sigma.push_back(dfp::MixedStrategy::one_hot(game.actions().size(i),
                                                  profile[static_cast<std::size_t>(i)]));
    return oracle::expected_utility(game, sigma, belief);
  };
  const double base = pure_payoff(a);
  for (int i = 0; i < game.actions().agents(); ++i) {
    for (int x = 0; x < game.actions().size(i); ++x) {
      dfp::JointAction dev = a;
      dev[static_cast<std::size_t>(i)] = x;
      if (pure_payoff(dev) > base + 1e-12) return false;
    }
  }
  return true;
}

// Arithmetic-mean recomputation of an empirical frequency from the raw
// action log (the recursion's closed form).
inline std::vector<double> mean_frequency(int num_actions, std::span<const int> actions) {
  std::vector<double> f(static_cast<std::size_t>(num_actions), 0.0);
  for (int a : actions) f[static_cast<std::size_t>(a)] += 1.0;
  for (double& v : f) v /= static_cast<double>(actions.size());
  return f;
}

// Naive indicator-logic reimplementation of the assignment payoff.
inline double task_utility(const dfp::TargetWorld& world, std::span<const int> a,
                           std::span<const double> theta) {
  double total = 0.0;
  const int n = world.size();
  for (int i = 0; i < n; ++i) {
    bool contested = false;
    for (int j = 0; j < n; ++j) {
      if (j != i && a[static_cast<std::size_t>(j)] == a[static_cast<std::size_t>(i)])
        contested = true;
    }
    if (contested) continue;
    const int t = a[static_cast<std::size_t>(i)];
    const double dx =
        world.agents[static_cast<std::size_t>(i)][0] - theta[static_cast<std::size_t>(2 * t)];
    const double dy =
        world.agents[static_cast<std::size_t>(i)][1] - theta[static_cast<std::size_t>(2 * t + 1)];
    total += 1.0 / (dx * dx + dy * dy);
  }
  return total;
}

// A reproducible identical-interest game with tabulated payoffs; state
// points are {0}, {1}, ... and the table is indexed by (joint action,
// state index).
struct TableGame {
  dfp::GameSpec game;
  std::vector<double> table;
};

inline TableGame make_table_game(std::uint64_t seed, std::vector<int> sizes, int num_states) {
  dfp::ActionSpace space(sizes);
  const std::size_t joints = static_cast<std::size_t>(space.joint_count());
  auto table = std::make_shared<std::vector<double>>();
  dfp::RandomStream rng(dfp::mix_seed(seed, 0x7461626CULL));
  table->resize(joints * static_cast<std::size_t>(num_states));
  for (double& v : *table) v = rng.uniform01();

  std::vector<dfp::StatePoint> points;
  for (int s = 0; s < num_states; ++s) points.push_back({static_cast<double>(s)});

  const std::vector<int> radix = sizes;
  auto utility = [table, radix, num_states](std::span<const int> a, std::span<const double> theta) {
    std::size_t index = 0;
    for (std::size_t i = 0; i < radix.size(); ++i)
      index = index * static_cast<std::size_t>(radix[i]) + static_cast<std::size_t>(a[i]);
    const int s = static_cast<int>(theta[0]);
    return (*table)[index * static_cast<std::size_t>(num_states) + static_cast<std::size_t>(s)];
  };
  return TableGame{dfp::GameSpec(std::move(space), dfp::StateSpace::finite(std::move(points)),
                                 std::move(utility)),
                   *table};
}

inline dfp::MixedStrategy random_strategy(dfp::RandomStream& rng, int num_actions) {
  std::vector<double> p(static_cast<std::size_t>(num_actions));
  double sum = 0.0;
  for (double& v : p) {
    v = 0.05 + rng.uniform01();
    sum += v;
  }
  for (double& v : p) v /= sum;
  return dfp::MixedStrategy(std::move(p));
}

inline dfp::StateBelief random_finite_belief(dfp::RandomStream& rng, int num_states) {
  std::vector<double> w(static_cast<std::size_t>(num_states));
  double sum = 0.0;
  for (double& v : w) {
    v = 0.05 + rng.uniform01();
    sum += v;
  }
  for (double& v : w) v /= sum;
  return dfp::StateBelief::finite(std::move(w));
}

}  // namespace oracle
