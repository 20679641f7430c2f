#include "dfp/target_assignment.hpp"

#include <cmath>
#include <string>

#include "dfp/rng.hpp"

namespace dfp {

void check_world(const TargetWorld& world) {
  if (world.agents.empty()) throw ContractError("world has no agents");
  if (world.agents.size() != world.targets.size())
    throw ContractError("world needs exactly one target slot per agent");
  for (const auto& a : world.agents) {
    for (const auto& t : world.targets) {
      if (a[0] == t[0] && a[1] == t[1])
        throw ContractError("agent exactly collocated with a target");
    }
  }
}

StatePoint flatten_targets(const TargetWorld& world) {
  StatePoint theta;
  theta.reserve(world.targets.size() * 2);
  for (const auto& t : world.targets) {
    theta.push_back(t[0]);
    theta.push_back(t[1]);
  }
  return theta;
}

double task_utility(const TargetWorld& world, std::span<const int> a,
                    std::span<const double> theta) {
  const int n = world.size();
  if (static_cast<int>(a.size()) != n) throw ContractError("assignment has wrong agent count");
  if (theta.size() != static_cast<std::size_t>(2 * n))
    throw ContractError("believed target vector has wrong dimension");

  int claim_counts[16];
  std::vector<int> claim_counts_big;
  int* counts = claim_counts;
  if (n > 16) {
    claim_counts_big.assign(static_cast<std::size_t>(n), 0);
    counts = claim_counts_big.data();
  } else {
    for (int k = 0; k < n; ++k) claim_counts[k] = 0;
  }

  for (int i = 0; i < n; ++i) {
    const int t = a[static_cast<std::size_t>(i)];
    if (t < 0 || t >= n) throw ContractError("target index out of range");
    ++counts[t];
  }

  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const int t = a[static_cast<std::size_t>(i)];
    if (counts[t] != 1) continue;
    const double dx = world.agents[static_cast<std::size_t>(i)][0] -
                      theta[static_cast<std::size_t>(2 * t)];
    const double dy = world.agents[static_cast<std::size_t>(i)][1] -
                      theta[static_cast<std::size_t>(2 * t + 1)];
    const double sq = dx * dx + dy * dy;
    if (sq == 0.0) throw ContractError("agent sits exactly on a believed target");
    total += 1.0 / sq;
  }
  return total;
}

GameSpec make_game(const TargetWorld& world) {
  check_world(world);
  const int n = world.size();
  ActionSpace actions(std::vector<int>(static_cast<std::size_t>(n), n));
  StateSpace states = StateSpace::parametric(2 * n);
  TargetWorld frozen = world;
  return GameSpec(std::move(actions), std::move(states),
                  [frozen](std::span<const int> a, std::span<const double> theta) {
                    return task_utility(frozen, a, theta);
                  });
}

std::vector<JointAction> enumerate_pure_ne(const TargetWorld& world,
                                           std::span<const double> theta) {
  check_world(world);
  const int n = world.size();
  if (n > 7)
    throw CapacityError("pure equilibrium scan is capped at 7 agents (" + std::to_string(n) +
                        " requested)");
  if (n == 1) {
    // One agent, one target: the single profile has no deviations.
    return {JointAction{0}};
  }

  GameSpec game = make_game(world);
  StateBelief belief = StateBelief::point_mass(StatePoint(theta.begin(), theta.end()));
  std::vector<JointAction> found;
  JointAction a(static_cast<std::size_t>(n), 0);
  while (true) {
    if (is_pure_nash(game, a, belief)) found.push_back(a);
    int i = n - 1;
    for (; i >= 0; --i) {
      if (++a[static_cast<std::size_t>(i)] < n) break;
      a[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  return found;
}

TargetWorld make_benchmark(std::uint64_t seed, double noise_scale, int n) {
  if (n < 1) throw ContractError("benchmark needs at least one agent");
  if (!(noise_scale >= 0.0)) throw ContractError("noise scale must be nonnegative");

  static constexpr double kMinSeparation = 0.05;
  static constexpr int kMaxAttempts = 1000;
  RandomStream rng(mix_seed(seed, 0x7461726765ULL));

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    TargetWorld world;
    world.seed = seed;
    world.noise_scale = noise_scale;
    world.agents.resize(static_cast<std::size_t>(n));
    world.targets.resize(static_cast<std::size_t>(n));
    for (auto& a : world.agents) a = {rng.uniform01(), rng.uniform01()};
    for (auto& t : world.targets) t = {rng.uniform01(), rng.uniform01()};

    bool ok = true;
    for (const auto& a : world.agents) {
      for (const auto& t : world.targets) {
        const double dx = a[0] - t[0];
        const double dy = a[1] - t[1];
        if (std::sqrt(dx * dx + dy * dy) < kMinSeparation) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return world;
  }
  throw ConfigError("could not draw a benchmark layout with the required separation");
}

}  // namespace dfp
