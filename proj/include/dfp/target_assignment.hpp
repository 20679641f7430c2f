#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dfp/game.hpp"

namespace dfp {

// A planar assignment instance: one immobile agent per target slot.
// Agents never sit exactly on a target (inverse-square payoffs would be
// singular there).
struct TargetWorld {
  std::vector<std::array<double, 2>> agents;
  std::vector<std::array<double, 2>> targets;
  double noise_scale = 0.0;
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(agents.size()); }
};

// Throws ContractError unless agents/targets are nonempty, equal in count,
// and every agent-target pair is separated by a positive distance.
void check_world(const TargetWorld& world);

// Targets flattened to (x0, y0, x1, y1, ...): the parameter point the
// simulation treats as ground truth.
StatePoint flatten_targets(const TargetWorld& world);

// Shared utility: each agent that is the unique claimant of its chosen
// target contributes the inverse squared distance between its position and
// that target's believed location; contested or duplicated claims
// contribute nothing.  `theta` holds believed target coordinates in
// flatten_targets layout.  A zero agent-to-target distance is a contract
// error (singular payoff).
double task_utility(const TargetWorld& world, std::span<const int> a,
                    std::span<const double> theta);

// The identical-interest game whose utility is task_utility against this
// world's agent positions.
GameSpec make_game(const TargetWorld& world);

// All pure equilibria of the assignment game at believed positions theta,
// by exhaustive scan of the n^n profiles.  Capped at n <= 7; larger
// instances throw CapacityError.  Profiles are returned in lexicographic
// order.
std::vector<JointAction> enumerate_pure_ne(const TargetWorld& world,
                                           std::span<const double> theta);

// A reproducible n-agent instance on the unit square with every
// agent-target distance at least 0.05; redraws the whole layout until the
// separation holds (bounded attempts, then ConfigError).
TargetWorld make_benchmark(std::uint64_t seed, double noise_scale = 0.05, int n = 5);

}  // namespace dfp
