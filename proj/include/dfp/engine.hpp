#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dfp/consensus.hpp"
#include "dfp/game.hpp"
#include "dfp/graph.hpp"

namespace dfp {

// How agents turn per-step private signals into a state belief.
//   running_mean  point mass at the running mean of noisy signals
//                 theta_true + noise_scale * N(0, I), one per step;
//   fixed         a constant belief, no signals drawn (for games whose
//                 state plays no role).
struct LearningConfig {
  enum class Kind { running_mean, fixed };
  Kind kind = Kind::running_mean;
  double noise_scale = 0.0;
  std::optional<StateBelief> fixed_belief;
};

// Everything a run needs.  Immutable once handed to run().
struct SimConfig {
  SimConfig(GameSpec game_, GraphSequence graph_, WeightScheme scheme_)
      : game(std::move(game_)), graph(std::move(graph_)), scheme(scheme_) {}

  GameSpec game;
  GraphSequence graph;
  WeightScheme scheme;
  long horizon = 1;
  std::uint64_t seed = 0;
  LearningConfig learning;
  int cadence = 1;
  // Window parameter the communication sequence is expected to satisfy;
  // used for the connectivity report attached to the trace.
  int connectivity_window = 1;
  // After the averaging exchange, every current neighbor of agent j copies
  // agent j's own frequency estimate verbatim (one more valid stubborn
  // averaging round).  On a static complete graph this collapses the
  // network dynamic onto classic centralized fictitious play.
  bool extra_exchange_round = false;
  // Ground-truth parameter point driving signals (running-mean learning).
  StatePoint theta_true;
  // Reference equilibrium profiles for trace metrics; may be empty, in
  // which case NE distance is recorded as NaN.
  std::vector<JointAction> ne_set;
};

// Per-agent simulation state.  estimates[id] is the agent's own frequency
// and is kept bit-identical to freq at all times.
struct AgentState {
  int id = 0;
  std::vector<double> freq;
  std::vector<std::vector<double>> estimates;
  StateBelief belief = StateBelief::point_mass({0.0});
  StatePoint signal_mean;
  long signal_count = 0;
};

struct World {
  std::vector<AgentState> agents;
  // Index of the next iteration to execute (1 after initialize).
  long t = 1;
};

struct TraceRecord {
  long t = 0;
  JointAction actions;
  double estimate_error = 0.0;
  double ne_distance = 0.0;
  double tv_disagreement = 0.0;
};

struct SimTrace {
  std::vector<TraceRecord> records;
  WindowConnectivityReport connectivity;
};

struct RunResult {
  SimTrace trace;
  World world;
};

// f + (1/t)(onehot(action) - f): the running empirical histogram advanced
// by one observation.
std::vector<double> update_frequency(std::span<const double> freq, long t, int action);

// Draws initial actions uniformly (one stream per agent derived from the
// run seed), sets every frequency to the matching one-hot, broadcasts all
// initial frequencies so every estimate table starts exact, and seeds
// beliefs (first signal for running-mean learning, the configured constant
// otherwise).
World initialize(const SimConfig& config);

// One averaging round over edges_at(t): for every tracked agent j, builds
// the uniform stubborn weight matrix and applies it to the stacked
// estimates of f_j, one action coordinate at a time.  Honors the
// extra_exchange_round flag.
void exchange_estimates(World& world, const SimConfig& config, long t);

// Folds one private signal into the agent's running mean and re-points its
// belief there.
void learn_state(AgentState& agent, std::span<const double> signal);

// One full iteration at time t: simultaneous best responses from the
// current snapshot, frequency updates, estimate exchange, state learning.
// Returns the actions played.
JointAction step(World& world, const SimConfig& config, long t);

// initialize + horizon steps, recording a trace row every `cadence` steps
// (and always at the final step).  The connectivity report covers
// [0, horizon] at the configured window.
RunResult run(const SimConfig& config);

}  // namespace dfp
