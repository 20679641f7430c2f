#include "dfp/engine.hpp"

#include <cmath>
#include <limits>

#include "dfp/metrics.hpp"
#include "dfp/rng.hpp"

namespace dfp {
namespace {

// Stream labels: every random draw in a run comes from a stream derived
// from (run seed, label, indices), so any draw can be replayed in
// isolation and runs are reproducible byte-for-byte.
constexpr std::uint64_t kInitLabel = 0x696E6974ULL;    // initial actions
constexpr std::uint64_t kSignalLabel = 0x7369676EULL;  // state signals

void check_config(const SimConfig& config) {
  const int n = config.game.actions().agents();
  if (config.graph.agents() != n)
    throw ContractError("graph and game disagree on the number of agents");
  if (config.horizon < 1) throw ContractError("horizon must be at least 1");
  if (config.cadence < 1) throw ContractError("cadence must be at least 1");
  if (config.connectivity_window < 1) throw ContractError("connectivity window must be positive");
  if (config.learning.kind == LearningConfig::Kind::running_mean) {
    if (config.game.states().is_finite())
      throw ContractError("running-mean learning needs a parametric state space");
    if (static_cast<int>(config.theta_true.size()) != config.game.states().dim())
      throw ContractError("ground-truth parameter has wrong dimension");
    if (!(config.learning.noise_scale >= 0.0))
      throw ContractError("noise scale must be nonnegative");
  } else {
    if (!config.learning.fixed_belief) throw ContractError("fixed learning needs a belief");
    check_belief(config.game, *config.learning.fixed_belief);
  }
}

StatePoint draw_signal(const SimConfig& config, int agent, long t) {
  RandomStream rng(mix_seed(config.seed, kSignalLabel, static_cast<std::uint64_t>(agent),
                            static_cast<std::uint64_t>(t)));
  StatePoint signal = config.theta_true;
  if (config.learning.noise_scale > 0.0) {
    for (double& coord : signal) coord += config.learning.noise_scale * rng.gaussian();
  }
  return signal;
}

const StateBelief& reference_belief(const SimConfig& config, const StateBelief& theta_point) {
  return config.learning.kind == LearningConfig::Kind::running_mean
             ? theta_point
             : *config.learning.fixed_belief;
}

}  // namespace

std::vector<double> update_frequency(std::span<const double> freq, long t, int action) {
  if (t < 1) throw ContractError("frequency update needs t >= 1");
  if (action < 0 || action >= static_cast<int>(freq.size()))
    throw ContractError("action out of range");
  double sum = 0.0;
  for (double p : freq) {
    if (!(p >= 0.0)) throw ContractError("frequency has a negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ContractError("frequency does not sum to one");

  const double rate = 1.0 / static_cast<double>(t);
  std::vector<double> next(freq.begin(), freq.end());
  for (std::size_t k = 0; k < next.size(); ++k) {
    const double target = (static_cast<int>(k) == action) ? 1.0 : 0.0;
    next[k] += rate * (target - next[k]);
  }
  return next;
}

World initialize(const SimConfig& config) {
  check_config(config);
  const int n = config.game.actions().agents();

  std::vector<int> initial_actions(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    RandomStream rng(mix_seed(config.seed, kInitLabel, static_cast<std::uint64_t>(i)));
    initial_actions[static_cast<std::size_t>(i)] = rng.uniform_int(config.game.actions().size(i));
  }

  World world;
  world.t = 1;
  world.agents.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    AgentState& agent = world.agents[static_cast<std::size_t>(i)];
    agent.id = i;
    agent.freq.assign(static_cast<std::size_t>(config.game.actions().size(i)), 0.0);
    agent.freq[static_cast<std::size_t>(initial_actions[static_cast<std::size_t>(i)])] = 1.0;

    // One-shot broadcast: everyone starts with the exact initial
    // frequencies of everyone else.
    agent.estimates.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      auto& est = agent.estimates[static_cast<std::size_t>(j)];
      est.assign(static_cast<std::size_t>(config.game.actions().size(j)), 0.0);
      est[static_cast<std::size_t>(initial_actions[static_cast<std::size_t>(j)])] = 1.0;
    }

    if (config.learning.kind == LearningConfig::Kind::running_mean) {
      agent.signal_mean = StatePoint(config.theta_true.size(), 0.0);
      agent.signal_count = 0;
      learn_state(agent, draw_signal(config, i, 0));
    } else {
      agent.belief = *config.learning.fixed_belief;
    }
  }
  return world;
}

void learn_state(AgentState& agent, std::span<const double> signal) {
  if (agent.signal_mean.empty()) agent.signal_mean.assign(signal.size(), 0.0);
  if (signal.size() != agent.signal_mean.size())
    throw ContractError("signal dimension does not match the learned parameter");
  ++agent.signal_count;
  const double rate = 1.0 / static_cast<double>(agent.signal_count);
  for (std::size_t k = 0; k < signal.size(); ++k) {
    agent.signal_mean[k] += rate * (signal[k] - agent.signal_mean[k]);
  }
  agent.belief = StateBelief::point_mass(agent.signal_mean);
}

void exchange_estimates(World& world, const SimConfig& config, long t) {
  const int n = static_cast<int>(world.agents.size());
  std::vector<std::vector<int>> adjacency;
  config.graph.adjacency_at(t, adjacency);

  std::vector<double> stacked(static_cast<std::size_t>(n));
  std::vector<double> mixed(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const WeightMatrix w = build_weight_matrix(config.scheme, j, adjacency);
    const int coords = static_cast<int>(world.agents[static_cast<std::size_t>(j)]
                                            .estimates[static_cast<std::size_t>(j)]
                                            .size());
    for (int l = 0; l < coords; ++l) {
      for (int k = 0; k < n; ++k)
        stacked[static_cast<std::size_t>(k)] =
            world.agents[static_cast<std::size_t>(k)].estimates[static_cast<std::size_t>(j)]
                        [static_cast<std::size_t>(l)];
      w.apply(stacked, mixed);
      for (int k = 0; k < n; ++k)
        world.agents[static_cast<std::size_t>(k)].estimates[static_cast<std::size_t>(j)]
                    [static_cast<std::size_t>(l)] = mixed[static_cast<std::size_t>(k)];
    }
  }

  if (config.extra_exchange_round) {
    // Direct adoption: neighbors of each tracked agent copy its exact
    // self-estimate.  Equivalent to one more round whose rows are basis
    // vectors, so all invariants of the averaging step carry over.
    for (int j = 0; j < n; ++j) {
      const auto& own = world.agents[static_cast<std::size_t>(j)].estimates[static_cast<std::size_t>(j)];
      for (int i : adjacency[static_cast<std::size_t>(j)]) {
        world.agents[static_cast<std::size_t>(i)].estimates[static_cast<std::size_t>(j)] = own;
      }
    }
  }
}

JointAction step(World& world, const SimConfig& config, long t) {
  if (t < 1) throw ContractError("step needs t >= 1");
  const int n = static_cast<int>(world.agents.size());

  // (ii) Simultaneous choice: every best response reads the pre-step
  // snapshot only.
  JointAction actions(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    const AgentState& agent = world.agents[static_cast<std::size_t>(i)];
    StrategyProfile believed;
    believed.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      believed.emplace_back(std::vector<double>(agent.estimates[static_cast<std::size_t>(j)]));
    actions[static_cast<std::size_t>(i)] = best_response(config.game, i, believed, agent.belief);
  }

  // (iii) Fold the played actions into the empirical frequencies.
  for (int i = 0; i < n; ++i) {
    AgentState& agent = world.agents[static_cast<std::size_t>(i)];
    agent.freq = update_frequency(agent.freq, t, actions[static_cast<std::size_t>(i)]);
    agent.estimates[static_cast<std::size_t>(i)] = agent.freq;
  }

  // (iv) One round of estimate averaging over the step-t edges.
  exchange_estimates(world, config, t);

  // (v) Private signals and belief refresh.
  if (config.learning.kind == LearningConfig::Kind::running_mean) {
    for (int i = 0; i < n; ++i) {
      const StatePoint signal = draw_signal(config, i, t);
      learn_state(world.agents[static_cast<std::size_t>(i)], signal);
    }
  }

  world.t = t + 1;
  return actions;
}

RunResult run(const SimConfig& config) {
  check_config(config);

  RunResult result{SimTrace{}, initialize(config)};
  result.trace.connectivity = validate_window_connectivity(
      config.graph, config.connectivity_window, 0, config.horizon);
  result.trace.records.reserve(
      static_cast<std::size_t>(config.horizon / config.cadence + 2));

  const StateBelief theta_point =
      config.theta_true.empty() ? StateBelief::point_mass({0.0})
                                : StateBelief::point_mass(config.theta_true);

  for (long t = 1; t <= config.horizon; ++t) {
    JointAction actions = step(result.world, config, t);
    if (t % config.cadence != 0 && t != config.horizon) continue;

    TraceRecord record;
    record.t = t;
    record.actions = std::move(actions);
    record.estimate_error = estimate_error(result.world);
    record.ne_distance = config.ne_set.empty()
                             ? std::numeric_limits<double>::quiet_NaN()
                             : ne_distance(result.world, config.ne_set);
    const StateBelief& ref = reference_belief(config, theta_point);
    double disagreement = 0.0;
    for (const AgentState& agent : result.world.agents)
      disagreement = std::max(disagreement, tv_distance(agent.belief, ref));
    record.tv_disagreement = disagreement;
    result.trace.records.push_back(std::move(record));
  }
  return result;
}

}  // namespace dfp
