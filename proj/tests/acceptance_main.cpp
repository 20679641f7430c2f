// End-to-end acceptance harness.  Each criterion below exercises one
// externally promised behavior of the library at pinned tolerances and
// prints a single [PASS]/[FAIL] line; the process exits nonzero when any
// criterion fails.  Checks run on fixed seeds so reruns are reproducible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dfp/config.hpp"
#include "dfp/consensus.hpp"
#include "dfp/engine.hpp"
#include "dfp/game.hpp"
#include "dfp/graph.hpp"
#include "dfp/io.hpp"
#include "dfp/metrics.hpp"
#include "dfp/rng.hpp"
#include "dfp/target_assignment.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

int g_failures = 0;

void run_criterion(int id, const std::string& name, double time_limit_seconds,
                   const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() -
                                                                start)
          .count();
  if (ok && time_limit_seconds > 0.0 && seconds > time_limit_seconds) {
    ok = false;
    detail = "time limit exceeded (" + std::to_string(time_limit_seconds) + "s)";
  }
  std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
              seconds, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

// ---------------------------------------------------------------------------
// Shared machinery: seeded weight-matrix sequences that place a connected
// snapshot at every multiple of T and an arbitrary random subgraph in
// between, with uniform closed-neighborhood weights and one stubborn agent.

dfp::WeightMatrix sequence_matrix(int n, int T, double eta, int tracked, std::uint64_t seed,
                                  long t) {
  dfp::RandomStream rng(dfp::mix_seed(seed, 0x61636331ULL, static_cast<std::uint64_t>(t)));
  dfp::EdgeSet edges;
  if (t % T == 0) {
    for (int v = 1; v < n; ++v) edges.emplace_back(rng.uniform_int(v), v);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (rng.uniform01() < 0.5) edges.emplace_back(a, b);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n));
  for (const auto& [a, b] : edges) {
    adjacency[static_cast<std::size_t>(a)].push_back(b);
    adjacency[static_cast<std::size_t>(b)].push_back(a);
  }
  return dfp::build_weight_matrix(dfp::WeightScheme(eta), tracked, adjacency);
}

struct SequenceCase {
  int n = 0;
  int T = 0;
  int tracked = 0;
  std::uint64_t seed = 0;
};

std::vector<SequenceCase> sequence_cases() {
  const std::pair<int, int> combos[4] = {{3, 1}, {3, 3}, {5, 1}, {5, 3}};
  std::vector<SequenceCase> cases;
  cases.reserve(50);
  for (int k = 0; k < 50; ++k) {
    const auto [n, T] = combos[k % 4];
    cases.push_back({n, T, k % n, dfp::mix_seed(4242, static_cast<std::uint64_t>(k))});
  }
  return cases;
}

// Largest row sum of |phi - limit|, the matrix norm the decay bound caps.
double row_sum_deviation(const dfp::MatrixProduct& phi, int n, int tracked) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int k = 0; k < n; ++k) row += std::abs(phi.at(i, k) - (k == tracked ? 1.0 : 0.0));
    worst = std::max(worst, row);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Criterion 1: products of stubborn averaging matrices converge to the
// rank-one limit under the kappa * rho^(t-s) envelope, reaching 1e-6 by
// t = 500, across 50 seeded window-connected sequences.

bool criterion_decay_envelope(std::string& detail) {
  const long horizon = 500;
  for (const SequenceCase& c : sequence_cases()) {
    const double eta = 1.0 / static_cast<double>(c.n);
    dfp::MatrixProduct phi(sequence_matrix(c.n, c.T, eta, c.tracked, c.seed, 0), 0);
    for (long t = 0; t <= horizon; ++t) {
      if (t > 0) phi.left_multiply(sequence_matrix(c.n, c.T, eta, c.tracked, c.seed, t));
      const double deviation = row_sum_deviation(phi, c.n, c.tracked);
      const double bound = dfp::decay_bound(c.n, eta, c.T, t, 0).value;
      if (deviation > bound) {
        std::ostringstream msg;
        msg << "n=" << c.n << " T=" << c.T << " seed=" << c.seed << " t=" << t << ": deviation "
            << deviation << " exceeds bound " << bound;
        detail = msg.str();
        return false;
      }
      if (t == horizon && deviation > 1e-6) {
        std::ostringstream msg;
        msg << "n=" << c.n << " T=" << c.T << " seed=" << c.seed << ": deviation " << deviation
            << " at t=500 is above 1e-6";
        detail = msg.str();
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 2: every product keeps diagonal entries at or above
// eta^(length), and the stubborn agent's column of every aligned
// (n-1)*T-step window product stays at or above eta^((n-1)*T).

bool criterion_positivity_floors(std::string& detail) {
  const long horizon = 500;
  for (const SequenceCase& c : sequence_cases()) {
    const double eta = 1.0 / static_cast<double>(c.n);

    dfp::MatrixProduct phi(sequence_matrix(c.n, c.T, eta, c.tracked, c.seed, 0), 0);
    for (long t = 0; t <= horizon; ++t) {
      if (t > 0) phi.left_multiply(sequence_matrix(c.n, c.T, eta, c.tracked, c.seed, t));
      const double floor = std::pow(eta, static_cast<double>(t + 1)) - 1e-12;
      for (int i = 0; i < c.n; ++i) {
        if (phi.at(i, i) < floor) {
          std::ostringstream msg;
          msg << "n=" << c.n << " T=" << c.T << " seed=" << c.seed << " t=" << t << ": diagonal "
              << i << " = " << phi.at(i, i) << " is below " << floor;
          detail = msg.str();
          return false;
        }
      }
    }

    const long window = static_cast<long>(c.n - 1) * c.T;
    for (long start = 0; start + window - 1 <= horizon; start += window) {
      dfp::MatrixProduct block(sequence_matrix(c.n, c.T, eta, c.tracked, c.seed, start), start);
      for (long t = start + 1; t < start + window; ++t)
        block.left_multiply(sequence_matrix(c.n, c.T, eta, c.tracked, c.seed, t));
      if (!dfp::check_window_column_positivity(block, eta, c.T)) {
        std::ostringstream msg;
        msg << "n=" << c.n << " T=" << c.T << " seed=" << c.seed << ": window at t=" << start
            << " lost its column floor";
        detail = msg.str();
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 3: a two-agent witness attains the (1-zeta)^k disagreement
// envelope to within 1e-12 for every k up to 60.

bool criterion_contraction_witness(std::string& detail) {
  for (const double zeta : {0.1, 0.25, 0.5, 0.9}) {
    const dfp::WeightMatrix w =
        dfp::WeightMatrix::from_rows(1, 2, {1.0 - zeta, zeta, 0.0, 1.0});
    std::vector<dfp::WeightMatrix> steps;
    const std::vector<double> x0{1.0, 0.0};
    std::vector<double> x = x0;
    std::vector<double> next(2, 0.0);
    double envelope = 1.0;
    for (int k = 1; k <= 60; ++k) {
      steps.push_back(w);
      w.apply(x, next);
      x.swap(next);
      envelope *= 1.0 - zeta;
      if (!dfp::contraction_bound_holds(x0, steps, zeta)) {
        detail = "bound check failed at zeta=" + std::to_string(zeta) + " k=" + std::to_string(k);
        return false;
      }
      if (std::abs(std::abs(x[0]) - envelope) > 1e-12) {
        std::ostringstream msg;
        msg << "witness at zeta=" << zeta << " k=" << k << " reached " << std::abs(x[0])
            << " instead of " << envelope;
        detail = msg.str();
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 4: tracking a 1/t-slowing scalar input across an edge-cycled
// ring keeps max error on a log(t)/t trajectory: the normalized series
// err*t/log(t) has least-squares slope at most 1e-7 over [100, 10^4],
// for each of 10 seeds.

bool criterion_tracking_rate(std::string& detail) {
  const int n = 5;
  const dfp::GraphSequence graph = dfp::GraphSequence::edge_cycle(n, dfp::BaseTopology::ring);
  const dfp::WeightScheme scheme(1.0 / n);
  for (int s = 0; s < 10; ++s) {
    dfp::RandomStream rng(dfp::mix_seed(909, static_cast<std::uint64_t>(s)));
    std::vector<double> freq{0.0, 0.0};
    freq[rng.uniform_int(2)] = 1.0;
    dfp::TrackingState state{std::vector<double>(n, freq[0]), 0};

    std::vector<std::pair<long, double>> series;
    series.reserve(10000);
    std::vector<std::vector<int>> adjacency;
    for (long t = 1; t <= 10000; ++t) {
      freq = dfp::update_frequency(freq, t, rng.uniform_int(2));
      graph.adjacency_at(t, adjacency);
      const dfp::WeightMatrix w = dfp::build_weight_matrix(scheme, n - 1, adjacency);
      state = dfp::step_tracking(state, w, freq[0]);
      double err = 0.0;
      for (double xi : state.x) err = std::max(err, std::abs(xi - freq[0]));
      series.emplace_back(t, err);
    }

    const dfp::RateFit fit = dfp::fit_rate(series, 100, 1e-7);
    if (!fit.passes) {
      std::ostringstream msg;
      msg << "seed " << s << ": normalized slope " << fit.slope << " exceeds 1e-7";
      detail = msg.str();
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 5: the incremental frequency update reproduces batch averages
// of random action logs to 1e-9.

bool criterion_frequency_recursion(std::string& detail) {
  const int num_actions = 5;
  for (int trial = 0; trial < 100; ++trial) {
    dfp::RandomStream rng(dfp::mix_seed(555, static_cast<std::uint64_t>(trial)));
    const long length = 1 + rng.uniform_int(1000);
    std::vector<int> log;
    log.reserve(static_cast<std::size_t>(length));
    for (long k = 0; k < length; ++k) log.push_back(rng.uniform_int(num_actions));

    std::vector<double> freq(num_actions, 1.0 / num_actions);
    for (long k = 1; k <= length; ++k)
      freq = dfp::update_frequency(freq, k, log[static_cast<std::size_t>(k - 1)]);

    const std::vector<double> batch = oracle::mean_frequency(num_actions, log);
    for (int a = 0; a < num_actions; ++a) {
      if (std::abs(freq[static_cast<std::size_t>(a)] - batch[static_cast<std::size_t>(a)]) >
          1e-9) {
        std::ostringstream msg;
        msg << "trial " << trial << " action " << a << ": recursive "
            << freq[static_cast<std::size_t>(a)] << " vs batch "
            << batch[static_cast<std::size_t>(a)];
        detail = msg.str();
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 6: on a static complete two-agent network with the
// direct-adoption exchange round, the networked learner plays the exact
// action sequence of centralized fictitious play for 1000 steps.

bool criterion_centralized_equivalence(std::string& detail) {
  for (int g = 1; g <= 20; ++g) {
    ordered_json doc;
    doc["game"] = {{"kind", "identical-2x2"}, {"seed", g}};
    doc["graph"] = {{"kind", "static"}, {"base", "complete"}, {"n", 2}, {"T", 1}};
    doc["weights"] = {{"extra_exchange_round", true}};
    doc["run"] = {{"horizon", 1000}, {"seed", 100 + g}, {"cadence", 1}};
    const dfp::ResolvedConfig resolved = dfp::parse_config(doc);

    // Centralized reference: exact empirical frequencies on both sides.
    const dfp::World start = dfp::initialize(resolved.sim);
    std::vector<std::vector<double>> freq{start.agents[0].freq, start.agents[1].freq};
    const dfp::StateBelief belief = dfp::StateBelief::point_mass({0.0});

    const dfp::RunResult result = dfp::run(resolved.sim);
    if (result.trace.records.size() != 1000) {
      detail = "expected 1000 recorded steps";
      return false;
    }

    for (long t = 1; t <= 1000; ++t) {
      const dfp::StrategyProfile profile{dfp::MixedStrategy(freq[0]), dfp::MixedStrategy(freq[1])};
      const dfp::JointAction predicted{oracle::best_response(resolved.sim.game, 0, profile, belief),
                                       oracle::best_response(resolved.sim.game, 1, profile, belief)};
      const dfp::JointAction& played = result.trace.records[static_cast<std::size_t>(t - 1)].actions;
      if (played != predicted) {
        std::ostringstream msg;
        msg << "game " << g << " t=" << t << ": played (" << played[0] << "," << played[1]
            << ") but centralized play gives (" << predicted[0] << "," << predicted[1] << ")";
        detail = msg.str();
        return false;
      }
      freq[0] = dfp::update_frequency(freq[0], t, predicted[0]);
      freq[1] = dfp::update_frequency(freq[1], t, predicted[1]);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 7: the five-agent benchmark over edge-cycled star and ring
// topologies reaches equilibria quickly and its estimate error decays at
// the advertised rate.
//   (a) equilibrium hit time <= 500 in at least 8 of 10 seeds per topology;
//   (b) every run's estimate error passes the rate fit at slope 1e-7;
//   (c) final equilibrium distance <= 0.15 in at least 8 of 10 seeds.
// Criterion 9 reruns the same configurations and compares the emitted
// traces byte for byte.

struct BenchmarkFixture {
  dfp::TargetWorld world = dfp::make_benchmark(7, 0.05, 5);
  dfp::StatePoint theta;
  std::vector<dfp::JointAction> ne;
  fs::path dir;

  BenchmarkFixture() {
    theta = dfp::flatten_targets(world);
    ne = dfp::enumerate_pure_ne(world, theta);
    dir = fs::temp_directory_path() / "dfp_acceptance";
    fs::create_directories(dir);
  }

  dfp::RunResult run_once(dfp::BaseTopology topology, std::uint64_t seed) const {
    dfp::SimConfig config(dfp::make_game(world), dfp::GraphSequence::edge_cycle(5, topology),
                          dfp::WeightScheme(0.2));
    config.horizon = 10000;
    config.seed = seed;
    config.cadence = 1;
    config.connectivity_window = 5;
    config.learning.kind = dfp::LearningConfig::Kind::running_mean;
    config.learning.noise_scale = 0.05;
    config.theta_true = theta;
    config.ne_set = ne;
    return dfp::run(config);
  }

  fs::path trace_path(const std::string& topology, std::uint64_t seed, int pass) const {
    return dir / (topology + "-seed" + std::to_string(seed) + "-pass" + std::to_string(pass) +
                  ".csv");
  }
};

const std::pair<dfp::BaseTopology, std::string> kBenchmarkTopologies[2] = {
    {dfp::BaseTopology::star, "star"},
    {dfp::BaseTopology::ring, "ring"}};

bool criterion_benchmark_convergence(const BenchmarkFixture& fixture, std::string& detail) {
  for (const auto& [topology, name] : kBenchmarkTopologies) {
    int quick_hits = 0;
    int near_finishes = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const dfp::RunResult result = fixture.run_once(topology, seed);
      dfp::write_trace_csv(fixture.trace_path(name, seed, 1).string(), result.trace);

      const std::optional<long> hit = dfp::ne_hit_time(result.trace, fixture.ne);
      if (hit && *hit <= 500) ++quick_hits;

      std::vector<std::pair<long, double>> series;
      series.reserve(result.trace.records.size());
      for (const dfp::TraceRecord& r : result.trace.records)
        series.emplace_back(r.t, r.estimate_error);
      const dfp::RateFit fit = dfp::fit_rate(series, 100, 1e-7);
      if (!fit.passes) {
        std::ostringstream msg;
        msg << name << " seed " << seed << ": estimate-error slope " << fit.slope
            << " exceeds 1e-7";
        detail = msg.str();
        return false;
      }

      if (result.trace.records.back().ne_distance <= 0.15) ++near_finishes;
    }
    if (quick_hits < 8) {
      detail = name + ": only " + std::to_string(quick_hits) + "/10 seeds hit by t=500";
      return false;
    }
    if (near_finishes < 8) {
      detail = name + ": only " + std::to_string(near_finishes) +
               "/10 seeds finished within distance 0.15";
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 8: pure-equilibrium enumeration on 20 seeded five-agent worlds
// returns every one of the 120 full-coverage assignments, and an
// independent stability check confirms each returned profile.

bool criterion_equilibrium_enumeration(std::string& detail) {
  for (std::uint64_t world_seed = 1; world_seed <= 20; ++world_seed) {
    const dfp::TargetWorld world = dfp::make_benchmark(world_seed, 0.05, 5);
    const dfp::StatePoint theta = dfp::flatten_targets(world);
    const std::vector<dfp::JointAction> ne = dfp::enumerate_pure_ne(world, theta);

    dfp::JointAction permutation{0, 1, 2, 3, 4};
    do {
      if (!std::binary_search(ne.begin(), ne.end(), permutation)) {
        std::ostringstream msg;
        msg << "world " << world_seed << ": assignment (" << permutation[0] << ","
            << permutation[1] << "," << permutation[2] << "," << permutation[3] << ","
            << permutation[4] << ") missing from the enumeration";
        detail = msg.str();
        return false;
      }
    } while (std::next_permutation(permutation.begin(), permutation.end()));

    const dfp::GameSpec game = dfp::make_game(world);
    const dfp::StateBelief belief = dfp::StateBelief::point_mass(theta);
    for (const dfp::JointAction& profile : ne) {
      if (!oracle::is_pure_nash(game, profile, belief)) {
        std::ostringstream msg;
        msg << "world " << world_seed << ": enumerated profile fails the independent check";
        detail = msg.str();
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 9: rerunning criterion 7's configurations reproduces every
// trace byte for byte.

std::string file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool criterion_reproducibility(const BenchmarkFixture& fixture, std::string& detail) {
  for (const auto& [topology, name] : kBenchmarkTopologies) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const dfp::RunResult result = fixture.run_once(topology, seed);
      dfp::write_trace_csv(fixture.trace_path(name, seed, 2).string(), result.trace);
      const std::string first = file_bytes(fixture.trace_path(name, seed, 1));
      const std::string second = file_bytes(fixture.trace_path(name, seed, 2));
      if (first.empty() || first != second) {
        detail = name + " seed " + std::to_string(seed) + ": traces differ between executions";
        return false;
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  run_criterion(1, "backward products stay under the decay envelope", 10.0,
                criterion_decay_envelope);
  run_criterion(2, "product entries respect their positivity floors", 10.0,
                criterion_positivity_floors);
  run_criterion(3, "two-agent contraction witness attains the envelope", 0.0,
                criterion_contraction_witness);
  run_criterion(4, "tracking error decays like log(t)/t", 30.0, criterion_tracking_rate);
  run_criterion(5, "incremental frequencies equal batch averages", 0.0,
                criterion_frequency_recursion);
  run_criterion(6, "instant-sharing network replicates centralized play", 0.0,
                criterion_centralized_equivalence);

  const BenchmarkFixture fixture;
  run_criterion(7, "benchmark runs converge to equilibria at rate", 300.0,
                [&fixture](std::string& detail) {
                  return criterion_benchmark_convergence(fixture, detail);
                });
  run_criterion(8, "enumeration finds every full-coverage equilibrium", 0.0,
                criterion_equilibrium_enumeration);
  run_criterion(9, "repeated executions emit identical traces", 0.0,
                [&fixture](std::string& detail) { return criterion_reproducibility(fixture, detail); });

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
