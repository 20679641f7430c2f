// Command-line front end: config-driven simulation runs, connectivity
// validation, seed/topology sweeps, and consensus-bound oracle tables.
//
// Exit codes: 0 success; 2 configuration/usage problems; 3 connectivity
// validation failure under --strict (or `validate` on a disconnected
// sequence); 4 runtime contract violations.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dfp/config.hpp"
#include "dfp/consensus.hpp"
#include "dfp/engine.hpp"
#include "dfp/errors.hpp"
#include "dfp/graph.hpp"
#include "dfp/io.hpp"
#include "dfp/metrics.hpp"
#include "dfp/rng.hpp"
#include "dfp/target_assignment.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitConnectivity = 3;
constexpr int kExitRuntime = 4;

// Thrown when --strict meets a disconnected communication sequence.
struct ConnectivityFailure {
  dfp::WindowConnectivityReport report;
};

std::string default_out_root() {
  if (const char* env = std::getenv("DFP_OUT")) {
    if (*env != '\0') return env;
  }
  return "out";
}

std::ofstream open_text_file(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

// ---------------------------------------------------------------------------
// run

ordered_json execute_run(const dfp::ResolvedConfig& resolved, const fs::path& dir, bool strict,
                         bool svg) {
  const dfp::WindowConnectivityReport report = dfp::validate_window_connectivity(
      resolved.sim.graph, resolved.sim.connectivity_window, 0, resolved.sim.horizon);
  if (!report.connected) {
    if (strict) throw ConnectivityFailure{report};
    std::cerr << "warning: sequence is not " << report.window
              << "-window connected (first failing window starts at t="
              << (report.first_failing_window_start ? *report.first_failing_window_start : -1)
              << ")\n";
  }

  const dfp::RunResult result = dfp::run(resolved.sim);

  fs::create_directories(dir);
  std::vector<std::string> files{"trace.csv", "trace.dat", "summary.json"};
  dfp::write_trace_csv((dir / "trace.csv").string(), result.trace);
  dfp::write_trace_dat((dir / "trace.dat").string(), result.trace);

  if (svg) {
    dfp::ChartSeries error_series;
    error_series.label = "estimate error";
    for (const dfp::TraceRecord& r : result.trace.records)
      error_series.points.emplace_back(static_cast<double>(r.t), r.estimate_error);
    dfp::write_svg_chart((dir / "estimate_error.svg").string(), "Estimate error", {error_series},
                         true);
    files.push_back("estimate_error.svg");

    if (!resolved.sim.ne_set.empty()) {
      dfp::ChartSeries ne_series;
      ne_series.label = "distance to nearest equilibrium";
      for (const dfp::TraceRecord& r : result.trace.records)
        ne_series.points.emplace_back(static_cast<double>(r.t), r.ne_distance);
      dfp::write_svg_chart((dir / "ne_distance.svg").string(), "Equilibrium distance", {ne_series},
                           false);
      files.push_back("ne_distance.svg");
    }
  }

  std::optional<long> hit;
  if (!resolved.sim.ne_set.empty()) hit = dfp::ne_hit_time(result.trace, resolved.sim.ne_set);

  const ordered_json summary = dfp::summary_json(resolved, result, hit, files);
  open_text_file(dir / "summary.json") << summary.dump(2) << '\n';
  return summary;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, bool strict, bool svg) {
  const dfp::ResolvedConfig resolved = dfp::load_config_file(config_path);
  const fs::path dir(out_dir);
  const ordered_json summary = execute_run(resolved, dir, strict, svg);

  const ordered_json& final_metrics = summary.at("final");
  std::cout << "run complete: t=" << final_metrics.at("t")
            << " estimate_error=" << final_metrics.at("estimate_error").dump()
            << " ne_distance=" << final_metrics.at("ne_distance").dump()
            << " ne_hit_time=" << summary.at("ne_hit_time").dump() << '\n';
  for (const auto& file : summary.at("files"))
    std::cout << "  " << (dir / file.get<std::string>()).string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const std::string& config_path) {
  const dfp::ResolvedConfig resolved = dfp::load_config_file(config_path);
  const int n = resolved.sim.game.actions().agents();
  const dfp::WindowConnectivityReport report = dfp::validate_window_connectivity(
      resolved.sim.graph, resolved.sim.connectivity_window, 0, resolved.sim.horizon);

  ordered_json j;
  j["game_kind"] = resolved.game_kind;
  j["agents"] = n;
  j["horizon"] = resolved.sim.horizon;
  j["connectivity"] = dfp::connectivity_json(report);
  // The parser already rejects floors above 1/n; echo the margin that held.
  j["weights"] = ordered_json{{"eta", resolved.sim.scheme.eta},
                              {"max_allowed_eta", 1.0 / static_cast<double>(n)},
                              {"eta_within_bound", true}};
  j["equilibrium_count"] = resolved.sim.ne_set.size();
  std::cout << j.dump(2) << '\n';
  return report.connected ? kExitOk : kExitConnectivity;
}

// ---------------------------------------------------------------------------
// sweep

void apply_topology(ordered_json& graph, const std::string& token) {
  const auto dash = token.find('-');
  if (dash == std::string::npos)
    throw dfp::ConfigError("topology '" + token +
                           "' must look like <static|cycle|random>-<ring|star|complete>");
  const std::string kind_token = token.substr(0, dash);
  const std::string base_token = token.substr(dash + 1);

  std::string kind;
  if (kind_token == "static") {
    kind = "static";
  } else if (kind_token == "cycle") {
    kind = "edge-cycle";
  } else if (kind_token == "random") {
    kind = "seeded-random";
  } else {
    throw dfp::ConfigError("unknown topology kind '" + kind_token +
                           "' (use static, cycle, or random)");
  }
  if (base_token != "ring" && base_token != "star" && base_token != "complete")
    throw dfp::ConfigError("unknown topology base '" + base_token +
                           "' (use ring, star, or complete)");

  graph["kind"] = kind;
  graph["base"] = base_token;
  if (kind == "seeded-random") {
    if (!graph.contains("p")) graph["p"] = 0.5;
    if (!graph.contains("seed")) graph["seed"] = 0;
  } else {
    graph.erase("p");
    graph.erase("seed");
  }
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<std::uint64_t> parse_seed_tokens(const std::vector<std::string>& tokens) {
  std::vector<std::uint64_t> seeds;
  for (const std::string& token : tokens) {
    if (token.empty()) continue;
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
      value = std::stoull(token, &used);
    } catch (const std::exception&) {
      throw dfp::ConfigError("seed '" + token + "' is not a nonnegative integer");
    }
    if (used != token.size() || token[0] == '-')
      throw dfp::ConfigError("seed '" + token + "' is not a nonnegative integer");
    seeds.push_back(value);
  }
  return seeds;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& seed_tokens,
              std::vector<std::string> topologies, const std::string& out_root, bool strict,
              bool svg) {
  const std::vector<std::uint64_t> seeds = parse_seed_tokens(seed_tokens);
  if (seeds.empty()) throw dfp::ConfigError("sweep needs at least one seed (--seeds a,b,c)");

  // Validate the base config up front; children re-parse their variants.
  const ordered_json base = dfp::load_config_file(config_path).echo;
  if (topologies.empty()) topologies = {"base"};

  const fs::path root(out_root);
  fs::create_directories(root);

  struct ChildOutcome {
    std::string topology;
    std::uint64_t seed = 0;
    std::string dir;
    int exit_code = kExitOk;
    std::string status = "ok";
    ordered_json summary;
  };
  std::vector<ChildOutcome> outcomes;
  int worst_exit = kExitOk;

  for (const std::string& topology : topologies) {
    for (const std::uint64_t seed : seeds) {
      ChildOutcome outcome;
      outcome.topology = topology;
      outcome.seed = seed;
      const fs::path dir = root / topology / ("seed-" + std::to_string(seed));
      outcome.dir = dir.string();
      try {
        ordered_json child = base;
        child["run"]["seed"] = seed;
        if (topology != "base") apply_topology(child.at("graph"), topology);
        const dfp::ResolvedConfig resolved = dfp::parse_config(child);
        outcome.summary = execute_run(resolved, dir, strict, svg);
      } catch (const ConnectivityFailure& failure) {
        outcome.exit_code = kExitConnectivity;
        outcome.status = "connectivity failure (first failing window at t=" +
                         std::to_string(failure.report.first_failing_window_start.value_or(-1)) +
                         ")";
      } catch (const dfp::ConfigError& e) {
        outcome.exit_code = kExitConfig;
        outcome.status = std::string("config error: ") + e.what();
      } catch (const std::exception& e) {
        outcome.exit_code = kExitRuntime;
        outcome.status = std::string("error: ") + e.what();
      }
      worst_exit = std::max(worst_exit, outcome.exit_code);
      std::cout << (outcome.exit_code == kExitOk ? "[ok]    " : "[failed]") << ' ' << topology
                << " seed " << seed << " -> " << outcome.dir << '\n';
      if (outcome.exit_code != kExitOk) std::cout << "         " << outcome.status << '\n';
      outcomes.push_back(std::move(outcome));
    }
  }

  // Aggregate per topology from the children's own summaries.
  ordered_json aggregates = ordered_json::object();
  for (const std::string& topology : topologies) {
    std::vector<double> hits;
    std::vector<double> final_errors;
    std::vector<double> final_distances;
    int ok_count = 0;
    int failed_count = 0;
    for (const ChildOutcome& outcome : outcomes) {
      if (outcome.topology != topology) continue;
      if (outcome.exit_code != kExitOk) {
        ++failed_count;
        continue;
      }
      ++ok_count;
      if (outcome.summary.at("ne_hit_time").is_number())
        hits.push_back(outcome.summary.at("ne_hit_time").get<double>());
      final_errors.push_back(outcome.summary.at("final").at("estimate_error").get<double>());
      if (outcome.summary.at("final").at("ne_distance").is_number())
        final_distances.push_back(outcome.summary.at("final").at("ne_distance").get<double>());
    }
    ordered_json entry;
    entry["runs_ok"] = ok_count;
    entry["runs_failed"] = failed_count;
    entry["ne_hit_count"] = hits.size();
    entry["median_ne_hit_time"] = hits.empty() ? ordered_json(nullptr) : ordered_json(median(hits));
    entry["median_final_estimate_error"] =
        final_errors.empty() ? ordered_json(nullptr) : ordered_json(median(final_errors));
    entry["median_final_ne_distance"] =
        final_distances.empty() ? ordered_json(nullptr) : ordered_json(median(final_distances));
    aggregates[topology] = entry;
  }

  // Median estimate-error curves, one column per topology with at least one
  // completed run.  All children share the recording grid, so medians are
  // taken index by index.
  std::vector<std::string> curve_topologies;
  std::vector<std::vector<double>> curve_columns;
  std::vector<long> grid;
  for (const std::string& topology : topologies) {
    std::vector<const ordered_json*> summaries;
    for (const ChildOutcome& outcome : outcomes) {
      if (outcome.topology == topology && outcome.exit_code == kExitOk)
        summaries.push_back(&outcome.summary);
    }
    if (summaries.empty()) continue;
    // Recover each child's full error curve from its trace file.
    std::vector<std::vector<std::pair<long, double>>> curves;
    for (const ChildOutcome& outcome : outcomes) {
      if (outcome.topology != topology || outcome.exit_code != kExitOk) continue;
      std::ifstream in(fs::path(outcome.dir) / "trace.csv");
      std::string line;
      std::getline(in, line);  // header
      std::vector<std::pair<long, double>> curve;
      while (std::getline(in, line)) {
        const auto first_comma = line.find(',');
        const auto second_comma = line.find(',', first_comma + 1);
        curve.emplace_back(std::stol(line.substr(0, first_comma)),
                           std::stod(line.substr(first_comma + 1, second_comma - first_comma - 1)));
      }
      curves.push_back(std::move(curve));
    }
    if (curves.empty()) continue;
    const std::size_t rows = curves.front().size();
    bool consistent = true;
    for (const auto& curve : curves) consistent = consistent && curve.size() == rows;
    if (!consistent) continue;
    if (grid.empty()) {
      grid.reserve(rows);
      for (const auto& [t, err] : curves.front()) grid.push_back(t);
    }
    if (grid.size() != rows) continue;
    std::vector<double> column;
    column.reserve(rows);
    for (std::size_t k = 0; k < rows; ++k) {
      std::vector<double> at_k;
      at_k.reserve(curves.size());
      for (const auto& curve : curves) at_k.push_back(curve[k].second);
      column.push_back(median(std::move(at_k)));
    }
    curve_topologies.push_back(topology);
    curve_columns.push_back(std::move(column));
  }

  std::vector<std::string> files{"sweep_summary.json"};
  if (!curve_topologies.empty()) {
    std::ofstream out = open_text_file(root / "comparison.csv");
    out << "t";
    for (const std::string& topology : curve_topologies) out << ',' << topology;
    out << '\n';
    for (std::size_t k = 0; k < grid.size(); ++k) {
      out << grid[k];
      for (const auto& column : curve_columns) out << ',' << dfp::format_double(column[k]);
      out << '\n';
    }
    files.push_back("comparison.csv");
  }

  ordered_json sweep_summary;
  sweep_summary["config"] = base;
  sweep_summary["seeds"] = seeds;
  sweep_summary["topologies"] = topologies;
  sweep_summary["strict"] = strict;
  sweep_summary["runs"] = ordered_json::array();
  for (const ChildOutcome& outcome : outcomes) {
    ordered_json row;
    row["topology"] = outcome.topology;
    row["seed"] = outcome.seed;
    row["dir"] = outcome.dir;
    row["exit_code"] = outcome.exit_code;
    row["status"] = outcome.status;
    if (outcome.exit_code == kExitOk) {
      row["ne_hit_time"] = outcome.summary.at("ne_hit_time");
      row["final"] = outcome.summary.at("final");
    }
    sweep_summary["runs"].push_back(std::move(row));
  }
  sweep_summary["aggregates"] = aggregates;
  sweep_summary["files"] = files;
  open_text_file(root / "sweep_summary.json") << sweep_summary.dump(2) << '\n';

  std::cout << "sweep summary: " << (root / "sweep_summary.json").string() << '\n';
  return worst_exit;
}

// ---------------------------------------------------------------------------
// oracle tables

// A window-connected random sequence: a fresh spanning tree (plus coin-flip
// extras) at every multiple of T, an arbitrary random subset in between.
// Pure in (seed, t): any step can be replayed in isolation.
dfp::EdgeSet oracle_snapshot(int n, int T, std::uint64_t seed, long t) {
  dfp::RandomStream rng(dfp::mix_seed(seed, 0x6C656D31ULL, static_cast<std::uint64_t>(t)));
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
  return edges;
}

dfp::WeightMatrix oracle_matrix(int n, int T, double eta, std::uint64_t seed, long t) {
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n));
  for (const auto& [a, b] : oracle_snapshot(n, T, seed, t)) {
    adjacency[static_cast<std::size_t>(a)].push_back(b);
    adjacency[static_cast<std::size_t>(b)].push_back(a);
  }
  return dfp::build_weight_matrix(dfp::WeightScheme(eta), n - 1, adjacency);
}

std::ostream& oracle_stream(const std::string& out_file, std::ofstream& file) {
  if (out_file.empty()) return std::cout;
  file = open_text_file(out_file);
  return file;
}

int cmd_oracle_lemma1(int n, int T, double eta, long t_max, long s, std::uint64_t seed,
                      const std::string& out_file) {
  if (n < 2) throw dfp::ConfigError("lemma1 oracle needs n >= 2");
  if (T < 1) throw dfp::ConfigError("lemma1 oracle needs T >= 1");
  if (s < 0 || t_max < s) throw dfp::ConfigError("lemma1 oracle needs 0 <= s <= t-max");
  if (eta <= 0.0) eta = 1.0 / static_cast<double>(n);
  if (eta > 1.0 / static_cast<double>(n))
    throw dfp::ConfigError("eta exceeds 1/n; uniform averaging cannot honor it");

  std::ofstream file;
  std::ostream& out = oracle_stream(out_file, file);
  out << "t,s,actual_maxdev,kappa_rho_bound\n";

  dfp::MatrixProduct phi(oracle_matrix(n, T, eta, seed, s), s);
  for (long t = s;; ++t) {
    if (t > s) phi.left_multiply(oracle_matrix(n, T, eta, seed, t));
    out << t << ',' << s << ',' << dfp::format_double(phi.max_deviation_from_limit()) << ','
        << dfp::format_double(dfp::decay_bound(n, eta, T, t, s).value) << '\n';
    if (t == t_max) break;
  }
  if (!out) throw std::runtime_error("oracle table write failed");
  return kExitOk;
}

int cmd_oracle_tracking(int n, long horizon, std::uint64_t seed, int cadence,
                        const std::string& out_file) {
  if (n < 2) throw dfp::ConfigError("tracking oracle needs n >= 2");
  if (horizon < 1) throw dfp::ConfigError("tracking oracle needs horizon >= 1");
  if (cadence < 1) throw dfp::ConfigError("tracking oracle needs cadence >= 1");

  const dfp::GraphSequence graph = dfp::GraphSequence::edge_cycle(n, dfp::BaseTopology::ring);
  const dfp::WeightScheme scheme(1.0 / static_cast<double>(n));
  const int tracked = n - 1;

  // The tracked coordinate follows an empirical two-action frequency, whose
  // per-step movement is at most 1/t.
  dfp::RandomStream rng(dfp::mix_seed(seed, 0x7472616BULL));
  std::vector<double> freq{0.0, 0.0};
  freq[rng.uniform_int(2)] = 1.0;
  dfp::TrackingState state{std::vector<double>(static_cast<std::size_t>(n), freq[0]), 0};

  std::ofstream file;
  std::ostream& out = oracle_stream(out_file, file);
  out << "t,max_error,normalized_error\n";

  std::vector<std::vector<int>> adjacency;
  for (long t = 1; t <= horizon; ++t) {
    freq = dfp::update_frequency(freq, t, rng.uniform_int(2));
    graph.adjacency_at(t, adjacency);
    const dfp::WeightMatrix w = dfp::build_weight_matrix(scheme, tracked, adjacency);
    state = dfp::step_tracking(state, w, freq[0]);

    if (t % cadence != 0 && t != horizon) continue;
    double max_error = 0.0;
    for (int i = 0; i < n; ++i)
      max_error = std::max(max_error, std::abs(state.x[static_cast<std::size_t>(i)] - freq[0]));
    const double normalized =
        t >= 2 ? max_error * static_cast<double>(t) / std::log(static_cast<double>(t)) : 0.0;
    out << t << ',' << dfp::format_double(max_error) << ',' << dfp::format_double(normalized)
        << '\n';
  }
  if (!out) throw std::runtime_error("oracle table write failed");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized fictitious-play simulator"};
  app.require_subcommand(1);

  // run
  std::string run_config;
  std::string run_out = default_out_root();
  bool run_strict = false;
  bool run_svg = false;
  CLI::App* run_cmd = app.add_subcommand("run", "Execute one configured simulation");
  run_cmd->add_option("config", run_config, "JSON config file")->required();
  run_cmd->add_option("--out", run_out, "Output directory (default: $DFP_OUT or ./out)");
  run_cmd->add_flag("--strict", run_strict, "Fail (exit 3) when the sequence is not window-connected");
  run_cmd->add_flag("--svg", run_svg, "Also emit SVG charts");

  // validate
  std::string validate_config;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Check connectivity and weight bounds of a config");
  validate_cmd->add_option("config", validate_config, "JSON config file")->required();

  // sweep
  std::string sweep_config;
  std::string sweep_out = default_out_root();
  std::vector<std::string> sweep_seeds;
  std::vector<std::string> sweep_topologies;
  bool sweep_strict = false;
  bool sweep_svg = false;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a seed x topology grid and aggregate");
  sweep_cmd->add_option("config", sweep_config, "JSON config file")->required();
  sweep_cmd->add_option("--seeds", sweep_seeds, "Comma-separated run seeds")
      ->required()
      ->delimiter(',');
  sweep_cmd
      ->add_option("--topologies", sweep_topologies,
                   "Comma-separated tokens <static|cycle|random>-<ring|star|complete>; "
                   "default: the config's own graph")
      ->delimiter(',');
  sweep_cmd->add_option("--out", sweep_out, "Output root (default: $DFP_OUT or ./out)");
  sweep_cmd->add_flag("--strict", sweep_strict, "Children fail on disconnected sequences");
  sweep_cmd->add_flag("--svg", sweep_svg, "Child runs also emit SVG charts");

  // oracle
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Consensus-bound reference tables");
  oracle_cmd->require_subcommand(1);

  int lemma1_n = 5;
  int lemma1_T = 3;
  double lemma1_eta = 0.0;  // 0 = default 1/n
  long lemma1_t_max = 500;
  long lemma1_s = 0;
  std::uint64_t lemma1_seed = 1;
  std::string lemma1_out;
  CLI::App* lemma1_cmd = oracle_cmd->add_subcommand(
      "lemma1", "Deviation of backward products from their rank-one limit vs the decay bound");
  lemma1_cmd->add_option("--n", lemma1_n, "Agent count (default 5)");
  lemma1_cmd->add_option("--T", lemma1_T, "Connectivity window (default 3)");
  lemma1_cmd->add_option("--eta", lemma1_eta, "Weight floor (default 1/n)");
  lemma1_cmd->add_option("--t-max", lemma1_t_max, "Last step (default 500)");
  lemma1_cmd->add_option("--s", lemma1_s, "Product start step (default 0)");
  lemma1_cmd->add_option("--seed", lemma1_seed, "Sequence seed (default 1)");
  lemma1_cmd->add_option("--out", lemma1_out, "CSV file (default: stdout)");

  int tracking_n = 5;
  long tracking_horizon = 10000;
  std::uint64_t tracking_seed = 1;
  int tracking_cadence = 10;
  std::string tracking_out;
  CLI::App* tracking_cmd = oracle_cmd->add_subcommand(
      "tracking", "Tracking error of the averaging recursion against a slowing input");
  tracking_cmd->add_option("--n", tracking_n, "Agent count (default 5)");
  tracking_cmd->add_option("--horizon", tracking_horizon, "Steps (default 10000)");
  tracking_cmd->add_option("--seed", tracking_seed, "Run seed (default 1)");
  tracking_cmd->add_option("--cadence", tracking_cadence, "Row every this many steps (default 10)");
  tracking_cmd->add_option("--out", tracking_out, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(run_config, run_out, run_strict, run_svg);
    if (*validate_cmd) return cmd_validate(validate_config);
    if (*sweep_cmd)
      return cmd_sweep(sweep_config, sweep_seeds, sweep_topologies, sweep_out, sweep_strict,
                       sweep_svg);
    if (*lemma1_cmd)
      return cmd_oracle_lemma1(lemma1_n, lemma1_T, lemma1_eta, lemma1_t_max, lemma1_s, lemma1_seed,
                               lemma1_out);
    if (*tracking_cmd)
      return cmd_oracle_tracking(tracking_n, tracking_horizon, tracking_seed, tracking_cadence,
                                 tracking_out);
  } catch (const ConnectivityFailure& failure) {
    std::cerr << "error: sequence is not " << failure.report.window
              << "-window connected (first failing window starts at t="
              << failure.report.first_failing_window_start.value_or(-1) << ")\n";
    return kExitConnectivity;
  } catch (const dfp::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}
