#include "dfp/config.hpp"

#include <fstream>
#include <initializer_list>

#include "dfp/rng.hpp"

namespace dfp {
namespace {

using nlohmann::ordered_json;

void require_object(const ordered_json& value, const std::string& name) {
  if (!value.is_object()) throw ConfigError("section '" + name + "' must be an object");
}

void reject_unknown_keys(const ordered_json& obj, const std::string& section,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) throw ConfigError("unknown key '" + item.key() + "' in section '" + section + "'");
  }
}

const ordered_json& require_key(const ordered_json& obj, const std::string& section,
                                const char* key) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ConfigError("section '" + section + "' is missing required key '" + std::string(key) + "'");
  return *it;
}

double as_number(const ordered_json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

long as_integer(const ordered_json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ConfigError(what + " must be an integer");
  return v.get<long>();
}

std::uint64_t as_seed(const ordered_json& v, const std::string& what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ConfigError(what + " must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

BaseTopology parse_base_name(const std::string& name) {
  if (name == "ring") return BaseTopology::ring;
  if (name == "star") return BaseTopology::star;
  if (name == "complete") return BaseTopology::complete;
  throw ConfigError("unknown graph base '" + name + "' (use ring, star, complete, or an edge list)");
}

GraphSequence parse_graph(const ordered_json& section) {
  require_object(section, "graph");
  reject_unknown_keys(section, "graph", {"kind", "base", "n", "T", "p", "seed"});

  const std::string kind = require_key(section, "graph", "kind").get<std::string>();
  const int n = static_cast<int>(as_integer(require_key(section, "graph", "n"), "graph.n"));

  BaseTopology base = BaseTopology::ring;
  EdgeSet explicit_edges;
  const ordered_json& base_value = require_key(section, "graph", "base");
  if (base_value.is_string()) {
    base = parse_base_name(base_value.get<std::string>());
  } else if (base_value.is_array()) {
    base = BaseTopology::explicit_edges;
    for (const auto& e : base_value) {
      if (!e.is_array() || e.size() != 2)
        throw ConfigError("graph.base edge entries must be [i, j] pairs");
      explicit_edges.emplace_back(static_cast<int>(as_integer(e[0], "edge endpoint")),
                                  static_cast<int>(as_integer(e[1], "edge endpoint")));
    }
  } else {
    throw ConfigError("graph.base must be a topology name or an edge list");
  }

  const bool random = kind == "seeded-random";
  if (!random && (section.contains("p") || section.contains("seed")))
    throw ConfigError("graph.p and graph.seed apply only to kind 'seeded-random'");

  try {
    if (kind == "static") return GraphSequence::static_graph(n, base, explicit_edges);
    if (kind == "edge-cycle") return GraphSequence::edge_cycle(n, base, explicit_edges);
    if (random) {
      const double p = as_number(require_key(section, "graph", "p"), "graph.p");
      const std::uint64_t seed = as_seed(require_key(section, "graph", "seed"), "graph.seed");
      return GraphSequence::seeded_random(n, base, p, seed, explicit_edges);
    }
  } catch (const ContractError& e) {
    throw ConfigError(std::string("graph: ") + e.what());
  }
  throw ConfigError("unknown graph kind '" + kind + "' (use static, edge-cycle, seeded-random)");
}

GameSpec make_identical_2x2(const std::array<std::array<double, 2>, 2>& payoffs) {
  ActionSpace actions({2, 2});
  StateSpace states = StateSpace::parametric(1);
  return GameSpec(std::move(actions), std::move(states),
                  [payoffs](std::span<const int> a, std::span<const double>) {
                    return payoffs[static_cast<std::size_t>(a[0])][static_cast<std::size_t>(a[1])];
                  });
}

}  // namespace

ResolvedConfig parse_config(const ordered_json& doc) {
  require_object(doc, "<root>");
  reject_unknown_keys(doc, "<root>", {"game", "graph", "weights", "learning", "run"});

  const ordered_json& game_section = require_key(doc, "<root>", "game");
  require_object(game_section, "game");
  const ordered_json& run_section = require_key(doc, "<root>", "run");
  require_object(run_section, "run");
  reject_unknown_keys(run_section, "run", {"horizon", "seed", "cadence"});

  GraphSequence graph = parse_graph(require_key(doc, "<root>", "graph"));
  const int n = graph.agents();
  const int window = static_cast<int>(
      as_integer(require_key(doc.at("graph"), "graph", "T"), "graph.T"));
  if (window < 1) throw ConfigError("graph.T must be at least 1");

  // Weights section (optional): eta defaults to 1/n, the exact floor the
  // uniform closed-neighborhood rule guarantees.
  double eta = 1.0 / static_cast<double>(n);
  bool extra_round = false;
  if (doc.contains("weights")) {
    const ordered_json& w = doc.at("weights");
    require_object(w, "weights");
    reject_unknown_keys(w, "weights", {"eta", "extra_exchange_round"});
    if (w.contains("eta")) eta = as_number(w.at("eta"), "weights.eta");
    if (w.contains("extra_exchange_round")) {
      if (!w.at("extra_exchange_round").is_boolean())
        throw ConfigError("weights.extra_exchange_round must be a boolean");
      extra_round = w.at("extra_exchange_round").get<bool>();
    }
  }
  if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("weights.eta must lie in (0, 1)");
  if (eta > 1.0 / static_cast<double>(n))
    throw ConfigError("weights.eta exceeds 1/n; uniform averaging cannot honor it");

  // Learning section (optional): target assignment defaults to noisy
  // running-mean signals, the state-free game to a fixed belief.
  const std::string game_kind = require_key(game_section, "game", "kind").get<std::string>();
  std::string process = game_kind == "identical-2x2" ? "fixed" : "running-mean";
  double noise_scale = 0.05;
  if (doc.contains("learning")) {
    const ordered_json& l = doc.at("learning");
    require_object(l, "learning");
    reject_unknown_keys(l, "learning", {"process", "noise_scale"});
    if (l.contains("process")) process = l.at("process").get<std::string>();
    if (l.contains("noise_scale")) noise_scale = as_number(l.at("noise_scale"), "learning.noise_scale");
  }
  if (process != "running-mean" && process != "fixed")
    throw ConfigError("learning.process must be 'running-mean' or 'fixed'");
  if (!(noise_scale >= 0.0)) throw ConfigError("learning.noise_scale must be nonnegative");

  // Game section.
  std::optional<TargetWorld> world;
  std::optional<GameSpec> game;
  StatePoint theta_true;
  std::vector<JointAction> ne_set;
  if (game_kind == "target-assignment") {
    reject_unknown_keys(game_section, "game", {"kind", "seed"});
    const std::uint64_t world_seed = as_seed(require_key(game_section, "game", "seed"), "game.seed");
    try {
      world = make_benchmark(world_seed, noise_scale, n);
      game = make_game(*world);
      theta_true = flatten_targets(*world);
      if (n <= 7) ne_set = enumerate_pure_ne(*world, theta_true);
    } catch (const ContractError& e) {
      throw ConfigError(std::string("game: ") + e.what());
    }
  } else if (game_kind == "identical-2x2") {
    reject_unknown_keys(game_section, "game", {"kind", "seed", "payoffs"});
    if (n != 2) throw ConfigError("identical-2x2 needs graph.n = 2");
    std::array<std::array<double, 2>, 2> payoffs{};
    if (game_section.contains("payoffs")) {
      if (game_section.contains("seed"))
        throw ConfigError("game.seed and game.payoffs are mutually exclusive");
      const ordered_json& p = game_section.at("payoffs");
      if (!p.is_array() || p.size() != 2 || !p[0].is_array() || p[0].size() != 2 ||
          !p[1].is_array() || p[1].size() != 2)
        throw ConfigError("game.payoffs must be a 2x2 array");
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          payoffs[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
              as_number(p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], "payoff");
    } else {
      const std::uint64_t game_seed =
          as_seed(require_key(game_section, "game", "seed"), "game.seed");
      RandomStream rng(mix_seed(game_seed, 0x32783200ULL));
      for (auto& row : payoffs)
        for (double& v : row) v = rng.uniform01();
    }
    game = make_identical_2x2(payoffs);
    theta_true = {0.0};
    const StateBelief belief = StateBelief::point_mass({0.0});
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const JointAction profile{a, b};
        if (is_pure_nash(*game, profile, belief)) ne_set.push_back(profile);
      }
    }
  } else {
    throw ConfigError("unknown game kind '" + game_kind +
                      "' (use target-assignment or identical-2x2)");
  }

  SimConfig sim(std::move(*game), std::move(graph), WeightScheme(eta));
  sim.horizon = as_integer(require_key(run_section, "run", "horizon"), "run.horizon");
  if (sim.horizon < 1) throw ConfigError("run.horizon must be at least 1");
  sim.seed = as_seed(require_key(run_section, "run", "seed"), "run.seed");
  sim.cadence = 1;
  if (run_section.contains("cadence")) {
    sim.cadence = static_cast<int>(as_integer(run_section.at("cadence"), "run.cadence"));
    if (sim.cadence < 1) throw ConfigError("run.cadence must be at least 1");
  }
  sim.connectivity_window = window;
  sim.extra_exchange_round = extra_round;
  sim.theta_true = std::move(theta_true);
  sim.ne_set = std::move(ne_set);
  sim.learning.kind = process == "running-mean" ? LearningConfig::Kind::running_mean
                                                : LearningConfig::Kind::fixed;
  sim.learning.noise_scale = noise_scale;
  if (sim.learning.kind == LearningConfig::Kind::fixed)
    sim.learning.fixed_belief = StateBelief::point_mass(sim.theta_true);

  ResolvedConfig resolved{std::move(sim), doc, game_kind, std::move(world)};
  return resolved;
}

ResolvedConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(doc);
}

}  // namespace dfp
