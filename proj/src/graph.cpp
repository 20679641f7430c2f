#include "dfp/graph.hpp"

#include <algorithm>
#include <queue>

#include "dfp/rng.hpp"

namespace dfp {
namespace {

EdgeSet normalize_edges(int n, EdgeSet edges) {
  for (auto& [a, b] : edges) {
    if (a == b) throw ContractError("self-loop in edge list");
    if (a < 0 || b < 0 || a >= n || b >= n) throw ContractError("edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

EdgeSet make_topology(int n, BaseTopology base, const EdgeSet& explicit_edges) {
  if (n < 2) throw ContractError("topology needs at least two agents");
  EdgeSet edges;
  switch (base) {
    case BaseTopology::ring:
      for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
      break;
    case BaseTopology::star:
      for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
      break;
    case BaseTopology::complete:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
      break;
    case BaseTopology::explicit_edges:
      edges = explicit_edges;
      break;
  }
  return normalize_edges(n, std::move(edges));
}

bool is_connected(int n, const EdgeSet& edges) {
  if (n <= 1) return true;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int u : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++reached;
        frontier.push(u);
      }
    }
  }
  return reached == n;
}

GraphSequence::GraphSequence(int n, GraphKind kind, BaseTopology base, EdgeSet edges, double p,
                             std::uint64_t seed)
    : n_(n), kind_(kind), base_(base), base_edges_(std::move(edges)), p_(p), seed_(seed) {}

GraphSequence GraphSequence::static_graph(int n, BaseTopology base, EdgeSet explicit_edges) {
  return GraphSequence(n, GraphKind::static_graph, base, make_topology(n, base, explicit_edges),
                       0.0, 0);
}

GraphSequence GraphSequence::edge_cycle(int n, BaseTopology base, EdgeSet explicit_edges) {
  EdgeSet edges = make_topology(n, base, explicit_edges);
  if (edges.empty()) throw ContractError("edge cycle over an empty edge set");
  return GraphSequence(n, GraphKind::edge_cycle, base, std::move(edges), 0.0, 0);
}

GraphSequence GraphSequence::seeded_random(int n, BaseTopology base, double p, std::uint64_t seed,
                                           EdgeSet explicit_edges) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractError("edge probability must lie in [0, 1]");
  return GraphSequence(n, GraphKind::seeded_random, base, make_topology(n, base, explicit_edges),
                       p, seed);
}

EdgeSet GraphSequence::edges_at(long t) const {
  if (t < 0) throw ContractError("graph sequence is defined for t >= 0");
  switch (kind_) {
    case GraphKind::static_graph:
      return base_edges_;
    case GraphKind::edge_cycle: {
      const std::size_t m = base_edges_.size();
      return EdgeSet{base_edges_[static_cast<std::size_t>(t) % m]};
    }
    case GraphKind::seeded_random: {
      // One stream per step, derived from (seed, t) only, so any step can
      // be replayed in isolation.
      RandomStream rng(mix_seed(seed_, 0x6772617068ULL, static_cast<std::uint64_t>(t)));
      EdgeSet out;
      for (const auto& e : base_edges_) {
        if (rng.uniform01() < p_) out.push_back(e);
      }
      return out;
    }
  }
  throw ContractError("unknown graph kind");
}

std::vector<int> GraphSequence::neighbors(int agent, long t) const {
  if (agent < 0 || agent >= n_) throw ContractError("agent out of range");
  std::vector<int> out;
  for (const auto& [a, b] : edges_at(t)) {
    if (a == agent) out.push_back(b);
    if (b == agent) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void GraphSequence::adjacency_at(long t, std::vector<std::vector<int>>& adj) const {
  adj.resize(static_cast<std::size_t>(n_));
  for (auto& list : adj) list.clear();
  for (const auto& [a, b] : edges_at(t)) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
}

WindowConnectivityReport validate_window_connectivity(const GraphSequence& graph, int window,
                                                      long t_start, long t_end) {
  if (window < 1) throw ContractError("connectivity window must be positive");
  if (t_start < 0 || t_end < t_start) throw ContractError("bad connectivity scan range");

  WindowConnectivityReport report;
  report.window = window;
  report.t_start = t_start;
  report.t_end = t_end;
  report.connected = true;

  const long span = t_end - t_start + 1;
  const long last_start = span < window ? t_start : t_end - window + 1;
  for (long s = t_start; s <= last_start; ++s) {
    EdgeSet unioned;
    const long stop = std::min(t_end, s + window - 1);
    for (long t = s; t <= stop; ++t) {
      const EdgeSet step = graph.edges_at(t);
      unioned.insert(unioned.end(), step.begin(), step.end());
    }
    std::sort(unioned.begin(), unioned.end());
    unioned.erase(std::unique(unioned.begin(), unioned.end()), unioned.end());
    ++report.windows_checked;
    if (!is_connected(graph.agents(), unioned)) {
      report.connected = false;
      report.first_failing_window_start = s;
      break;
    }
  }
  return report;
}

}  // namespace dfp
