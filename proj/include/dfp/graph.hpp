#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dfp/errors.hpp"

namespace dfp {

// Undirected edge list: pairs normalized to (low, high), sorted, unique.
using EdgeSet = std::vector<std::pair<int, int>>;

enum class GraphKind { static_graph, edge_cycle, seeded_random };
enum class BaseTopology { ring, star, complete, explicit_edges };

EdgeSet make_topology(int n, BaseTopology base, const EdgeSet& explicit_edges = {});

// True when (n, edges) forms one connected component.
bool is_connected(int n, const EdgeSet& edges);

// A deterministic time-varying communication graph over n agents.  Every
// snapshot is undirected and self-loop free.  edges_at is a pure function
// of (construction parameters, t): replaying any t yields the same edges.
//
//   static_graph   every step presents the full base edge set;
//   edge_cycle     step t presents the single edge base[t mod |base|];
//   seeded_random  step t keeps each base edge independently with
//                  probability p, drawn from a stream derived from
//                  (seed, t) alone.
class GraphSequence {
 public:
  static GraphSequence static_graph(int n, BaseTopology base, EdgeSet explicit_edges = {});
  static GraphSequence edge_cycle(int n, BaseTopology base, EdgeSet explicit_edges = {});
  static GraphSequence seeded_random(int n, BaseTopology base, double p, std::uint64_t seed,
                                     EdgeSet explicit_edges = {});

  int agents() const { return n_; }
  GraphKind kind() const { return kind_; }
  const EdgeSet& base_edges() const { return base_edges_; }

  EdgeSet edges_at(long t) const;
  std::vector<int> neighbors(int agent, long t) const;

  // Writes closed-neighborhood adjacency for step t into `adj` (reused
  // buffer; self excluded from each list).
  void adjacency_at(long t, std::vector<std::vector<int>>& adj) const;

  std::optional<long> horizon_hint;

 private:
  GraphSequence(int n, GraphKind kind, BaseTopology base, EdgeSet edges, double p,
                std::uint64_t seed);
  int n_ = 0;
  GraphKind kind_ = GraphKind::static_graph;
  BaseTopology base_ = BaseTopology::ring;
  EdgeSet base_edges_;
  double p_ = 0.0;
  std::uint64_t seed_ = 0;
};

// Result of scanning [t_start, t_end] in windows of length `window`.
struct WindowConnectivityReport {
  int window = 0;
  long t_start = 0;
  long t_end = 0;
  bool connected = false;
  // First window start whose union graph is disconnected, when any.
  std::optional<long> first_failing_window_start;
  long windows_checked = 0;
};

// Checks that the union graph over every length-`window` interval starting
// in [t_start, t_end - window + 1] is connected.  A span shorter than one
// window is checked as a single union over the whole span.
WindowConnectivityReport validate_window_connectivity(const GraphSequence& graph, int window,
                                                      long t_start, long t_end);

}  // namespace dfp
