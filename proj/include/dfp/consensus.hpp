#pragma once

#include <span>
#include <vector>

#include "dfp/errors.hpp"

namespace dfp {

// Parameters of the averaging rule.  `eta` is the guaranteed floor on every
// positive weight a matrix built under this scheme may carry; the uniform
// rule gives each member of a closed neighborhood weight 1/(deg+1) >= 1/n,
// so eta must not exceed 1/n for the agent count in play (checked when a
// matrix is built).
struct WeightScheme {
  explicit WeightScheme(double eta);
  double eta;
};

// One averaging matrix W for a single tracked agent j.  Invariants held by
// construction and revalidated by from_rows:
//   * every row sums to one within 1e-12, entries in [0, 1];
//   * row `tracked` is exactly the basis vector e_tracked (the tracked
//     agent never dilutes its own value);
//   * positive entries appear only where the builder placed them.
class WeightMatrix {
 public:
  static WeightMatrix from_rows(int tracked, int n, std::vector<double> row_major);

  int size() const { return n_; }
  int tracked() const { return tracked_; }
  double at(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(col)];
  }
  std::span<const double> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(n_),
            static_cast<std::size_t>(n_)};
  }

  // out = W x.  Zero entries are skipped, so rows that are exactly a basis
  // vector copy their source bit-for-bit (no 0*x terms are accumulated).
  void apply(std::span<const double> x, std::span<double> out) const;

  // Smallest strictly positive entry.
  double min_positive_entry() const;

 private:
  WeightMatrix(int tracked, int n, std::vector<double> data)
      : tracked_(tracked), n_(n), data_(std::move(data)) {}
  int tracked_ = 0;
  int n_ = 0;
  std::vector<double> data_;
};

// Uniform closed-neighborhood averaging for one tracked agent: agent i != j
// places weight 1/(|N(i)|+1) on itself and each neighbor; agent j keeps
// weight 1 on itself.  `adjacency` lists neighbors per agent (self
// excluded) and must be symmetric.
WeightMatrix build_weight_matrix(const WeightScheme& scheme, int tracked,
                                 const std::vector<std::vector<int>>& adjacency);

// Backward product Phi(t, s) = W(t) W(t-1) ... W(s) of matrices sharing one
// tracked agent.  Grown one factor at a time on the left (newest step).
// Maintains: rows sum to one within 1e-9, the tracked row stays exactly
// e_tracked, and the smallest positive entry over all absorbed factors is
// recorded so bound checks can confirm eta-consistency.
class MatrixProduct {
 public:
  MatrixProduct(const WeightMatrix& first, long s);

  void left_multiply(const WeightMatrix& next);

  int size() const { return n_; }
  int tracked() const { return tracked_; }
  long from_step() const { return from_; }
  long to_step() const { return to_; }
  // Number of absorbed factors, t - s + 1.
  long length() const { return to_ - from_ + 1; }
  double at(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(col)];
  }
  double min_factor_entry() const { return min_factor_entry_; }

  // max_{i,j} |Phi_ij - (e_tracked^T)_j|: entrywise distance from the rank-
  // one limit in which every row equals e_tracked.
  double max_deviation_from_limit() const;

 private:
  int tracked_ = 0;
  int n_ = 0;
  long from_ = 0;
  long to_ = 0;
  double min_factor_entry_ = 1.0;
  std::vector<double> data_;
  std::vector<double> scratch_;
};

// Phi(t, s) from factors listed oldest first: {W(s), W(s+1), ..., W(t)}.
MatrixProduct product_phi(std::span<const WeightMatrix> oldest_first, long s);

// Geometric envelope kappa * rho^(t-s) on the entrywise distance between
// Phi(t, s) and its rank-one limit, for n agents averaging with weight
// floor eta under window-T connectivity:
//   kappa = (n-1) / (1 - eta^((n-1)T)),
//   rho   = (1 - eta^((n-1)T))^(1 / ((n-1)T^2)).
struct DecayBound {
  double kappa = 0.0;
  double rho = 0.0;
  double value = 0.0;
};
DecayBound decay_bound(int n, double eta, int T, long t, long s);

// Product positivity floor eta^(t-s+1) for Phi(t, s):
//   * every diagonal entry;
//   * both orientations of every edge in `window_edges` (an edge of some
//     snapshot inside [s, t]), rows other than the tracked one;
//   * optional two-hop witnesses (from, via, to): `via` adjacent to `to`
//     at some step in the window and to `from` at a later one (later
//     factors multiply on the left, so mass flows to -> via -> from).
// Throws ContractError when the product's recorded factor floor is below
// eta (the bound would be vacuous).  Returns true when every checked entry
// clears eta^(t-s+1) - 1e-12.
struct TwoHopLink {
  int from = 0;
  int via = 0;
  int to = 0;
};
bool check_product_positivity(const MatrixProduct& phi, double eta,
                              std::span<const std::pair<int, int>> window_edges,
                              std::span<const TwoHopLink> two_hops = {});

// For a product spanning exactly (n-1)*T consecutive steps of a window-T
// connected sequence, every entry of the tracked agent's column must be at
// least eta^((n-1)T) - 1e-12.
bool check_window_column_positivity(const MatrixProduct& phi, double eta, int T);

// Contraction of disagreement toward the tracked coordinate: given x0 with
// x0[tracked] = 0 and matrices D_1..D_K that are row-stochastic, hold row
// `tracked` = e_tracked and keep every entry of column `tracked` at least
// zeta, verifies max_i [D_k ... D_1 x0]_i <= (1 - zeta)^k * ||x0||_inf
// + 1e-12 for every k.  Matrices failing the column floor are a contract
// error, not a false return.
bool contraction_bound_holds(std::span<const double> x0, std::span<const WeightMatrix> steps,
                             double zeta);

// State of the averaging recursion that tracks one moving coordinate.
struct TrackingState {
  std::vector<double> x;
  long t = 0;
};

// One step of x(t+1) = W(t) (x(t) with the tracked coordinate replaced by
// new_tracked_value).  The tracked coordinate of the result equals
// new_tracked_value exactly.
TrackingState step_tracking(const TrackingState& state, const WeightMatrix& w,
                            double new_tracked_value);

}  // namespace dfp
