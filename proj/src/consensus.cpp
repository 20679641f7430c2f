#include "dfp/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dfp {
namespace {

void check_square_args(int tracked, int n) {
  if (n < 2) throw ContractError("averaging needs at least two agents");
  if (tracked < 0 || tracked >= n) throw ContractError("tracked agent out of range");
}

}  // namespace

WeightScheme::WeightScheme(double eta_) : eta(eta_) {
  if (!(eta > 0.0 && eta < 1.0)) throw ContractError("weight floor must lie in (0, 1)");
}

WeightMatrix WeightMatrix::from_rows(int tracked, int n, std::vector<double> row_major) {
  check_square_args(tracked, n);
  if (row_major.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw ContractError("weight matrix data has wrong size");
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const double w = row_major[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                 static_cast<std::size_t>(k)];
      if (!(w >= 0.0 && w <= 1.0)) throw ContractError("weight outside [0, 1]");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw ContractError("row " + std::to_string(i) + " does not sum to one within 1e-12");
  }
  for (int k = 0; k < n; ++k) {
    const double w = row_major[static_cast<std::size_t>(tracked) * static_cast<std::size_t>(n) +
                               static_cast<std::size_t>(k)];
    if (w != (k == tracked ? 1.0 : 0.0))
      throw ContractError("tracked row must be exactly the tracked basis vector");
  }
  return WeightMatrix(tracked, n, std::move(row_major));
}

void WeightMatrix::apply(std::span<const double> x, std::span<double> out) const {
  if (x.size() != static_cast<std::size_t>(n_) || out.size() != static_cast<std::size_t>(n_))
    throw ContractError("vector length does not match matrix size");
  for (int i = 0; i < n_; ++i) {
    const std::span<const double> r = row(i);
    double acc = 0.0;
    bool first = true;
    for (int k = 0; k < n_; ++k) {
      const double w = r[static_cast<std::size_t>(k)];
      if (w == 0.0) continue;
      // First term assigns so a basis-vector row copies its source exactly.
      if (first) {
        acc = w * x[static_cast<std::size_t>(k)];
        first = false;
      } else {
        acc += w * x[static_cast<std::size_t>(k)];
      }
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
}

double WeightMatrix::min_positive_entry() const {
  double best = std::numeric_limits<double>::infinity();
  for (double w : data_) {
    if (w > 0.0 && w < best) best = w;
  }
  return best;
}

WeightMatrix build_weight_matrix(const WeightScheme& scheme, int tracked,
                                 const std::vector<std::vector<int>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  check_square_args(tracked, n);
  if (scheme.eta > 1.0 / static_cast<double>(n))
    throw ContractError("weight floor exceeds 1/n; uniform averaging cannot honor it");
  for (int i = 0; i < n; ++i) {
    for (int j : adjacency[static_cast<std::size_t>(i)]) {
      if (j < 0 || j >= n) throw ContractError("neighbor index out of range");
      if (j == i) throw ContractError("self-loop in adjacency");
      const auto& back = adjacency[static_cast<std::size_t>(j)];
      if (std::find(back.begin(), back.end(), i) == back.end())
        throw ContractError("adjacency is not symmetric");
    }
  }

  std::vector<double> data(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double* row = data.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
    if (i == tracked) {
      row[tracked] = 1.0;
      continue;
    }
    const auto& nbrs = adjacency[static_cast<std::size_t>(i)];
    const double w = 1.0 / static_cast<double>(nbrs.size() + 1);
    row[i] = w;
    for (int j : nbrs) row[j] = w;
  }
  return WeightMatrix::from_rows(tracked, n, std::move(data));
}

MatrixProduct::MatrixProduct(const WeightMatrix& first, long s)
    : tracked_(first.tracked()),
      n_(first.size()),
      from_(s),
      to_(s),
      min_factor_entry_(first.min_positive_entry()),
      scratch_(static_cast<std::size_t>(first.size()) * static_cast<std::size_t>(first.size())) {
  data_.reserve(scratch_.size());
  for (int i = 0; i < n_; ++i) {
    const auto r = first.row(i);
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

void MatrixProduct::left_multiply(const WeightMatrix& next) {
  if (next.size() != n_) throw ContractError("factor size does not match product");
  if (next.tracked() != tracked_) throw ContractError("factor tracks a different agent");
  for (int i = 0; i < n_; ++i) {
    const auto r = next.row(i);
    for (int j = 0; j < n_; ++j) {
      double acc = 0.0;
      bool first = true;
      for (int k = 0; k < n_; ++k) {
        const double w = r[static_cast<std::size_t>(k)];
        if (w == 0.0) continue;
        const double term = w * at(k, j);
        if (first) {
          acc = term;
          first = false;
        } else {
          acc += term;
        }
      }
      scratch_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j)] = acc;
    }
  }
  data_.swap(scratch_);
  ++to_;
  min_factor_entry_ = std::min(min_factor_entry_, next.min_positive_entry());

  for (int i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n_; ++j) sum += at(i, j);
    if (std::abs(sum - 1.0) > 1e-9)
      throw ContractError("product row drifted from stochasticity beyond 1e-9");
  }
}

double MatrixProduct::max_deviation_from_limit() const {
  double dev = 0.0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const double limit = (j == tracked_) ? 1.0 : 0.0;
      dev = std::max(dev, std::abs(at(i, j) - limit));
    }
  }
  return dev;
}

MatrixProduct product_phi(std::span<const WeightMatrix> oldest_first, long s) {
  if (oldest_first.empty()) throw ContractError("product of an empty factor list");
  MatrixProduct phi(oldest_first.front(), s);
  for (std::size_t k = 1; k < oldest_first.size(); ++k) phi.left_multiply(oldest_first[k]);
  return phi;
}

DecayBound decay_bound(int n, double eta, int T, long t, long s) {
  if (n < 2) throw ContractError("decay bound needs at least two agents");
  if (!(eta > 0.0 && eta < 1.0)) throw ContractError("weight floor must lie in (0, 1)");
  if (T < 1) throw ContractError("connectivity window must be positive");
  if (t < s) throw ContractError("decay bound needs t >= s");

  const double d = static_cast<double>(n - 1) * static_cast<double>(T);
  const double base = 1.0 - std::pow(eta, d);
  DecayBound b;
  b.kappa = static_cast<double>(n - 1) / base;
  b.rho = std::pow(base, 1.0 / (d * static_cast<double>(T)));
  b.value = b.kappa * std::pow(b.rho, static_cast<double>(t - s));
  return b;
}

namespace {

void check_floor_consistency(const MatrixProduct& phi, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw ContractError("weight floor must lie in (0, 1)");
  if (phi.min_factor_entry() < eta - 1e-12)
    throw ContractError("product contains a factor entry below the claimed weight floor");
}

}  // namespace

bool check_product_positivity(const MatrixProduct& phi, double eta,
                              std::span<const std::pair<int, int>> window_edges,
                              std::span<const TwoHopLink> two_hops) {
  check_floor_consistency(phi, eta);
  const int n = phi.size();
  const double floor = std::pow(eta, static_cast<double>(phi.length())) - 1e-12;

  for (int i = 0; i < n; ++i) {
    if (phi.at(i, i) < floor) return false;
  }
  for (const auto& [a, b] : window_edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      throw ContractError("window edge out of range");
    if (a != phi.tracked() && phi.at(a, b) < floor) return false;
    if (b != phi.tracked() && phi.at(b, a) < floor) return false;
  }
  for (const auto& hop : two_hops) {
    if (hop.from < 0 || hop.via < 0 || hop.to < 0 || hop.from >= n || hop.via >= n || hop.to >= n)
      throw ContractError("two-hop witness out of range");
    if (hop.from == phi.tracked() || hop.via == phi.tracked())
      throw ContractError("two-hop witness may not route through the tracked agent");
    if (phi.at(hop.from, hop.to) < floor) return false;
  }
  return true;
}

bool check_window_column_positivity(const MatrixProduct& phi, double eta, int T) {
  check_floor_consistency(phi, eta);
  if (T < 1) throw ContractError("connectivity window must be positive");
  const int n = phi.size();
  const long expected = static_cast<long>(n - 1) * static_cast<long>(T);
  if (phi.length() != expected)
    throw ContractError("column positivity needs a product over exactly (n-1)*T steps");
  const double floor = std::pow(eta, static_cast<double>(expected)) - 1e-12;
  for (int i = 0; i < n; ++i) {
    if (phi.at(i, phi.tracked()) < floor) return false;
  }
  return true;
}

bool contraction_bound_holds(std::span<const double> x0, std::span<const WeightMatrix> steps,
                             double zeta) {
  if (x0.empty()) throw ContractError("empty disagreement vector");
  if (!(zeta > 0.0 && zeta <= 1.0)) throw ContractError("contraction floor must lie in (0, 1]");
  const int n = static_cast<int>(x0.size());
  int tracked = -1;
  for (const auto& d : steps) {
    if (d.size() != n) throw ContractError("contraction step size mismatch");
    if (tracked == -1) tracked = d.tracked();
    if (d.tracked() != tracked) throw ContractError("contraction steps track different agents");
    for (int i = 0; i < n; ++i) {
      if (d.at(i, tracked) < zeta)
        throw ContractError("contraction step column falls below the claimed floor");
    }
  }
  if (steps.empty()) return true;
  if (x0[static_cast<std::size_t>(tracked)] != 0.0)
    throw ContractError("tracked coordinate of the start vector must be zero");

  double x0_inf = 0.0;
  for (double v : x0) x0_inf = std::max(x0_inf, std::abs(v));

  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> next(x.size());
  double envelope = x0_inf;
  for (const auto& d : steps) {
    d.apply(x, next);
    x.swap(next);
    envelope *= 1.0 - zeta;
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (i == tracked) continue;
      worst = std::max(worst, x[static_cast<std::size_t>(i)]);
    }
    if (worst > envelope + 1e-12) return false;
  }
  return true;
}

TrackingState step_tracking(const TrackingState& state, const WeightMatrix& w,
                            double new_tracked_value) {
  if (state.x.size() != static_cast<std::size_t>(w.size()))
    throw ContractError("tracking state length does not match matrix size");
  TrackingState out;
  out.t = state.t + 1;
  std::vector<double> shifted = state.x;
  shifted[static_cast<std::size_t>(w.tracked())] = new_tracked_value;
  out.x.resize(state.x.size());
  w.apply(shifted, out.x);
  return out;
}

}  // namespace dfp
