#include "dfp/metrics.hpp"

#include <cmath>
#include <limits>

namespace dfp {

double estimate_error(const World& world) {
  const std::size_t n = world.agents.size();
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::vector<double>& truth = world.agents[j].freq;
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<double>& est = world.agents[i].estimates[j];
      if (est.size() != truth.size()) throw ContractError("estimate table shape mismatch");
      double sq = 0.0;
      for (std::size_t k = 0; k < truth.size(); ++k) {
        const double d = est[k] - truth[k];
        sq += d * d;
      }
      total += std::sqrt(sq);
    }
  }
  return total;
}

StrategyProfile frequency_profile(const World& world) {
  StrategyProfile f;
  f.reserve(world.agents.size());
  for (const AgentState& agent : world.agents) f.emplace_back(std::vector<double>(agent.freq));
  return f;
}

double ne_distance(const StrategyProfile& f, std::span<const JointAction> ne_set) {
  if (ne_set.empty()) throw ContractError("NE distance against an empty equilibrium set");
  double best = std::numeric_limits<double>::infinity();
  for (const JointAction& profile : ne_set) {
    if (profile.size() != f.size()) throw ContractError("equilibrium profile shape mismatch");
    StrategyProfile lifted;
    lifted.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
      lifted.push_back(MixedStrategy::one_hot(f[i].size(), profile[i]));
    best = std::min(best, strategy_distance(f, lifted));
  }
  return best;
}

double ne_distance(const World& world, std::span<const JointAction> ne_set) {
  return ne_distance(frequency_profile(world), ne_set);
}

RateFit fit_rate(std::span<const std::pair<long, double>> series, long t_min,
                 double slope_tolerance) {
  if (t_min < 10) throw ContractError("rate fit needs t_min >= 10 (log t conditioning)");

  // Normalized series y(t) = error(t) * t / log(t); under the claimed
  // error = O(log t / t) it stays bounded, so its trend must not rise.
  std::vector<double> ts;
  std::vector<double> ys;
  long t_max = t_min;
  for (const auto& [t, err] : series) {
    if (t < t_min) continue;
    ts.push_back(static_cast<double>(t));
    ys.push_back(err * static_cast<double>(t) / std::log(static_cast<double>(t)));
    t_max = std::max(t_max, t);
  }
  if (ts.size() < 20) throw ContractError("rate fit needs at least 20 points past t_min");

  RateFit fit;
  fit.t_min = t_min;
  fit.t_max = t_max;
  fit.slope_tolerance = slope_tolerance;
  for (double y : ys) fit.C = std::max(fit.C, y);

  double mean_t = 0.0;
  double mean_y = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    mean_t += ts[k];
    mean_y += ys[k];
  }
  mean_t /= static_cast<double>(ts.size());
  mean_y /= static_cast<double>(ts.size());
  double cov = 0.0;
  double var = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    cov += (ts[k] - mean_t) * (ys[k] - mean_y);
    var += (ts[k] - mean_t) * (ts[k] - mean_t);
  }
  fit.slope = var > 0.0 ? cov / var : 0.0;
  fit.passes = fit.slope <= slope_tolerance;
  return fit;
}

std::optional<long> ne_hit_time(const SimTrace& trace, std::span<const JointAction> ne_set) {
  auto in_set = [&](const JointAction& a) {
    for (const JointAction& profile : ne_set) {
      if (profile == a) return true;
    }
    return false;
  };

  std::optional<long> hit;
  // Walk backward: the hit time is the earliest record of the final
  // all-equilibrium suffix.
  for (auto it = trace.records.rbegin(); it != trace.records.rend(); ++it) {
    if (!in_set(it->actions)) break;
    hit = it->t;
  }
  return hit;
}

}  // namespace dfp
