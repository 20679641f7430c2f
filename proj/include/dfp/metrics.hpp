#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dfp/engine.hpp"
#include "dfp/game.hpp"

namespace dfp {

// Sum over ordered pairs (j, i) of the L2 distance between agent i's
// estimate of agent j's frequency and the true f_j.
double estimate_error(const World& world);

// The agents' current frequencies as validated mixed strategies.
StrategyProfile frequency_profile(const World& world);

// Distance from `f` to the nearest pure profile in ne_set, each lifted to
// a one-hot mixed profile.  ne_set must be nonempty and every profile must
// index into f's action sets.
double ne_distance(const StrategyProfile& f, std::span<const JointAction> ne_set);
double ne_distance(const World& world, std::span<const JointAction> ne_set);

// Fit of error(t) ~ C log(t)/t over recorded points with t in
// [t_min, t_max]: C is the max of error*t/log(t) on the window and slope
// is the least-squares trend of that normalized series against t.  The
// rate claim passes when the normalized series is non-increasing up to the
// tolerance (slope <= slope_tolerance).
struct RateFit {
  double C = 0.0;
  double slope = 0.0;
  long t_min = 0;
  long t_max = 0;
  double slope_tolerance = 1e-7;
  bool passes = false;
};

// Requires t_min >= 10 and at least 20 points with t >= t_min.
RateFit fit_rate(std::span<const std::pair<long, double>> series, long t_min,
                 double slope_tolerance = 1e-7);

// Smallest recorded t such that every recorded profile from t onward lies
// in ne_set; absent when the final recorded profile is outside the set.
std::optional<long> ne_hit_time(const SimTrace& trace, std::span<const JointAction> ne_set);

}  // namespace dfp
