#pragma once

// Optimal fixed threshold: exhaustive scan over attainable delays with the
// attacker best-responding to each.

#include <vector>

#include "optthresh/game.hpp"
#include "optthresh/types.hpp"

namespace optthresh {

struct FixedSolution {
  Delay optimal_delay = 0;
  double defender_loss = 0.0;
  Timestep best_response = 1;
  double attacker_payoff = 0.0;
};

// Payoff-maximizing attack start against a fixed delay; ties go to the
// earliest start.
BestResponse best_response_fixed(const DamageSeries& damage, Delay delay);
BestResponse best_response_fixed(const IntervalSums& sums, Delay delay);

// Payoff of every attack start 1..T against `delay` (index k-1).
std::vector<double> fixed_payoff_trace(const IntervalSums& sums, Delay delay);

// Minimizes C·FP(δ)·T + max_{k_a} P(δ, k_a) over δ in the curve. Ties go to
// the smaller delay. Throws ConfigError on an empty curve or horizon mismatch.
FixedSolution solve_fixed(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config);

}  // namespace optthresh
