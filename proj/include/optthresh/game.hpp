#pragma once

// Closed-form quantities of the attacker/defender game: interval damage,
// detection time under a schedule, attacker payoffs and defender losses for
// fixed and adaptive strategies.
//
// Horizon clamping: damage accrues only through T. An attack that is not
// detected by T earns the damage of [k_a, T].
//
// Summation order is part of the contract. Interval damage is always summed
// in ascending k, and schedule_cost() accumulates from k = T down to 1, the
// same order the dynamic program uses. Equal inputs therefore produce equal
// bits on every route.

#include <cstddef>
#include <vector>

#include "optthresh/types.hpp"

namespace optthresh {

// Σ_{k=k_a}^{k_e} D(k). Requires 1 <= k_a <= k_e <= T.
double total_damage(const DamageSeries& damage, Timestep start, Timestep end);

// All interval sums Σ_{a}^{b} D(k), tabulated once. Each row accumulates in
// ascending k, so entries are bit-identical to total_damage().
class IntervalSums {
 public:
  explicit IntervalSums(const DamageSeries& damage);

  int horizon() const noexcept { return horizon_; }
  // Requires 1 <= start <= end <= T (unchecked).
  double operator()(Timestep start, Timestep end) const noexcept {
    return table_[row_offset(start) + static_cast<std::size_t>(end - start)];
  }

 private:
  std::size_t row_offset(Timestep start) const noexcept {
    // rows of length T, T-1, ..., 1
    const auto a = static_cast<std::size_t>(start - 1);
    const auto t = static_cast<std::size_t>(horizon_);
    return a * t - (a * (a - 1)) / 2;
  }

  int horizon_;
  std::vector<double> table_;
};

// σ(η⃗, k_a): first k in [k_a, T] with δ_k <= k - k_a.
DetectionOutcome detection_time(const ThresholdSchedule& schedule, Timestep start);

// Adaptive payoff: damage from k_a through detection (or T).
double attacker_payoff_adaptive(const DamageSeries& damage, const ThresholdSchedule& schedule, Timestep start);

// Fixed payoff: Σ_{k_a}^{min(k_a+δ, T)} D(k).
double attacker_payoff_fixed(const DamageSeries& damage, Delay delay, Timestep start);

// C·FP(δ)·T + fixed payoff.
double defender_loss_fixed(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                           Delay delay, Timestep start);

// Number of k in 1..T-1 with δ_k != δ_{k+1}.
int change_count(const ThresholdSchedule& schedule);

// Σ_k C·FP(δ_k) + N·C_d, accumulated from k = T backwards with C_d added at
// each step whose delay differs from its predecessor.
double schedule_cost(const TradeoffCurve& curve, const GameConfig& config, const ThresholdSchedule& schedule);

// schedule_cost() + adaptive payoff.
double defender_loss_adaptive(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                              const ThresholdSchedule& schedule, Timestep start);

// Throws ContractViolation unless the schedule spans the damage horizon and
// every entry is on the curve.
void check_schedule(const DamageSeries& damage, const TradeoffCurve& curve, const ThresholdSchedule& schedule);

}  // namespace optthresh
