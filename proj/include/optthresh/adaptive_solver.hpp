#pragma once

// Optimal adaptive thresholds.
//
// For a damage cap P, a backward dynamic program over (n, m, δ_{n-1}) finds
// the cheapest schedule (false-alarm cost plus change cost) under which no
// attack earns more than P, where m is the width of the window of attack
// starts that may still be undetected when step n begins. The outer search
// evaluates every interval sum of the damage series as P and keeps the one
// minimizing TC(P) + P.
//
// Infeasibility is +inf, which absorbs under addition. Inputs are validated
// finite, so +inf never meets NaN.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "optthresh/game.hpp"
#include "optthresh/types.hpp"

namespace optthresh {

struct DamageCap {
  double value = 0.0;
};

enum class DpMode {
  Lazy,   // memoized recursion from (1, 0), only referenced cells
  Eager,  // full backward sweep over every cell
};

struct MinCostResult {
  double total_cost = 0.0;  // +inf when infeasible
  std::optional<ThresholdSchedule> schedule;
  std::size_t cells_evaluated = 0;

  bool feasible() const noexcept { return schedule.has_value(); }
};

struct AdaptiveOptions {
  DpMode mode = DpMode::Lazy;
  unsigned threads = 0;  // 0: all hardware threads
};

struct AdaptiveStats {
  std::size_t caps_evaluated = 0;
  std::size_t feasible_caps = 0;
  std::size_t cells_evaluated = 0;
};

struct AdaptiveSolution {
  ThresholdSchedule schedule{std::vector<Delay>{0}};
  double total_cost = 0.0;  // TC(P*)
  double defender_loss = 0.0;
  Timestep best_response = 1;
  double attacker_payoff = 0.0;
  DamageCap chosen_cap;
  AdaptiveStats stats;
};

// Every Σ_{a}^{b} D(k), 1 <= a <= b <= T, deduplicated and ascending.
std::vector<double> damage_search_space(const DamageSeries& damage);

// Cheapest schedule whose worst attack earns at most `cap`, including attacks
// still undetected at the horizon.
MinCostResult minimum_cost_thresholds(const DamageSeries& damage, const TradeoffCurve& curve,
                                      const GameConfig& config, DamageCap cap, DpMode mode = DpMode::Lazy);

// TC(P) for each cap, evaluated independently (in parallel when allowed).
std::vector<double> cost_profile(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                                 std::span<const double> caps, const AdaptiveOptions& options = {});

AdaptiveSolution solve_adaptive(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                                const AdaptiveOptions& options = {});

// Payoff-maximizing attack start against a schedule; earliest start on ties.
BestResponse best_response_adaptive(const DamageSeries& damage, const ThresholdSchedule& schedule);

// Payoff of every attack start against a schedule (index k-1).
std::vector<double> adaptive_payoff_trace(const DamageSeries& damage, const ThresholdSchedule& schedule);

}  // namespace optthresh
