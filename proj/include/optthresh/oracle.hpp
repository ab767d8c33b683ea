#pragma once

// Brute-force references for testing the solvers. They evaluate the game's
// definitions directly, enumerating every strategy, and refuse instances
// above a size bound instead of running for hours.

#include <cstdint>

#include "optthresh/adaptive_solver.hpp"
#include "optthresh/fixed_solver.hpp"
#include "optthresh/types.hpp"

namespace optthresh {

struct OracleLimits {
  int max_horizon = 12;                          // fixed game
  std::uint64_t max_schedules = 1'000'000;       // adaptive games, |Δ|^T
};

// Every (δ, k_a) pair; smallest δ, then earliest k_a, on ties.
FixedSolution oracle_fixed(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                           const OracleLimits& limits = {});

// Every schedule in lexicographic order; the first minimizer wins. The
// chosen cap is the returned schedule's worst-case payoff.
AdaptiveSolution oracle_adaptive(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                                 const OracleLimits& limits = {});

// Cheapest schedule (lexicographically first) whose worst payoff is <= cap.
MinCostResult oracle_min_cost(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                              DamageCap cap, const OracleLimits& limits = {});

}  // namespace optthresh
