#include "optthresh/fixed_solver.hpp"

#include <algorithm>
#include <limits>

#include "optthresh/errors.hpp"
#include "optthresh/simd/kernels.hpp"

namespace optthresh {

namespace {

void fill_payoffs(const IntervalSums& sums, Delay delay, std::vector<double>& out) {
  const int t = sums.horizon();
  out.resize(static_cast<std::size_t>(t));
  for (Timestep start = 1; start <= t; ++start) {
    const long long reach = static_cast<long long>(start) + delay;
    const Timestep end = static_cast<Timestep>(std::min<long long>(reach, t));
    out[static_cast<std::size_t>(start - 1)] = sums(start, end);
  }
}

BestResponse best_of(const std::vector<double>& payoffs) {
  const simd::ArgExtremum best = simd::argmax_first(payoffs);
  return BestResponse{static_cast<Timestep>(best.index) + 1, best.value};
}

}  // namespace

std::vector<double> fixed_payoff_trace(const IntervalSums& sums, Delay delay) {
  if (delay < 0) throw ContractViolation("detection delay must be non-negative");
  std::vector<double> payoffs;
  fill_payoffs(sums, delay, payoffs);
  return payoffs;
}

BestResponse best_response_fixed(const IntervalSums& sums, Delay delay) {
  return best_of(fixed_payoff_trace(sums, delay));
}

BestResponse best_response_fixed(const DamageSeries& damage, Delay delay) {
  return best_response_fixed(IntervalSums(damage), delay);
}

FixedSolution solve_fixed(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config) {
  config.validate_against(damage);
  if (curve.empty()) {
    throw ConfigError("trade-off curve has no attainable delays");
  }
  const IntervalSums sums(damage);
  const double horizon = static_cast<double>(damage.horizon());

  FixedSolution best;
  best.defender_loss = std::numeric_limits<double>::infinity();
  std::vector<double> payoffs;
  for (const CurvePoint& point : curve.points()) {
    fill_payoffs(sums, point.delay, payoffs);
    const BestResponse response = best_of(payoffs);
    const double loss = config.fp_cost * point.fp * horizon + response.payoff;
    // Strict comparison keeps the smallest delay on ties; the first point
    // always lands because the loss is finite.
    if (loss < best.defender_loss) {
      best = FixedSolution{point.delay, loss, response.start, response.payoff};
    }
  }
  return best;
}

}  // namespace optthresh
