#include "optthresh/oracle.hpp"

#include <limits>
#include <string>

#include "optthresh/errors.hpp"
#include "optthresh/game.hpp"

namespace optthresh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_common(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config) {
  config.validate_against(damage);
  if (curve.empty()) throw ConfigError("trade-off curve has no attainable delays");
}

void check_schedule_bound(const DamageSeries& damage, const TradeoffCurve& curve, const OracleLimits& limits) {
  std::uint64_t count = 1;
  for (int k = 0; k < damage.horizon(); ++k) {
    if (count > limits.max_schedules / curve.size()) {
      throw BoundExceeded("oracle refuses " + std::to_string(curve.size()) + "^" + std::to_string(damage.horizon()) +
                          " schedules (limit " + std::to_string(limits.max_schedules) + ")");
    }
    count *= curve.size();
  }
}

// Worst-case payoff against a schedule straight from the definitions: the
// earliest start among the maximizers.
BestResponse worst_attack(const DamageSeries& damage, const ThresholdSchedule& schedule) {
  BestResponse best{1, -kInf};
  for (Timestep start = 1; start <= damage.horizon(); ++start) {
    const double payoff = attacker_payoff_adaptive(damage, schedule, start);
    if (payoff > best.payoff) best = {start, payoff};
  }
  return best;
}

// Calls visit(schedule) for every schedule over the curve in lexicographic
// order of delays.
template <typename Visit>
void for_each_schedule(const DamageSeries& damage, const TradeoffCurve& curve, Visit&& visit) {
  const auto t = static_cast<std::size_t>(damage.horizon());
  std::vector<std::size_t> digits(t, 0);
  std::vector<Delay> delays(t, curve[0].delay);
  while (true) {
    visit(ThresholdSchedule(delays));
    std::size_t pos = t;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < curve.size()) {
        delays[pos] = curve[digits[pos]].delay;
        break;
      }
      digits[pos] = 0;
      delays[pos] = curve[0].delay;
      if (pos == 0) return;
    }
  }
}

}  // namespace

FixedSolution oracle_fixed(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                           const OracleLimits& limits) {
  check_common(damage, curve, config);
  if (damage.horizon() > limits.max_horizon) {
    throw BoundExceeded("oracle refuses horizon " + std::to_string(damage.horizon()) + " (limit " +
                        std::to_string(limits.max_horizon) + ")");
  }
  FixedSolution best;
  best.defender_loss = kInf;
  for (const CurvePoint& point : curve.points()) {
    Timestep response = 1;
    double payoff = -kInf;
    for (Timestep start = 1; start <= damage.horizon(); ++start) {
      const double p = attacker_payoff_fixed(damage, point.delay, start);
      if (p > payoff) {
        payoff = p;
        response = start;
      }
    }
    const double loss = defender_loss_fixed(damage, curve, config, point.delay, response);
    if (loss < best.defender_loss) {
      best = FixedSolution{point.delay, loss, response, payoff};
    }
  }
  return best;
}

AdaptiveSolution oracle_adaptive(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                                 const OracleLimits& limits) {
  check_common(damage, curve, config);
  check_schedule_bound(damage, curve, limits);

  AdaptiveSolution best;
  best.defender_loss = kInf;
  for_each_schedule(damage, curve, [&](const ThresholdSchedule& schedule) {
    const BestResponse attack = worst_attack(damage, schedule);
    const double loss = defender_loss_adaptive(damage, curve, config, schedule, attack.start);
    if (loss < best.defender_loss) {
      best.schedule = schedule;
      best.total_cost = schedule_cost(curve, config, schedule);
      best.defender_loss = loss;
      best.best_response = attack.start;
      best.attacker_payoff = attack.payoff;
      best.chosen_cap = DamageCap{attack.payoff};
    }
    ++best.stats.caps_evaluated;
  });
  best.stats.feasible_caps = best.stats.caps_evaluated;
  return best;
}

MinCostResult oracle_min_cost(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                              DamageCap cap, const OracleLimits& limits) {
  check_common(damage, curve, config);
  check_schedule_bound(damage, curve, limits);

  MinCostResult best;
  best.total_cost = kInf;
  for_each_schedule(damage, curve, [&](const ThresholdSchedule& schedule) {
    ++best.cells_evaluated;
    if (worst_attack(damage, schedule).payoff > cap.value) return;
    const double cost = schedule_cost(curve, config, schedule);
    if (cost < best.total_cost) {
      best.total_cost = cost;
      best.schedule = schedule;
    }
  });
  return best;
}

}  // namespace optthresh
