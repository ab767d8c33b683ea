#include "optthresh/game.hpp"

#include <algorithm>
#include <string>

#include "optthresh/errors.hpp"

namespace optthresh {

double total_damage(const DamageSeries& damage, Timestep start, Timestep end) {
  const int t = damage.horizon();
  if (start < 1 || end > t || start > end) {
    throw ContractViolation("total_damage requires 1 <= k_a <= k_e <= T (got k_a=" + std::to_string(start) +
                            ", k_e=" + std::to_string(end) + ", T=" + std::to_string(t) + ")");
  }
  const auto values = damage.values();
  double sum = 0.0;
  for (Timestep k = start; k <= end; ++k) {
    sum += values[static_cast<std::size_t>(k - 1)];
  }
  return sum;
}

IntervalSums::IntervalSums(const DamageSeries& damage) : horizon_(damage.horizon()) {
  const auto t = static_cast<std::size_t>(horizon_);
  const auto values = damage.values();
  table_.resize(t * (t + 1) / 2);
  std::size_t pos = 0;
  for (std::size_t a = 0; a < t; ++a) {
    double sum = 0.0;
    for (std::size_t b = a; b < t; ++b) {
      sum += values[b];
      table_[pos++] = sum;
    }
  }
}

DetectionOutcome detection_time(const ThresholdSchedule& schedule, Timestep start) {
  const int t = schedule.horizon();
  if (start < 1 || start > t) {
    throw ContractViolation("attack start " + std::to_string(start) + " outside horizon 1.." + std::to_string(t));
  }
  const auto delays = schedule.delays();
  for (Timestep k = start; k <= t; ++k) {
    if (delays[static_cast<std::size_t>(k - 1)] <= k - start) {
      return DetectionOutcome{true, k, k};
    }
  }
  return DetectionOutcome{false, 0, t};
}

double attacker_payoff_adaptive(const DamageSeries& damage, const ThresholdSchedule& schedule, Timestep start) {
  if (schedule.horizon() != damage.horizon()) {
    throw ContractViolation("schedule horizon does not match damage series");
  }
  const DetectionOutcome outcome = detection_time(schedule, start);
  return total_damage(damage, start, outcome.accrual_end);
}

double attacker_payoff_fixed(const DamageSeries& damage, Delay delay, Timestep start) {
  if (delay < 0) {
    throw ContractViolation("detection delay must be non-negative");
  }
  const int t = damage.horizon();
  if (start < 1 || start > t) {
    throw ContractViolation("attack start " + std::to_string(start) + " outside horizon 1.." + std::to_string(t));
  }
  // δ may exceed T; compare in wide arithmetic before clamping.
  const long long reach = static_cast<long long>(start) + delay;
  const Timestep end = static_cast<Timestep>(std::min<long long>(reach, t));
  return total_damage(damage, start, end);
}

double defender_loss_fixed(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                           Delay delay, Timestep start) {
  const double fp = curve.fp(delay);
  const double payoff = attacker_payoff_fixed(damage, delay, start);
  return config.fp_cost * fp * static_cast<double>(damage.horizon()) + payoff;
}

int change_count(const ThresholdSchedule& schedule) {
  const auto delays = schedule.delays();
  int changes = 0;
  for (std::size_t k = 1; k < delays.size(); ++k) {
    if (delays[k] != delays[k - 1]) ++changes;
  }
  return changes;
}

double schedule_cost(const TradeoffCurve& curve, const GameConfig& config, const ThresholdSchedule& schedule) {
  const auto delays = schedule.delays();
  double cost = 0.0;
  for (std::size_t i = delays.size(); i-- > 0;) {
    cost = cost + config.fp_cost * curve.fp(delays[i]);
    if (i > 0 && delays[i] != delays[i - 1]) {
      cost = cost + config.change_cost;
    }
  }
  return cost;
}

double defender_loss_adaptive(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                              const ThresholdSchedule& schedule, Timestep start) {
  check_schedule(damage, curve, schedule);
  return schedule_cost(curve, config, schedule) + attacker_payoff_adaptive(damage, schedule, start);
}

void check_schedule(const DamageSeries& damage, const TradeoffCurve& curve, const ThresholdSchedule& schedule) {
  if (schedule.horizon() != damage.horizon()) {
    throw ContractViolation("schedule length " + std::to_string(schedule.horizon()) + " does not match horizon " +
                            std::to_string(damage.horizon()));
  }
  const auto delays = schedule.delays();
  for (std::size_t i = 0; i < delays.size(); ++i) {
    if (!curve.contains(delays[i])) {
      throw ContractViolation("schedule entry k=" + std::to_string(i + 1) + " (delay " + std::to_string(delays[i]) +
                              ") is not on the trade-off curve");
    }
  }
}

}  // namespace optthresh
