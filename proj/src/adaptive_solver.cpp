#include "optthresh/adaptive_solver.hpp"

#include <algorithm>
#include <limits>

#include "optthresh/errors.hpp"
#include "optthresh/parallel.hpp"
#include "optthresh/simd/kernels.hpp"

namespace optthresh {

namespace {

constexpr double kInfeasible = std::numeric_limits<double>::infinity();

// Memo tables for one damage cap at a time; reused across caps by a worker.
//
// Rows are (n, m) with 1 <= n <= T and 0 <= m < n, laid out n-major. Each row
// holds one "base" entry per candidate delay δ_n (cost of steps n..T when δ_n
// is chosen, before any change cost) and one cell per predecessor delay.
// The n = 1 row uses only predecessor slot 0, standing for "arbitrary".
// Step T+1 is the terminal row, which depends on m alone.
class MinCostDp {
 public:
  MinCostDp(const IntervalSums& sums, const TradeoffCurve& curve, const GameConfig& config)
      : sums_(sums), horizon_(sums.horizon()), width_(curve.size()), change_cost_(config.change_cost) {
    delays_.reserve(width_);
    step_cost_.reserve(width_);
    for (const CurvePoint& p : curve.points()) {
      delays_.push_back(p.delay);
      step_cost_.push_back(config.fp_cost * p.fp);
    }
    const std::size_t rows = static_cast<std::size_t>(horizon_) * static_cast<std::size_t>(horizon_ + 1) / 2;
    base_.resize(rows * width_);
    base_ready_.resize(rows);
    cost_.resize(rows * width_);
    arg_.resize(rows * width_);
    cell_ready_.resize(rows * width_);
    terminal_.resize(static_cast<std::size_t>(horizon_) + 1);
  }

  double solve(double cap, DpMode mode) {
    cap_ = cap;
    cells_evaluated_ = 0;
    std::fill(base_ready_.begin(), base_ready_.end(), std::uint8_t{0});
    std::fill(cell_ready_.begin(), cell_ready_.end(), std::uint8_t{0});

    // Attacks pending at the horizon end undetected; the worst of them
    // starts T+1-m and accrues through T.
    terminal_[0] = 0.0;
    for (int m = 1; m <= horizon_; ++m) {
      terminal_[static_cast<std::size_t>(m)] = sums_(horizon_ + 1 - m, horizon_) <= cap_ ? 0.0 : kInfeasible;
    }

    if (mode == DpMode::Eager) {
      for (int n = horizon_; n >= 1; --n) {
        for (int m = 0; m < n; ++m) {
          const std::size_t slots = n == 1 ? 1 : width_;
          for (std::size_t prev = 0; prev < slots; ++prev) {
            cell(n, m, prev);
          }
        }
      }
    }
    return cell(1, 0, 0);
  }

  ThresholdSchedule recover() const {
    std::vector<Delay> schedule;
    schedule.reserve(static_cast<std::size_t>(horizon_));
    int m = 0;
    std::size_t prev = 0;
    for (int n = 1; n <= horizon_; ++n) {
      const std::size_t c = cell_index(n, m, prev);
      if (!cell_ready_[c] || cost_[c] == kInfeasible) {
        throw Error("internal: schedule recovery reached an unsolved cell");
      }
      const auto choice = static_cast<std::size_t>(arg_[c]);
      const Delay d = delays_[choice];
      schedule.push_back(d);
      m = std::min(m + 1, d);
      prev = choice;
    }
    return ThresholdSchedule(std::move(schedule));
  }

  std::size_t cells_evaluated() const noexcept { return cells_evaluated_; }

 private:
  std::size_t row_index(int n, int m) const noexcept {
    return static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n) / 2 + static_cast<std::size_t>(m);
  }
  std::size_t cell_index(int n, int m, std::size_t prev) const noexcept { return row_index(n, m) * width_ + prev; }

  // Cost(n, m, δ_{n-1} = delays_[prev]).
  double cell(int n, int m, std::size_t prev) {
    if (n == horizon_ + 1) {
      return terminal_[static_cast<std::size_t>(m)];
    }
    const std::size_t c = cell_index(n, m, prev);
    if (cell_ready_[c]) {
      return cost_[c];
    }
    const double* base = row_base(n, m);
    // No change cost at the first step.
    const simd::ArgExtremum best = n == 1 ? simd::argmin_penalized({base, width_}, simd::kNoKeep, 0.0)
                                          : simd::argmin_penalized({base, width_}, prev, change_cost_);
    cost_[c] = best.value;
    arg_[c] = static_cast<std::int32_t>(best.index);
    cell_ready_[c] = 1;
    ++cells_evaluated_;
    return best.value;
  }

  const double* row_base(int n, int m) {
    const std::size_t r = row_index(n, m);
    double* base = &base_[r * width_];
    if (base_ready_[r]) {
      return base;
    }
    // The attack starting at n-m is the worst among those a small enough
    // delay would catch at step n.
    const bool window_ok = sums_(n - m, n) <= cap_;
    for (std::size_t i = 0; i < width_; ++i) {
      const Delay d = delays_[i];
      double next;
      if (d > m) {
        next = cell(n + 1, m + 1, i);
      } else if (window_ok) {
        next = cell(n + 1, d, i);
      } else {
        next = kInfeasible;
      }
      base[i] = next + step_cost_[i];
    }
    base_ready_[r] = 1;
    return base;
  }

  const IntervalSums& sums_;
  int horizon_;
  std::size_t width_;
  double change_cost_;
  double cap_ = 0.0;
  std::vector<Delay> delays_;
  std::vector<double> step_cost_;
  std::vector<double> base_;
  std::vector<std::uint8_t> base_ready_;
  std::vector<double> cost_;
  std::vector<std::int32_t> arg_;
  std::vector<std::uint8_t> cell_ready_;
  std::vector<double> terminal_;
  std::size_t cells_evaluated_ = 0;
};

void check_inputs(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config) {
  config.validate_against(damage);
  if (curve.empty()) {
    throw ConfigError("trade-off curve has no attainable delays");
  }
}

}  // namespace

std::vector<double> damage_search_space(const DamageSeries& damage) {
  const IntervalSums sums(damage);
  const int t = damage.horizon();
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(t) * static_cast<std::size_t>(t + 1) / 2);
  for (Timestep a = 1; a <= t; ++a) {
    for (Timestep b = a; b <= t; ++b) {
      values.push_back(sums(a, b));
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

MinCostResult minimum_cost_thresholds(const DamageSeries& damage, const TradeoffCurve& curve,
                                      const GameConfig& config, DamageCap cap, DpMode mode) {
  check_inputs(damage, curve, config);
  const IntervalSums sums(damage);
  MinCostDp dp(sums, curve, config);
  MinCostResult result;
  result.total_cost = dp.solve(cap.value, mode);
  result.cells_evaluated = dp.cells_evaluated();
  if (result.total_cost != kInfeasible) {
    result.schedule = dp.recover();
  }
  return result;
}

std::vector<double> cost_profile(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                                 std::span<const double> caps, const AdaptiveOptions& options) {
  check_inputs(damage, curve, config);
  const IntervalSums sums(damage);
  std::vector<double> costs(caps.size());
  parallel_chunks(caps.size(), options.threads, [&](std::size_t begin, std::size_t end, unsigned) {
    MinCostDp dp(sums, curve, config);
    for (std::size_t i = begin; i < end; ++i) {
      costs[i] = dp.solve(caps[i], options.mode);
    }
  });
  return costs;
}

AdaptiveSolution solve_adaptive(const DamageSeries& damage, const TradeoffCurve& curve, const GameConfig& config,
                                const AdaptiveOptions& options) {
  check_inputs(damage, curve, config);
  const IntervalSums sums(damage);
  const std::vector<double> caps = damage_search_space(damage);

  std::vector<double> costs(caps.size());
  std::vector<std::size_t> cells(caps.size());
  parallel_chunks(caps.size(), options.threads, [&](std::size_t begin, std::size_t end, unsigned) {
    MinCostDp dp(sums, curve, config);
    for (std::size_t i = begin; i < end; ++i) {
      costs[i] = dp.solve(caps[i], options.mode);
      cells[i] = dp.cells_evaluated();
    }
  });

  // Ordered reduction; strict comparison keeps the smaller cap on ties.
  AdaptiveStats stats;
  stats.caps_evaluated = caps.size();
  std::size_t chosen = caps.size();
  double best_loss = kInfeasible;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    stats.cells_evaluated += cells[i];
    if (costs[i] == kInfeasible) continue;
    ++stats.feasible_caps;
    const double loss = costs[i] + caps[i];
    if (loss < best_loss) {
      best_loss = loss;
      chosen = i;
    }
  }
  // The largest cap bounds every attack, so some cap is always feasible.
  if (chosen == caps.size()) {
    throw Error("internal: no feasible damage cap");
  }

  MinCostDp dp(sums, curve, config);
  const double total_cost = dp.solve(caps[chosen], options.mode);
  AdaptiveSolution solution;
  solution.schedule = dp.recover();
  solution.total_cost = total_cost;
  solution.chosen_cap = DamageCap{caps[chosen]};
  solution.defender_loss = total_cost + caps[chosen];
  const BestResponse response = best_response_adaptive(damage, solution.schedule);
  solution.best_response = response.start;
  solution.attacker_payoff = response.payoff;
  solution.stats = stats;
  return solution;
}

std::vector<double> adaptive_payoff_trace(const DamageSeries& damage, const ThresholdSchedule& schedule) {
  if (schedule.horizon() != damage.horizon()) {
    throw ContractViolation("schedule horizon does not match damage series");
  }
  std::vector<double> payoffs(static_cast<std::size_t>(damage.horizon()));
  for (Timestep start = 1; start <= damage.horizon(); ++start) {
    payoffs[static_cast<std::size_t>(start - 1)] = attacker_payoff_adaptive(damage, schedule, start);
  }
  return payoffs;
}

BestResponse best_response_adaptive(const DamageSeries& damage, const ThresholdSchedule& schedule) {
  const std::vector<double> payoffs = adaptive_payoff_trace(damage, schedule);
  const simd::ArgExtremum best = simd::argmax_first(payoffs);
  return BestResponse{static_cast<Timestep>(best.index) + 1, best.value};
}

}  // namespace optthresh
