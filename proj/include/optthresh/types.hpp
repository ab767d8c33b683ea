#pragma once

// Domain types shared by the solvers. Timesteps are 1-based throughout, so
// k = 1 is the first step of the horizon and k = T the last.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace optthresh {

using Timestep = int;
using Delay = int;

// Expected damage D(k) of an undetected attack at each timestep of the horizon.
class DamageSeries {
 public:
  explicit DamageSeries(std::vector<double> values);

  int horizon() const noexcept { return static_cast<int>(values_.size()); }
  // D(k), 1 <= k <= T.
  double at(Timestep k) const;
  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const DamageSeries&) const = default;

 private:
  std::vector<double> values_;
};

struct CurvePoint {
  Delay delay = 0;
  double fp = 0.0;
  // Largest detector threshold that still yields `delay`, when known.
  std::optional<double> threshold;

  bool operator==(const CurvePoint&) const = default;
};

// Attainable detection delays and their false-positive rates. Delays are
// strictly increasing and rates non-increasing; a schedule refers to a
// threshold through its delay.
class TradeoffCurve {
 public:
  explicit TradeoffCurve(std::vector<CurvePoint> points);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  std::span<const CurvePoint> points() const noexcept { return points_; }
  const CurvePoint& operator[](std::size_t i) const { return points_[i]; }

  // Index of `delay` in the curve, if attainable.
  std::optional<std::size_t> index_of(Delay delay) const;
  bool contains(Delay delay) const { return index_of(delay).has_value(); }
  // FP(delay); throws ContractViolation when the delay is not on the curve.
  double fp(Delay delay) const;
  std::vector<Delay> delays() const;

  bool operator==(const TradeoffCurve&) const = default;

 private:
  std::vector<CurvePoint> points_;
};

struct GameConfig {
  double fp_cost = 0.0;      // C
  double change_cost = 0.0;  // C_d
  int horizon = 1;           // T

  // Throws ConfigError on negative or non-finite costs or T < 1.
  void validate() const;
  // validate() plus the horizon must equal the damage series length.
  void validate_against(const DamageSeries& damage) const;
};

// Per-timestep detection delays, one per step of the horizon.
class ThresholdSchedule {
 public:
  explicit ThresholdSchedule(std::vector<Delay> delays);
  // Constant schedule.
  ThresholdSchedule(int horizon, Delay delay);

  int horizon() const noexcept { return static_cast<int>(delays_.size()); }
  // δ(η_k), 1 <= k <= T.
  Delay at(Timestep k) const;
  std::span<const Delay> delays() const noexcept { return delays_; }

  bool operator==(const ThresholdSchedule&) const = default;

 private:
  std::vector<Delay> delays_;
};

struct AttackPlan {
  Timestep start = 1;
};

struct DetectionOutcome {
  bool detected = false;
  Timestep time = 0;         // σ, meaningful only when detected
  Timestep accrual_end = 0;  // σ when detected, T otherwise

  bool operator==(const DetectionOutcome&) const = default;
};

struct BestResponse {
  Timestep start = 1;
  double payoff = 0.0;
};

}  // namespace optthresh
