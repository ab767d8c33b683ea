#pragma once

// Nonparametric CUSUM detector and a Monte Carlo estimator of its
// delay/false-positive trade-off over a grid of thresholds.
//
// Observer model: z(k) ~ N(normal_mean, noise_std) under normal operation
// and N(attack_mean, noise_std) once an attack is under way. The statistic
// resets to 0 after every alarm. The detection delay of a run is the first
// alarm at or after attack onset minus the onset step; runs without such an
// alarm are censored and reported separately.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "optthresh/types.hpp"

namespace optthresh {

// S(k) = (S(k-1) + z(k))^+.
double cusum_update(double previous, double z);

enum class Decision { Normal, Attack };

// Attack iff S > η.
Decision decide(double statistic, double threshold);

struct ObserverModel {
  double normal_mean = -1.0;
  double attack_mean = 1.0;
  double noise_std = 1.0;

  // normal_mean < 0, attack_mean > 0, noise_std > 0, all finite.
  void validate() const;
};

struct SimConfig {
  std::vector<double> threshold_grid;
  int trials = 1000;
  int run_length = 200;
  std::uint64_t seed = 1;
  // Attack onset step within the attack run; defaults to run_length / 2.
  std::optional<int> attack_onset;
  unsigned threads = 0;

  void validate() const;
  int onset() const { return attack_onset.value_or(run_length / 2); }
};

struct EmpiricalPoint {
  double threshold = 0.0;
  double fp_rate = 0.0;
  double fp_stderr = 0.0;
  double mean_delay = 0.0;  // NaN when every run is censored
  double delay_stderr = 0.0;
  double censored_fraction = 0.0;

  bool operator==(const EmpiricalPoint&) const = default;
};

struct EmpiricalCurve {
  std::vector<EmpiricalPoint> points;

  bool operator==(const EmpiricalCurve&) const = default;
};

// Deterministic for a fixed seed and independent of the thread count.
EmpiricalCurve estimate_curve(const ObserverModel& model, const SimConfig& config);

// Integer-delay curve for the solvers: delays are rounded to the nearest
// step and, for each delay, the smallest threshold reaching it supplies the
// false-positive rate (clamped to stay non-increasing). Thresholds whose
// runs were all censored, or whose rounded delay falls below an earlier
// one, are skipped.
TradeoffCurve to_tradeoff_curve(const EmpiricalCurve& empirical);

void write_empirical_csv(std::ostream& out, const EmpiricalCurve& curve);
EmpiricalCurve read_empirical_csv(std::istream& in, const std::string& source = {});

}  // namespace optthresh
