#include "optthresh/case_study.hpp"

#include <array>
#include <vector>

#include "optthresh/errors.hpp"
#include "optthresh/io.hpp"

namespace optthresh::case_study {

namespace {

// Keep in sync with data/case_study_demand.csv (a test compares them).
constexpr std::array<double, 24> kHourlyDemand{
    2.0, 1.8, 1.6, 1.5, 1.6, 2.0, 3.0, 4.5, 6.0, 7.2, 8.0, 8.6,
    9.0, 8.4, 7.5, 6.6, 6.0, 6.4, 7.0, 7.2, 6.5, 5.0, 3.6, 2.6,
};

}  // namespace

std::span<const double> hourly_demand() { return kHourlyDemand; }

DamageSeries damage(double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  std::vector<double> values(kHourlyDemand.begin(), kHourlyDemand.end());
  for (double& v : values) v *= alpha;
  return DamageSeries(std::move(values));
}

TradeoffCurve curve() { return fit_curve_exponential(kFpAtZeroDelay, kMaxDelay, kFpAtMaxDelay); }

}  // namespace optthresh::case_study
