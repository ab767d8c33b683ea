#pragma once

// Bundled water-distribution case study: 24 hourly demand values digitized
// from a published daily demand profile (an approximation; the source
// series is available only as a plot), damage D(k) = α·d(k) with α = 2, and
// the exponential trade-off curve through FP(0) = 0.95 and FP(23) = 0.02.

#include <span>

#include "optthresh/types.hpp"

namespace optthresh::case_study {

inline constexpr double kAlpha = 2.0;
inline constexpr double kFpAtZeroDelay = 0.95;
inline constexpr Delay kMaxDelay = 23;
inline constexpr double kFpAtMaxDelay = 0.02;

// Hourly demand d(k), k = 1..24.
std::span<const double> hourly_demand();

DamageSeries damage(double alpha = kAlpha);
TradeoffCurve curve();

}  // namespace optthresh::case_study
