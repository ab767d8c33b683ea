// Reference kernels. The vector variants are tested for bit equality
// against these.

#include <limits>

#include "optthresh/simd/kernels.hpp"

namespace optthresh::simd::scalar {

ArgExtremum argmin_penalized(const double* base, std::size_t n, std::size_t keep, double penalty) {
  ArgExtremum best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double v = base[i] + (i == keep ? 0.0 : penalty);
    if (v < best.value) {
      best = {v, i};
    }
  }
  return best;
}

ArgExtremum argmax_first(const double* v, std::size_t n) {
  ArgExtremum best{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] > best.value) {
      best = {v[i], i};
    }
  }
  return best;
}

void cusum_count_alarms(double* stat, const double* eta, std::size_t n, double z, std::uint32_t* alarms) {
  for (std::size_t i = 0; i < n; ++i) {
    const double s = stat[i] + z;
    const double clamped = s > 0.0 ? s : 0.0;
    if (clamped > eta[i]) {
      ++alarms[i];
      stat[i] = 0.0;
    } else {
      stat[i] = clamped;
    }
  }
}

void cusum_first_crossing(double* stat, const double* eta, std::size_t n, double z, std::int32_t step,
                          std::int32_t* first) {
  for (std::size_t i = 0; i < n; ++i) {
    const double s = stat[i] + z;
    const double clamped = s > 0.0 ? s : 0.0;
    if (clamped > eta[i]) {
      if (first[i] < 0) first[i] = step;
      stat[i] = 0.0;
    } else {
      stat[i] = clamped;
    }
  }
}

}  // namespace optthresh::simd::scalar
