// NEON kernels, two doubles per step. AArch64 only.

#include <arm_neon.h>

#include <limits>

#include "optthresh/simd/kernels.hpp"

namespace optthresh::simd::neon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename Better>
ArgExtremum reduce_lanes(float64x2_t values, float64x2_t indices, ArgExtremum best, Better better) {
  double v[2];
  double idx[2];
  vst1q_f64(v, values);
  vst1q_f64(idx, indices);
  for (int lane = 0; lane < 2; ++lane) {
    const auto lane_index = static_cast<std::size_t>(idx[lane]);
    if (better(v[lane], best.value) || (v[lane] == best.value && lane_index < best.index)) {
      best = {v[lane], lane_index};
    }
  }
  return best;
}

}  // namespace

ArgExtremum argmin_penalized(const double* base, std::size_t n, std::size_t keep, double penalty) {
  ArgExtremum best{kInf, 0};
  std::size_t i = 0;
  if (n >= 2) {
    const float64x2_t pen = vdupq_n_f64(penalty);
    const float64x2_t keepv = vdupq_n_f64(static_cast<double>(keep));
    const float64x2_t step = vdupq_n_f64(2.0);
    const double idx_init[2] = {0.0, 1.0};
    float64x2_t idx = vld1q_f64(idx_init);
    float64x2_t bestv = vdupq_n_f64(kInf);
    float64x2_t besti = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
      const uint64x2_t is_keep = vceqq_f64(idx, keepv);
      const float64x2_t addend = vbslq_f64(is_keep, vdupq_n_f64(0.0), pen);
      const float64x2_t v = vaddq_f64(vld1q_f64(base + i), addend);
      const uint64x2_t lt = vcltq_f64(v, bestv);
      bestv = vbslq_f64(lt, v, bestv);
      besti = vbslq_f64(lt, idx, besti);
      idx = vaddq_f64(idx, step);
    }
    best = reduce_lanes(bestv, besti, best, [](double a, double b) { return a < b; });
    if (best.value == kInf) best.index = 0;
  }
  for (; i < n; ++i) {
    const double v = base[i] + (i == keep ? 0.0 : penalty);
    if (v < best.value) best = {v, i};
  }
  return best;
}

ArgExtremum argmax_first(const double* v, std::size_t n) {
  ArgExtremum best{-kInf, 0};
  std::size_t i = 0;
  if (n >= 2) {
    const float64x2_t step = vdupq_n_f64(2.0);
    const double idx_init[2] = {0.0, 1.0};
    float64x2_t idx = vld1q_f64(idx_init);
    float64x2_t bestv = vdupq_n_f64(-kInf);
    float64x2_t besti = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
      const float64x2_t x = vld1q_f64(v + i);
      const uint64x2_t gt = vcgtq_f64(x, bestv);
      bestv = vbslq_f64(gt, x, bestv);
      besti = vbslq_f64(gt, idx, besti);
      idx = vaddq_f64(idx, step);
    }
    best = reduce_lanes(bestv, besti, best, [](double a, double b) { return a > b; });
    if (best.value == -kInf) best.index = 0;
  }
  for (; i < n; ++i) {
    if (v[i] > best.value) best = {v[i], i};
  }
  return best;
}

void cusum_count_alarms(double* stat, const double* eta, std::size_t n, double z, std::uint32_t* alarms) {
  const float64x2_t zv = vdupq_n_f64(z);
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t s = vaddq_f64(vld1q_f64(stat + i), zv);
    const float64x2_t clamped = vbslq_f64(vcgtq_f64(s, zero), s, zero);
    const uint64x2_t alarm = vcgtq_f64(clamped, vld1q_f64(eta + i));
    vst1q_f64(stat + i, vbslq_f64(alarm, zero, clamped));
    alarms[i] += static_cast<std::uint32_t>(vgetq_lane_u64(alarm, 0) & 1u);
    alarms[i + 1] += static_cast<std::uint32_t>(vgetq_lane_u64(alarm, 1) & 1u);
  }
  if (i < n) {
    scalar::cusum_count_alarms(stat + i, eta + i, n - i, z, alarms + i);
  }
}

void cusum_first_crossing(double* stat, const double* eta, std::size_t n, double z, std::int32_t step,
                          std::int32_t* first) {
  const float64x2_t zv = vdupq_n_f64(z);
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t s = vaddq_f64(vld1q_f64(stat + i), zv);
    const float64x2_t clamped = vbslq_f64(vcgtq_f64(s, zero), s, zero);
    const uint64x2_t alarm = vcgtq_f64(clamped, vld1q_f64(eta + i));
    vst1q_f64(stat + i, vbslq_f64(alarm, zero, clamped));
    if ((vgetq_lane_u64(alarm, 0) & 1u) && first[i] < 0) first[i] = step;
    if ((vgetq_lane_u64(alarm, 1) & 1u) && first[i + 1] < 0) first[i + 1] = step;
  }
  if (i < n) {
    scalar::cusum_first_crossing(stat + i, eta + i, n - i, z, step, first + i);
  }
}

}  // namespace optthresh::simd::neon
