// AVX2 kernels, four doubles per step. Built with -mavx2 only; reached
// through the dispatcher after a cpuid check.

#include <immintrin.h>

#include <limits>

#include "optthresh/simd/kernels.hpp"

namespace optthresh::simd::avx2 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Reduce four (value, index) lanes; equal values resolve to the smaller index.
template <typename Better>
ArgExtremum reduce_lanes(__m256d values, __m256d indices, ArgExtremum best, Better better) {
  alignas(32) double v[4];
  alignas(32) double idx[4];
  _mm256_store_pd(v, values);
  _mm256_store_pd(idx, indices);
  for (int lane = 0; lane < 4; ++lane) {
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
  if (n >= 4) {
    const __m256d pen = _mm256_set1_pd(penalty);
    const __m256d keepv = _mm256_set1_pd(static_cast<double>(keep));
    const __m256d step = _mm256_set1_pd(4.0);
    __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    __m256d bestv = _mm256_set1_pd(kInf);
    __m256d besti = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
      const __m256d is_keep = _mm256_cmp_pd(idx, keepv, _CMP_EQ_OQ);
      const __m256d v = _mm256_add_pd(_mm256_loadu_pd(base + i), _mm256_andnot_pd(is_keep, pen));
      const __m256d lt = _mm256_cmp_pd(v, bestv, _CMP_LT_OQ);
      bestv = _mm256_blendv_pd(bestv, v, lt);
      besti = _mm256_blendv_pd(besti, idx, lt);
      idx = _mm256_add_pd(idx, step);
    }
    // Lanes still at +inf never improved; they must not claim an index.
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
  if (n >= 4) {
    const __m256d step = _mm256_set1_pd(4.0);
    __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    __m256d bestv = _mm256_set1_pd(-kInf);
    __m256d besti = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
      const __m256d x = _mm256_loadu_pd(v + i);
      const __m256d gt = _mm256_cmp_pd(x, bestv, _CMP_GT_OQ);
      bestv = _mm256_blendv_pd(bestv, x, gt);
      besti = _mm256_blendv_pd(besti, idx, gt);
      idx = _mm256_add_pd(idx, step);
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
  const __m256d zv = _mm256_set1_pd(z);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_add_pd(_mm256_loadu_pd(stat + i), zv);
    const __m256d clamped = _mm256_and_pd(s, _mm256_cmp_pd(s, zero, _CMP_GT_OQ));
    const __m256d alarm = _mm256_cmp_pd(clamped, _mm256_loadu_pd(eta + i), _CMP_GT_OQ);
    _mm256_storeu_pd(stat + i, _mm256_andnot_pd(alarm, clamped));
    const int mask = _mm256_movemask_pd(alarm);
    for (int lane = 0; lane < 4; ++lane) {
      alarms[i + static_cast<std::size_t>(lane)] += static_cast<std::uint32_t>((mask >> lane) & 1);
    }
  }
  if (i < n) {
    scalar::cusum_count_alarms(stat + i, eta + i, n - i, z, alarms + i);
  }
}

void cusum_first_crossing(double* stat, const double* eta, std::size_t n, double z, std::int32_t step,
                          std::int32_t* first) {
  const __m256d zv = _mm256_set1_pd(z);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_add_pd(_mm256_loadu_pd(stat + i), zv);
    const __m256d clamped = _mm256_and_pd(s, _mm256_cmp_pd(s, zero, _CMP_GT_OQ));
    const __m256d alarm = _mm256_cmp_pd(clamped, _mm256_loadu_pd(eta + i), _CMP_GT_OQ);
    _mm256_storeu_pd(stat + i, _mm256_andnot_pd(alarm, clamped));
    const int mask = _mm256_movemask_pd(alarm);
    for (int lane = 0; lane < 4; ++lane) {
      std::int32_t& slot = first[i + static_cast<std::size_t>(lane)];
      if (((mask >> lane) & 1) && slot < 0) slot = step;
    }
  }
  if (i < n) {
    scalar::cusum_first_crossing(stat + i, eta + i, n - i, z, step, first + i);
  }
}

}  // namespace optthresh::simd::avx2
