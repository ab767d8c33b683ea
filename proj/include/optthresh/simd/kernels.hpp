#pragma once

// Data-parallel inner loops with a scalar reference and vector variants
// (AVX2 on x86-64, NEON on AArch64) picked at runtime. Every variant must
// return bit-identical results to the scalar kernel: only IEEE add, compare
// and select are used, with no FMA.
//
// OPTTHRESH_ISA=scalar|avx2|neon in the environment overrides the automatic
// choice at first use.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

namespace optthresh::simd {

enum class Isa { Scalar, Avx2, Neon };

struct ArgExtremum {
  double value;
  std::size_t index;
};

// Passing this as `keep` penalizes every lane.
inline constexpr std::size_t kNoKeep = std::numeric_limits<std::size_t>::max();

struct KernelTable {
  Isa isa;
  // min_i base[i] + (i == keep ? 0 : penalty); first index wins ties, and an
  // all-+inf input reports index 0.
  ArgExtremum (*argmin_penalized)(const double* base, std::size_t n, std::size_t keep, double penalty);
  // max_i v[i]; first index wins ties, all -inf reports index 0.
  ArgExtremum (*argmax_first)(const double* v, std::size_t n);
  // One CUSUM step across a threshold grid sharing observation z:
  // s = (s + z)^+; alarm when s > eta, which counts and resets s to 0.
  void (*cusum_count_alarms)(double* stat, const double* eta, std::size_t n, double z, std::uint32_t* alarms);
  // Same step, but records `step` into first[i] on the first alarm of lane i
  // (first[i] < 0 means not yet alarmed).
  void (*cusum_first_crossing)(double* stat, const double* eta, std::size_t n, double z, std::int32_t step,
                               std::int32_t* first);
};

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);

// Kernels currently in use.
const KernelTable& kernels();
// Kernels for a specific ISA; throws ConfigError when unsupported here.
const KernelTable& kernels_for(Isa isa);
Isa active_isa();
// Switch the process-wide kernel choice (tests, benchmarks).
void set_active_isa(Isa isa);

inline ArgExtremum argmin_penalized(std::span<const double> base, std::size_t keep, double penalty) {
  return kernels().argmin_penalized(base.data(), base.size(), keep, penalty);
}

inline ArgExtremum argmax_first(std::span<const double> values) {
  return kernels().argmax_first(values.data(), values.size());
}

namespace scalar {
ArgExtremum argmin_penalized(const double* base, std::size_t n, std::size_t keep, double penalty);
ArgExtremum argmax_first(const double* v, std::size_t n);
void cusum_count_alarms(double* stat, const double* eta, std::size_t n, double z, std::uint32_t* alarms);
void cusum_first_crossing(double* stat, const double* eta, std::size_t n, double z, std::int32_t step,
                          std::int32_t* first);
}  // namespace scalar

namespace avx2 {
ArgExtremum argmin_penalized(const double* base, std::size_t n, std::size_t keep, double penalty);
ArgExtremum argmax_first(const double* v, std::size_t n);
void cusum_count_alarms(double* stat, const double* eta, std::size_t n, double z, std::uint32_t* alarms);
void cusum_first_crossing(double* stat, const double* eta, std::size_t n, double z, std::int32_t step,
                          std::int32_t* first);
}  // namespace avx2

namespace neon {
ArgExtremum argmin_penalized(const double* base, std::size_t n, std::size_t keep, double penalty);
ArgExtremum argmax_first(const double* v, std::size_t n);
void cusum_count_alarms(double* stat, const double* eta, std::size_t n, double z, std::uint32_t* alarms);
void cusum_first_crossing(double* stat, const double* eta, std::size_t n, double z, std::int32_t step,
                          std::int32_t* first);
}  // namespace neon

}  // namespace optthresh::simd
