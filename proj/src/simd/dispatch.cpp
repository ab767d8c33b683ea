#include <atomic>
#include <cstdlib>
#include <string>

#include "optthresh/errors.hpp"
#include "optthresh/simd/kernels.hpp"

namespace optthresh::simd {

namespace {

constexpr KernelTable kScalarTable{Isa::Scalar, scalar::argmin_penalized, scalar::argmax_first,
                                   scalar::cusum_count_alarms, scalar::cusum_first_crossing};

#if defined(OPTTHRESH_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Isa::Avx2, avx2::argmin_penalized, avx2::argmax_first, avx2::cusum_count_alarms,
                                 avx2::cusum_first_crossing};
#endif

#if defined(OPTTHRESH_HAVE_NEON)
constexpr KernelTable kNeonTable{Isa::Neon, neon::argmin_penalized, neon::argmax_first, neon::cusum_count_alarms,
                                 neon::cusum_first_crossing};
#endif

Isa best_available() {
#if defined(OPTTHRESH_HAVE_AVX2)
  if (isa_supported(Isa::Avx2)) return Isa::Avx2;
#endif
#if defined(OPTTHRESH_HAVE_NEON)
  return Isa::Neon;
#endif
  return Isa::Scalar;
}

Isa initial_isa() {
  if (const char* env = std::getenv("OPTTHRESH_ISA")) {
    const std::string name(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (name == isa_name(isa) && isa_supported(isa)) return isa;
    }
  }
  return best_available();
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> table{&kernels_for(initial_isa())};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(OPTTHRESH_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(OPTTHRESH_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw ConfigError("instruction set '" + std::string(isa_name(isa)) + "' is not available on this machine");
  }
  switch (isa) {
#if defined(OPTTHRESH_HAVE_AVX2)
    case Isa::Avx2:
      return kAvx2Table;
#endif
#if defined(OPTTHRESH_HAVE_NEON)
    case Isa::Neon:
      return kNeonTable;
#endif
    default:
      return kScalarTable;
  }
}

const KernelTable& kernels() { return *active_table().load(std::memory_order_acquire); }

Isa active_isa() { return kernels().isa; }

void set_active_isa(Isa isa) { active_table().store(&kernels_for(isa), std::memory_order_release); }

}  // namespace optthresh::simd
