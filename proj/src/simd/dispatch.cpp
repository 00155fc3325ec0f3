#include <atomic>
#include <cstdlib>
#include <cstring>

#include "exlump/simd/kernels.hpp"

namespace exlump::simd {

namespace {

bool cpu_has_avx2() {
#if defined(EXLUMP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Kernels* select_default() {
  const char* env = std::getenv("EXLUMP_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
#if defined(EXLUMP_HAVE_AVX2)
  if (cpu_has_avx2()) return &avx2_kernels();
#endif
  return &scalar_kernels();
}

std::atomic<const Kernels*>& active() {
  static std::atomic<const Kernels*> ptr{select_default()};
  return ptr;
}

}  // namespace

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
  if (cpu_has_avx2()) out.push_back(Isa::Avx2);
  return out;
}

const Kernels& kernels() { return *active().load(std::memory_order_acquire); }

void force_isa(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      active().store(&scalar_kernels(), std::memory_order_release);
      return;
    case Isa::Avx2:
#if defined(EXLUMP_HAVE_AVX2)
      if (cpu_has_avx2()) {
        active().store(&avx2_kernels(), std::memory_order_release);
        return;
      }
#endif
      active().store(&scalar_kernels(), std::memory_order_release);
      return;
  }
}

std::string isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace exlump::simd
