#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Row kernels for dense elimination modulo a word-sized prime.
//
// Residues are stored as integral doubles in [0, p) with p < 2^26, so every
// product of two residues is exact in a double and a floor-based quotient
// with one correction step yields the exact remainder. The scalar variants
// are the reference; vector variants must agree bit-for-bit.

namespace exlump::simd {

struct ModParams {
  double p;
  double pinv;  // 1.0 / p
};

enum class Isa { Scalar, Avx2 };

struct Kernels {
  Isa isa;
  /// dst[i] = (dst[i] + a * src[i]) mod p
  void (*axpy_mod)(double* dst, const double* src, double a, std::size_t n, ModParams mp);
  /// v[i] = (a * v[i]) mod p
  void (*scale_mod)(double* v, double a, std::size_t n, ModParams mp);
  /// Index of the first nonzero entry at or after `from`, or n.
  std::size_t (*find_nonzero)(const double* v, std::size_t from, std::size_t n);
};

const Kernels& scalar_kernels();
#if defined(EXLUMP_HAVE_AVX2)
const Kernels& avx2_kernels();
#endif

/// Variants compiled in and supported by the running CPU.
std::vector<Isa> available_isas();
/// The active table. Chosen on first use from CPU features; the environment
/// variable EXLUMP_SIMD=scalar forces the reference kernels.
const Kernels& kernels();
/// Overrides the active table (tests and benchmarks).
void force_isa(Isa isa);
std::string isa_name(Isa isa);

}  // namespace exlump::simd
