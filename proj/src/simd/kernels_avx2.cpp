// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "exlump/simd/kernels.hpp"

namespace exlump::simd {

namespace {

inline double mulmod1(double a, double b, ModParams mp) {
  const double prod = a * b;
  const double q = std::floor(prod * mp.pinv);
  double r = prod - q * mp.p;
  if (r < 0) r += mp.p;
  if (r >= mp.p) r -= mp.p;
  return r;
}

inline __m256d mulmod4(__m256d a, __m256d b, __m256d p, __m256d pinv) {
  const __m256d prod = _mm256_mul_pd(a, b);
  const __m256d q = _mm256_floor_pd(_mm256_mul_pd(prod, pinv));
  // prod - q*p is an exact integer below 2^53, so the fused form is exact.
  __m256d r = _mm256_fnmadd_pd(q, p, prod);
  const __m256d zero = _mm256_setzero_pd();
  r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), p));
  r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, p, _CMP_GE_OQ), p));
  return r;
}

void axpy_mod(double* dst, const double* src, double a, std::size_t n, ModParams mp) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d p = _mm256_set1_pd(mp.p);
  const __m256d pinv = _mm256_set1_pd(mp.pinv);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(src + i);
    __m256d t = _mm256_add_pd(_mm256_loadu_pd(dst + i), mulmod4(va, s, p, pinv));
    t = _mm256_sub_pd(t, _mm256_and_pd(_mm256_cmp_pd(t, p, _CMP_GE_OQ), p));
    _mm256_storeu_pd(dst + i, t);
  }
  for (; i < n; ++i) {
    double t = dst[i] + mulmod1(a, src[i], mp);
    if (t >= mp.p) t -= mp.p;
    dst[i] = t;
  }
}

void scale_mod(double* v, double a, std::size_t n, ModParams mp) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d p = _mm256_set1_pd(mp.p);
  const __m256d pinv = _mm256_set1_pd(mp.pinv);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(v + i, mulmod4(va, _mm256_loadu_pd(v + i), p, pinv));
  }
  for (; i < n; ++i) v[i] = mulmod1(a, v[i], mp);
}

std::size_t find_nonzero(const double* v, std::size_t from, std::size_t n) {
  std::size_t i = from;
  const __m256d zero = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(v + i), zero, _CMP_NEQ_OQ));
    if (mask) return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) {
    if (v[i] != 0.0) return i;
  }
  return n;
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels k{Isa::Avx2, &axpy_mod, &scale_mod, &find_nonzero};
  return k;
}

}  // namespace exlump::simd
