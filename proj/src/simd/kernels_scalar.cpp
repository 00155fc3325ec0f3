#include <cmath>

#include "exlump/simd/kernels.hpp"

namespace exlump::simd {

namespace {

inline double mulmod(double a, double b, ModParams mp) {
  const double prod = a * b;
  const double q = std::floor(prod * mp.pinv);
  double r = prod - q * mp.p;
  if (r < 0) r += mp.p;
  if (r >= mp.p) r -= mp.p;
  return r;
}

void axpy_mod(double* dst, const double* src, double a, std::size_t n, ModParams mp) {
  for (std::size_t i = 0; i < n; ++i) {
    double t = dst[i] + mulmod(a, src[i], mp);
    if (t >= mp.p) t -= mp.p;
    dst[i] = t;
  }
}

void scale_mod(double* v, double a, std::size_t n, ModParams mp) {
  for (std::size_t i = 0; i < n; ++i) v[i] = mulmod(a, v[i], mp);
}

std::size_t find_nonzero(const double* v, std::size_t from, std::size_t n) {
  for (std::size_t i = from; i < n; ++i) {
    if (v[i] != 0.0) return i;
  }
  return n;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{Isa::Scalar, &axpy_mod, &scale_mod, &find_nonzero};
  return k;
}

}  // namespace exlump::simd
