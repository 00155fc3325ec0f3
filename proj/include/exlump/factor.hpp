#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "exlump/upoly.hpp"

namespace exlump {

struct Factorization {
  Scalar leading;
  /// Monic irreducible factors with multiplicities, pairwise distinct,
  /// ordered by (degree, coefficients).
  std::vector<std::pair<UPoly, int>> factors;

  UPoly product() const;
  std::size_t distinct() const { return factors.size(); }
};

struct FactorOptions {
  FieldLimits limits;
  std::uint64_t seed = 0x5eed;
};

/// Complete factorization of p over the field K (which must contain the
/// coefficients of p). Throws CapExceeded if a norm over QQ would exceed
/// limits.max_extension_degree.
Factorization factor_univariate(const UPoly& p, const Field& K, const FactorOptions& opts = {});

bool is_irreducible(const UPoly& p, const Field& K, const FactorOptions& opts = {});

/// Norm of a polynomial over K = L(a) down to L: the product of its
/// conjugates, computed by evaluation at integer points and interpolation.
UPoly norm_down(const UPoly& g, const Field& K);

namespace detail {
/// Distinct irreducible factors of a monic square-free polynomial over QQ.
std::vector<UPoly> factor_squarefree_rational(const UPoly& f, std::uint64_t seed);
/// Mignotte-type bound on the coefficients of any factor of a monic integer
/// polynomial: (d + 1) * 2^d * max|f_i|.
Integer factor_coefficient_bound(const std::vector<Integer>& f);
}  // namespace detail

}  // namespace exlump
