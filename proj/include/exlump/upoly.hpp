#pragma once

#include <string>
#include <utility>
#include <vector>

#include "exlump/field.hpp"

namespace exlump {

/// Dense univariate polynomial over a tower field, lowest degree first.
/// The zero polynomial has no coefficients; trailing zeros are never stored.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Scalar> coeffs);
  UPoly(std::initializer_list<Scalar> coeffs) : UPoly(std::vector<Scalar>(coeffs)) {}

  static UPoly constant(const Scalar& c);
  /// t - root
  static UPoly linear_root(const Scalar& root);
  static UPoly monomial(const Scalar& c, int degree);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Scalar& lc() const { return c_.back(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(int i) const;
  /// Smallest field containing every coefficient.
  Field field() const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Scalar& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b);
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  Scalar eval(const Scalar& x) const;
  UPoly derivative() const;
  UPoly monic() const;
  /// p(t + shift)
  UPoly shifted(const Scalar& shift) const;
  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Scalar> c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);
/// Monic gcd (zero if both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
/// Returns (g, s, t) with s*a + t*b = g, g monic.
struct XGcd {
  UPoly g, s, t;
};
XGcd xgcd(const UPoly& a, const UPoly& b);
UPoly pow(const UPoly& p, int e);
/// Yun's square-free decomposition of a nonconstant polynomial:
/// p = lc * prod parts[i]^(i+1), each part monic and square-free.
std::vector<UPoly> squarefree_decomposition(const UPoly& p);
bool is_squarefree(const UPoly& p);
/// Lexicographic order on (degree, coefficients) for deterministic choices.
int compare(const UPoly& a, const UPoly& b);

/// Adjoins a root of `minpoly` (monic, irreducible over `base`, degree >= 2).
/// The caller certifies irreducibility.
Field extend(const Field& base, const UPoly& minpoly, const FieldLimits& limits,
             std::string name = {});

}  // namespace exlump
