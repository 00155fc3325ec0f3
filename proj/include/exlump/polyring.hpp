#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exlump/linalg.hpp"

namespace exlump {

/// Power product of variables; exponents kept sparse and sorted by variable.
class Monomial {
 public:
  using Entry = std::pair<std::size_t, unsigned>;

  Monomial() = default;
  static Monomial variable(std::size_t var, unsigned exp = 1);
  static Monomial from_exponents(const std::vector<unsigned>& exps);

  bool is_one() const { return e_.empty(); }
  unsigned degree() const;
  unsigned exponent(std::size_t var) const;
  const std::vector<Entry>& entries() const { return e_; }
  /// Largest variable index plus one (0 for the unit monomial).
  std::size_t span() const { return e_.empty() ? 0 : e_.back().first + 1; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Degree-lexicographic order: lower total degree first; among equal
  /// degrees, a higher power of a lower-indexed variable comes first.
  friend bool operator<(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  /// "1", "x2", "k1*x1*x2^3"
  std::string str(const std::vector<std::string>& names) const;

 private:
  std::vector<Entry> e_;
};

/// Sparse multivariate polynomial with exact coefficients in a tower field.
class MultiPoly {
 public:
  using Terms = std::map<Monomial, Scalar>;

  explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}
  static MultiPoly constant(std::size_t nvars, const Scalar& c);
  static MultiPoly variable(std::size_t nvars, std::size_t var);
  static MultiPoly term(std::size_t nvars, const Monomial& m, const Scalar& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int degree() const;
  Scalar coeff(const Monomial& m) const;
  bool depends_on(std::size_t var) const;
  Field field() const;

  MultiPoly operator-() const;
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const Scalar& c, const MultiPoly& a);
  MultiPoly& operator+=(const MultiPoly& o);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(unsigned e) const;
  MultiPoly differentiate(std::size_t var) const;
  Scalar eval(const Vec& point) const;
  /// Replaces variable i by images[i]; all images share one arity, which
  /// becomes the arity of the result.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const;
  /// Same terms viewed in a ring with nvars variables (must cover every used variable).
  MultiPoly with_arity(std::size_t nvars) const;

  /// Terms in degree-lexicographic order, e.g. "-4*x2 + 2*x2^2".
  std::string str(const std::vector<std::string>& names) const;

 private:
  void add_term(const Monomial& m, const Scalar& c);

  std::size_t nvars_;
  Terms terms_;
};

/// p(x(z)) where x_i = sum_k z_k * change(k, i), i.e. x = z * change as row
/// vectors. change must be square and invertible.
MultiPoly substitute_linear(const MultiPoly& p, const SparseMat& change);

/// Default variable names x1, x2, ...
std::vector<std::string> default_names(std::size_t n, const std::string& stem = "x");

}  // namespace exlump
