#pragma once

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace exlump {

using Rational = mpq_class;
using Integer = mpz_class;

/// Precondition violations on shapes, arities, singular inputs and the like.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a tower extension or a norm computation would exceed the
/// configured height/degree limits. Callers degrade to a coarser answer.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TowerLevel;

/// A field in a tower of simple algebraic extensions of QQ.
/// The null pointer denotes QQ; towers are shared and immutable, and two
/// fields are the same field iff the pointers are equal.
using Field = std::shared_ptr<const TowerLevel>;

/// Element of QQ or of an iterated extension QQ[t]/(q(t)).
///
/// Representation is canonical: an element is stored at the lowest level of
/// the tower it belongs to (a polynomial in the top generator with at least
/// two coefficients, or a plain rational). Binary operations between elements
/// of different levels coerce into the larger field, which must contain the
/// smaller one.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& q) : q_(q) { q_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  Scalar(const Integer& z) : q_(z) {}  // NOLINT(google-explicit-constructor)

  /// The adjoined root of the top level of `f`.
  static Scalar generator(const Field& f);
  /// Polynomial in the generator of `f` with coefficients over f->parent.
  static Scalar from_coeffs(const Field& f, std::vector<Scalar> coeffs);
  static Scalar parse_rational(const std::string& text);

  const Field& field() const { return field_; }
  bool is_rational() const { return !field_; }
  bool is_zero() const { return !field_ && sgn(q_) == 0; }
  bool is_one() const { return !field_ && q_ == 1; }
  const Rational& rational() const;
  /// Coefficients over field()->parent; empty for rationals.
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inverse() const;
  std::string str() const;

 private:
  Field field_;
  Rational q_;
  std::vector<Scalar> coeffs_;
};

/// Structural total order used for deterministic tie-breaking.
int compare(const Scalar& a, const Scalar& b);

struct TowerLevel {
  Field parent;
  std::string generator;
  /// Monic and irreducible over parent, lowest degree first.
  std::vector<Scalar> minpoly;
  int height = 0;
  int absolute_degree = 1;
  int degree() const { return static_cast<int>(minpoly.size()) - 1; }
};

struct FieldLimits {
  int max_tower_height = 3;
  int max_extension_degree = 60;
};

int height(const Field& f);
int absolute_degree(const Field& f);
/// True when `sub` is `super` or one of its ancestors.
bool is_subfield(const Field& sub, const Field& super);
/// The larger of two nested fields; throws StructuralError if unrelated.
Field common_field(const Field& a, const Field& b);
/// All levels bottom-up, excluding QQ.
std::vector<Field> tower_levels(const Field& f);
/// "QQ" or the defining polynomials, one per level.
std::string describe(const Field& f);

}  // namespace exlump
