#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exlump/upoly.hpp"

namespace exlump {

using Vec = std::vector<Scalar>;

/// Sparse vector: strictly increasing indices, no stored zeros.
class SparseVec {
 public:
  using Entry = std::pair<std::size_t, Scalar>;

  SparseVec() = default;
  static SparseVec from_dense(const Vec& v);
  static SparseVec unit(std::size_t i);

  bool is_zero() const { return e_.empty(); }
  std::size_t nnz() const { return e_.size(); }
  const std::vector<Entry>& entries() const { return e_; }
  std::size_t lead() const { return e_.front().first; }
  const Scalar& lead_value() const { return e_.front().second; }
  Scalar get(std::size_t i) const;
  Vec to_dense(std::size_t dim) const;
  Field field() const;

  /// this += c * other
  void axpy(const Scalar& c, const SparseVec& other);
  void scale(const Scalar& c);
  /// Appends an entry; index must exceed every stored index.
  void push(std::size_t i, Scalar v);

  friend bool operator==(const SparseVec& a, const SparseVec& b);
  friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }

 private:
  std::vector<Entry> e_;
};

/// Sparse exact matrix stored by rows.
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(std::size_t rows, std::size_t cols) : nrows_(rows), ncols_(cols), rows_(rows) {}
  static SparseMat identity(std::size_t n);
  static SparseMat from_dense(const std::vector<Vec>& rows);
  /// Matrix whose columns are the given vectors.
  static SparseMat from_columns(const std::vector<SparseVec>& cols, std::size_t nrows);
  /// Inverse of flatten(): row-major positions.
  static SparseMat from_flat(const SparseVec& flat, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return ncols_; }
  bool square() const { return nrows_ == ncols_; }
  Scalar get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, const Scalar& v);
  const SparseVec& row(std::size_t r) const { return rows_[r]; }
  SparseVec& row(std::size_t r) { return rows_[r]; }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }
  Field field() const;

  SparseMat transpose() const;
  SparseVec column(std::size_t c) const;
  std::vector<SparseVec> columns() const;
  SparseVec flatten() const;
  std::vector<Vec> to_dense() const;
  Scalar trace() const;

  SparseVec apply(const SparseVec& v) const;
  Vec apply(const Vec& v) const;

  friend SparseMat operator+(const SparseMat& a, const SparseMat& b);
  friend SparseMat operator-(const SparseMat& a, const SparseMat& b);
  friend SparseMat operator*(const SparseMat& a, const SparseMat& b);
  friend SparseMat operator*(const Scalar& c, const SparseMat& a);
  friend bool operator==(const SparseMat& a, const SparseMat& b);
  friend bool operator!=(const SparseMat& a, const SparseMat& b) { return !(a == b); }

  std::string str() const;

 private:
  std::size_t nrows_ = 0, ncols_ = 0;
  std::vector<SparseVec> rows_;
};

/// Incrementally maintained reduced echelon basis of row vectors: every
/// basis vector has leading entry 1 and every pivot column is zero in all
/// other basis vectors.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }
  /// Residue of v after elimination of all pivots (zero iff v in the span).
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec& v) const { return reduce(v).is_zero(); }
  /// Adds v if independent; returns whether it was added.
  bool insert(const SparseVec& v);
  /// Adds a vector that is already reduced against this basis and nonzero.
  void insert_reduced(SparseVec v);
  /// Basis vectors ordered by pivot.
  std::vector<SparseVec> sorted() const;
  const std::vector<SparseVec>& rows() const { return rows_; }
  std::vector<std::size_t> pivots() const;

 private:
  std::size_t dim_;
  std::vector<SparseVec> rows_;
  std::vector<std::size_t> pivot_of_;   // parallel to rows_
  std::vector<std::ptrdiff_t> row_at_;  // pivot column -> row index or -1
};

/// Linear subspace of K^n with a canonical (reduced echelon) basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t ambient, const std::vector<SparseVec>& spanning, Field field = nullptr);
  static Subspace full(std::size_t n);
  static Subspace zero(std::size_t n) { return Subspace(n, {}); }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<SparseVec>& basis() const { return basis_; }
  const Field& field() const { return field_; }
  std::vector<std::size_t> pivots() const;
  bool contains(const SparseVec& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of a member v in terms of basis() (read off at pivots).
  Vec coordinates(const SparseVec& v) const;
  /// n x dim matrix with the basis as columns.
  SparseMat matrix() const;

  friend bool operator==(const Subspace& a, const Subspace& b);
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  std::size_t ambient_ = 0;
  std::vector<SparseVec> basis_;
  Field field_;
};

struct Echelon {
  SparseMat rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  /// Basis of the right kernel {x : M x = 0}.
  std::vector<SparseVec> kernel;
};

Echelon echelonize(const SparseMat& m);
std::size_t rank(const SparseMat& m);
std::vector<SparseVec> kernel(const SparseMat& m);
/// Some x with A x = b, or nullopt when the system is inconsistent.
std::optional<Vec> solve(const SparseMat& a, const Vec& b);
Scalar determinant(const SparseMat& m);
/// Monic det(tI - M), by reduction to Hessenberg form.
UPoly charpoly(const SparseMat& m);
/// Monic minimal polynomial, from the first linear dependency among the
/// flattened powers I, M, M^2, ...
UPoly minpoly(const SparseMat& m);
/// p(M)
SparseMat eval(const UPoly& p, const SparseMat& m);
SparseMat inverse(const SparseMat& m);

/// Rank of rational row vectors modulo a random prime; nullopt when some
/// entry is not rational or has a denominator divisible by the prime. The
/// modular rank never exceeds the exact rank.
std::optional<std::size_t> rank_mod_p(const std::vector<SparseVec>& rows, std::size_t dim,
                                      std::uint64_t seed);

}  // namespace exlump
