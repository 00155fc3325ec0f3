#pragma once

#include <cstdint>
#include <vector>

#include "exlump/linalg.hpp"

namespace exlump {

/// Linearly independent n x n matrices kept fully reduced with respect to
/// the row-major flattening: each element has leading entry 1 and its pivot
/// position is zero in every other element.
class EchelonMatBasis {
 public:
  explicit EchelonMatBasis(std::size_t n = 0) : n_(n), flat_(n * n) {}

  std::size_t n() const { return n_; }
  std::size_t size() const { return flat_.size(); }
  bool is_full() const { return size() == n_ * n_; }
  /// Residue of c after eliminating all pivots (not normalized).
  SparseMat residue(const SparseMat& c) const;
  bool contains(const SparseMat& c) const { return residue(c).is_zero(); }
  bool insert(const SparseMat& c);
  /// Adds a nonzero flattened residue produced by flat().reduce().
  void insert_reduced(SparseVec flat) { flat_.insert_reduced(std::move(flat)); }
  /// Elements ordered by pivot position.
  std::vector<SparseMat> elements() const;
  const EchelonBasis& flat() const { return flat_; }
  Field field() const;

 private:
  std::size_t n_;
  EchelonBasis flat_;
};

/// Residue of c against s, scaled so its leading entry is 1 (zero iff c lies
/// in the span of s).
SparseMat reduce_against(const SparseMat& c, const EchelonMatBasis& s);

struct AlgebraOptions {
  bool include_identity = true;
  /// Park candidates with many nonzeros until the worklist drains.
  bool defer = true;
  /// Density threshold; 0 selects max(4n, n^2/5).
  std::size_t dense_threshold = 0;
  /// Restart rounds beyond this count are flagged in the statistics.
  int round_warning = 10;
  /// Closure modulo a random prime first; reaching n^2 there proves the
  /// algebra is the full matrix algebra.
  bool modular_certificate = true;
  std::uint64_t seed = 0;
};

struct AlgebraStats {
  std::size_t products = 0;
  std::size_t deferred = 0;
  int rounds = 0;
  bool many_rounds = false;
  bool full_by_certificate = false;
};

/// Basis of the algebra generated by the given square matrices (and the
/// identity when requested).
EchelonMatBasis algebra_basis(const std::vector<SparseMat>& generators, const AlgebraOptions& opts = {},
                              AlgebraStats* stats = nullptr);

/// Basis of the span of the given matrices, without closure.
EchelonMatBasis span_basis(const std::vector<SparseMat>& mats, std::size_t n);

/// Dimension of the generated algebra modulo a random prime (a lower bound
/// for the exact dimension); nullopt if some entry does not reduce.
std::optional<std::size_t> modular_algebra_dimension(const std::vector<SparseMat>& generators, bool include_identity,
                                                     std::uint64_t seed);

}  // namespace exlump
