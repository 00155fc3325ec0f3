#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exlump/invariant.hpp"
#include "exlump/model.hpp"

namespace exlump {

/// Algebra generated by the identity and the decomposition matrices; a model
/// without dynamics yields the scalars.
EchelonMatBasis jacobian_algebra(const JacobianDecomposition& d, const AlgebraOptions& opts = {},
                                 AlgebraStats* stats = nullptr);

/// Action of an algebra on an invariant subspace V and on the quotient by V.
struct InducedRep {
  /// Restriction of each basis element, in the coordinates of V's basis.
  std::vector<SparseMat> restriction;
  /// Action on the quotient, in the coordinates indexed by `complement`.
  std::vector<SparseMat> quotient;
  /// Pivot positions of V's echelon basis.
  std::vector<std::size_t> pivots;
  /// Remaining positions; the quotient map reads a reduced vector there.
  std::vector<std::size_t> complement;
};

InducedRep induced_representations(const EchelonMatBasis& s, const Subspace& v);
/// Quotient map: reduce x against V and read the complement coordinates.
SparseVec quotient_map(const Subspace& v, const std::vector<std::size_t>& complement, const SparseVec& x);

struct ChainResult {
  /// Strictly nested, proper, nonzero invariant subspaces, smallest first.
  std::vector<Subspace> subspaces;
  /// Search path that introduced each subspace.
  std::vector<std::string> provenance;
  /// Cap or restart diagnostics; nonempty means the chain may be coarser.
  std::vector<std::string> diagnostics;
  int retries = 0;
};

ChainResult maximal_chain(const EchelonMatBasis& s, const SearchConfig& cfg);

/// Replaces each V_i by the simplest invariant subspace strictly between
/// its neighbours (fewest nonzeros, then smallest coefficient bit size)
/// among closures V_{i-1} + <gens> u of unit vectors and basis vectors u of
/// V_{i+1}. Any such subspace keeps the chain maximal.
std::vector<Subspace> simplify_chain(const std::vector<SparseMat>& generators, std::vector<Subspace> chain);

/// Smallest subspace containing `base` and u that is invariant under gens;
/// nullopt once its dimension reaches `limit`.
std::optional<Subspace> invariant_closure(const std::vector<SparseMat>& generators, const Subspace& base,
                                          const SparseVec& u, std::size_t limit);

/// True when no consecutive factor of 0 < V_1 < ... < V_l < K^n admits a
/// further invariant subspace.
bool is_maximal(const EchelonMatBasis& s, const std::vector<Subspace>& chain, const SearchConfig& cfg);

struct LumpingMatrices {
  /// L_i: n x m_i, columns the echelon basis of V_i.
  std::vector<SparseMat> lumpings;
  /// refinements[i - 1] = A_i with L_{i-1} = L_i * A_i, for i >= 1.
  std::vector<SparseMat> refinements;
};

LumpingMatrices lumping_and_refinement(const std::vector<Subspace>& chain);

/// Macro-variable names y1.. followed by the model parameters.
std::vector<std::string> reduced_names(const ODEModel& model, std::size_t m, const std::string& stem = "y");

/// g with g(x L) = f(x) L, in variables (y_1..y_m, parameters).
std::vector<MultiPoly> reduced_system(const ODEModel& model, const SparseMat& L);

struct LumpingCheck {
  bool invariant = false;
  bool identity = false;
  bool ok() const { return invariant && identity; }
  /// First (monomial index, column) with J_i L_col outside colspan(L).
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::vector<MultiPoly> reduced;
  std::string message;
};

LumpingCheck verify_lumping(const ODEModel& model, const SparseMat& L);

/// Chain entries fall into one class while each step only adds
/// macro-variables with zero derivative; returns the number of classes.
std::size_t count_nonequivalent(const ODEModel& model, const std::vector<SparseMat>& lumpings);

}  // namespace exlump
