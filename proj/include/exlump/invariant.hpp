#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exlump/algebra.hpp"
#include "exlump/factor.hpp"

namespace exlump {

/// The randomized search gave up (restart safeguard); never silent.
class SearchDiagnostic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchConfig {
  std::uint64_t seed = 0;
  std::uint64_t initial_D = 1;
  FieldLimits limits;
  int max_restarts = 64;
  /// Names adjoined generators; the default is "α" followed by the height.
  std::function<std::string()> name_extension;
};

enum class OutcomeKind { NoInvariantSubspace, SubspaceOverBaseField, SubspaceOverExtension, EigenspaceChain };

struct InvariantSearchOutcome {
  OutcomeKind kind = OutcomeKind::NoInvariantSubspace;
  /// One subspace, or the nested chain for EigenspaceChain.
  std::vector<Subspace> subspaces;
  /// Field of the returned subspaces.
  Field field;
  /// Which branch produced the answer: full-algebra, orbit, radical,
  /// charpoly-split, eigenspace, eigenspace-chain, irreducible.
  std::string path;
  /// Number of D-doubling retries.
  int retries = 0;
};

std::string to_string(OutcomeKind k);

/// Basis of rad(A) = {a in A : tr(a b) = 0 for all b in A}.
std::vector<SparseMat> radical_basis(const EchelonMatBasis& s);
/// Intersection of the kernels.
Subspace common_kernel(const std::vector<SparseMat>& mats);
/// (center basis, centralizer basis).
std::pair<std::vector<SparseMat>, std::vector<SparseMat>> center_and_centralizer(const EchelonMatBasis& s);
/// Basis of the elements of span(start) commuting with every matrix in `with`.
std::vector<SparseMat> commutant(const std::vector<SparseMat>& start, const std::vector<SparseMat>& with);

/// True when B v lies in V for every B and every basis vector v of V.
bool is_invariant(const Subspace& v, const std::vector<SparseMat>& mats);
/// Orbit span{B v : B in mats} of one vector.
Subspace orbit(const std::vector<SparseMat>& mats, const SparseVec& v, Field field);

/// Algorithm 2 over the field K (which must contain every entry of s).
/// Every returned subspace is certified invariant before returning.
InvariantSearchOutcome find_invariant_subspace(const EchelonMatBasis& s, const SearchConfig& cfg, Field K = nullptr);

}  // namespace exlump
