#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "exlump/chain.hpp"

using namespace exlump;

namespace {

std::string fixture(const std::string& name) { return std::string(EXLUMP_DATA_DIR) + "/fixtures/" + name; }

SparseMat columns(std::initializer_list<std::initializer_list<Scalar>> cols, std::size_t rows) {
  std::vector<SparseVec> cs;
  for (const auto& c : cols) cs.push_back(SparseVec::from_dense(Vec(c)));
  return SparseMat::from_columns(cs, rows);
}

MultiPoly var(std::size_t nv, std::size_t i) { return MultiPoly::variable(nv, i); }

Subspace span(std::size_t n, std::initializer_list<std::initializer_list<long>> vecs) {
  std::vector<SparseVec> vs;
  for (const auto& v : vecs) {
    Vec d;
    for (long x : v) d.emplace_back(x);
    vs.push_back(SparseVec::from_dense(d));
  }
  return Subspace(n, vs);
}

struct FixtureRun {
  ODEModel model;
  JacobianDecomposition decomposition;
  EchelonMatBasis algebra;
};

FixtureRun load(const std::string& name) {
  FixtureRun r;
  r.model = curry_parameters(read_model_file(fixture(name)));
  r.decomposition = jacobian_decomposition(r.model);
  r.algebra = jacobian_algebra(r.decomposition);
  return r;
}

// Projection onto the first k coordinates.
Subspace project(const Subspace& v, std::size_t k) {
  std::vector<SparseVec> out;
  for (const auto& b : v.basis()) {
    SparseVec p;
    for (const auto& [i, c] : b.entries())
      if (i < k) p.push(i, c);
    out.push_back(p);
  }
  return Subspace(k, out, v.field());
}

}  // namespace

TEST_CASE("induced representations on the two-state example") {
  const auto r = load("two_state.ode");
  const Subspace v(2, {SparseVec::unit(1)});
  const InducedRep rep = induced_representations(r.algebra, v);
  const auto elems = r.algebra.elements();
  REQUIRE(rep.restriction.size() == elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    CHECK(rep.restriction[i].rows() == 1);
    CHECK(rep.restriction[i].get(0, 0) == elems[i].get(1, 1));
    CHECK(rep.quotient[i].get(0, 0) == elems[i].get(0, 0));
  }
  CHECK_THROWS_AS(induced_representations(r.algebra, Subspace(2, {SparseVec::unit(0)})), StructuralError);
}

TEST_CASE("block reassembly oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5, k = 2;
    // Matrices preserving span{e1, e2}, conjugated by a random unipotent P.
    SparseMat P = SparseMat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) P.set(i, j, Scalar(static_cast<long>(rng() % 5) - 2));
    const SparseMat Pinv = inverse(P);
    std::vector<SparseMat> gens;
    for (int g = 0; g < 2; ++g) {
      SparseMat b(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!(i >= k && j < k)) b.set(i, j, Scalar(static_cast<long>(rng() % 7) - 3));
      gens.push_back(P * b * Pinv);
    }
    const auto s = algebra_basis(gens);
    const Subspace v(n, {P.column(0), P.column(1)});
    const InducedRep rep = induced_representations(s, v);
    const auto elems = s.elements();
    for (std::size_t e = 0; e < elems.size(); ++e) {
      // B v_j = sum_i B*(i, j) v_i.
      for (std::size_t j = 0; j < v.dim(); ++j) {
        SparseVec lhs = elems[e].apply(v.basis()[j]);
        for (std::size_t i = 0; i < v.dim(); ++i) lhs.axpy(-rep.restriction[e].get(i, j), v.basis()[i]);
        CHECK(lhs.is_zero());
      }
      // pi(B x) = B° pi(x) on every standard basis vector.
      for (std::size_t c = 0; c < n; ++c) {
        const SparseVec x = SparseVec::unit(c);
        CHECK(quotient_map(v, rep.complement, elems[e].apply(x)) ==
              rep.quotient[e].apply(quotient_map(v, rep.complement, x)));
      }
    }
  }
}

TEST_CASE("running example chain matches the maximal chain of lumpings") {
  const auto r = load("running_example.ode");
  const ChainResult ch = maximal_chain(r.algebra, {});
  CHECK(ch.diagnostics.empty());
  CHECK(is_maximal(r.algebra, ch.subspaces, {}));
  const auto chain = simplify_chain(r.decomposition.matrices, ch.subspaces);
  CHECK(chain.size() == ch.subspaces.size());
  CHECK(is_maximal(r.algebra, chain, {}));
  std::vector<Subspace> projected;
  for (const auto& v : chain) {
    const Subspace p = project(v, 5);
    if (p.dim() > 0 && (projected.empty() || projected.back() != p)) projected.push_back(p);
  }
  REQUIRE(projected.size() == 4);
  CHECK(projected[0] == span(5, {{0, 1, 1, 1, 1}}));
  CHECK(projected[1] == span(5, {{0, 1, 1, 1, 1}, {1, 0, 1, 1, 2}}));
  CHECK(projected[2] == span(5, {{1, 0, 0, 0, 0}, {0, 2, 1, 1, 0}, {0, 0, 1, 1, 2}}));
  CHECK(projected[3] == span(5, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 1, 0}, {0, 0, 0, 0, 1}}));
  const auto lm = lumping_and_refinement(chain);
  CHECK(count_nonequivalent(r.model, lm.lumpings) == 3);
}

TEST_CASE("chain length is seed independent on every fixture") {
  for (const char* name : {"running_example.ode", "two_state.ode", "knight.ode", "rotation.ode", "diagonalizable.ode",
                           "cube_root.ode", "scalars_only.ode"}) {
    const auto r = load(name);
    const std::size_t len = maximal_chain(r.algebra, {}).subspaces.size();
    for (std::uint64_t seed = 1; seed < 6; ++seed) {
      SearchConfig cfg;
      cfg.seed = seed;
      const auto ch = maximal_chain(r.algebra, cfg);
      CHECK_MESSAGE(ch.subspaces.size() == len, name);
      CHECK_MESSAGE(is_maximal(r.algebra, ch.subspaces, cfg), name);
    }
  }
}

TEST_CASE("scalar algebra gives a full flag") {
  const auto r = load("scalars_only.ode");
  CHECK(r.algebra.size() == 1);
  CHECK(maximal_chain(r.algebra, {}).subspaces.size() == 2);
}

TEST_CASE("distinct rational eigenvalues: chain steps add eigenvectors") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 4;
    SparseMat P(n, n);
    do {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) P.set(i, j, Scalar(static_cast<long>(rng() % 7) - 3));
    } while (rank(P) < n);
    SparseMat D(n, n);
    for (std::size_t i = 0; i < n; ++i) D.set(i, i, Scalar(static_cast<long>(3 * i) - 4));
    const SparseMat M = P * D * inverse(P);
    const auto s = algebra_basis({M});
    const auto ch = maximal_chain(s, {});
    REQUIRE(ch.subspaces.size() == 3);
    const auto eig = P.columns();
    for (const auto& v : ch.subspaces) {
      std::size_t inside = 0;
      for (const auto& e : eig) inside += v.contains(e) ? 1 : 0;
      CHECK(inside == v.dim());
    }
  }
}

TEST_CASE("refinement matrices satisfy L_{i-1} = L_i A_i") {
  const auto r = load("knight.ode");
  const auto ch = maximal_chain(r.algebra, {});
  const auto lm = lumping_and_refinement(ch.subspaces);
  REQUIRE(lm.refinements.size() + 1 == lm.lumpings.size());
  for (std::size_t i = 1; i < lm.lumpings.size(); ++i) CHECK(lm.lumpings[i] * lm.refinements[i - 1] == lm.lumpings[i - 1]);
  CHECK(lumping_and_refinement({Subspace(3, {SparseVec::unit(0)})}).refinements.empty());
}

TEST_CASE("reduced systems of the running example") {
  const ODEModel m = read_model_file(fixture("running_example.ode"));
  {
    const auto g = reduced_system(m, columns({{0, 1, 1, 1, 1}}, 5));
    REQUIRE(g.size() == 1);
    CHECK(g[0].is_zero());
  }
  {
    const auto g = reduced_system(m, columns({{1, 0, 0, 0, 0}, {0, 2, 1, 1, 0}, {0, 0, 1, 1, 2}}, 5));
    REQUIRE(g.size() == 3);
    const std::size_t nv = 5;  // y1 y2 y3 k1 k2
    const MultiPoly rhs = var(nv, 4) * var(nv, 2) - var(nv, 3) * var(nv, 0) * var(nv, 1);
    CHECK(g[0] == rhs);
    CHECK(g[1] == rhs);
    CHECK(g[2] == -rhs);
  }
  {
    SparseMat id = SparseMat::identity(5);
    const auto g = reduced_system(m, id);
    for (std::size_t i = 0; i < 5; ++i) CHECK(g[i] == m.rhs[i]);
  }
}

TEST_CASE("verify_lumping certificates and refutations") {
  const ODEModel m = read_model_file(fixture("running_example.ode"));
  const auto ok = verify_lumping(m, columns({{1, 1, 2, 2, 3}}, 5));
  CHECK(ok.ok());
  const auto bad = verify_lumping(m, columns({{1, 0, 0, 0, 0}}, 5));
  CHECK(!bad.ok());
  CHECK(!bad.invariant);
  CHECK(bad.witness.has_value());
  CHECK(!bad.identity);
  CHECK_THROWS_AS(verify_lumping(m, columns({{1, 0, 0, 0, 0}, {2, 0, 0, 0, 0}}, 5)), StructuralError);

  const ODEModel k = read_model_file(fixture("knight.ode"));
  const auto kc = verify_lumping(k, columns({{1, 0, 0, 1, Scalar(Rational(-3, 2))}}, 5));
  REQUIRE(kc.ok());
  const std::size_t nv = 1 + k.params.size();
  CHECK(kc.reduced[0] == Scalar(-5) * var(nv, 0));
}

TEST_CASE("non-equivalence counting") {
  const ODEModel m = read_model_file(fixture("scalars_only.ode"));
  CHECK(count_nonequivalent(m, {columns({{1, 0, 0}}, 3), columns({{1, 0, 0}, {0, 1, 0}}, 3)}) == 1);
  const ODEModel d = read_model_file(fixture("diagonalizable.ode"));
  const auto r = load("diagonalizable.ode");
  const auto lm = lumping_and_refinement(maximal_chain(r.algebra, {}).subspaces);
  CHECK(count_nonequivalent(d, lm.lumpings) == lm.lumpings.size());
}
