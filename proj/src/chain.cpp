#include <algorithm>
#include <map>

#include "exlump/chain.hpp"

namespace exlump {

namespace {

std::vector<std::size_t> complement_of(const std::vector<std::size_t>& pivots, std::size_t n) {
  std::vector<bool> used(n, false);
  for (auto p : pivots) used[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!used[i]) out.push_back(i);
  }
  return out;
}

// Linear combination sum_i c_i basis_i.
SparseVec expand(const std::vector<SparseVec>& basis, const SparseVec& coords) {
  SparseVec out;
  for (const auto& [i, c] : coords.entries()) out.axpy(c, basis[i]);
  return out;
}

SparseVec lift(const std::vector<std::size_t>& complement, const SparseVec& u) {
  SparseVec out;
  for (const auto& [i, c] : u.entries()) out.push(complement[i], c);
  return out;
}

// Sum over columns: sum_c L(c, j) f_c.
MultiPoly combine_rhs(const ODEModel& model, const SparseMat& L, std::size_t j) {
  MultiPoly h(model.nvars());
  for (std::size_t c = 0; c < L.rows(); ++c) {
    const Scalar v = L.get(c, j);
    if (!v.is_zero()) h += v * model.rhs[c];
  }
  return h;
}

void check_lumping_shape(const ODEModel& model, const SparseMat& L) {
  if (L.rows() != model.dimension()) throw StructuralError("lumping matrix row count differs from the model dimension");
  if (L.cols() == 0 || rank(L) != L.cols()) throw StructuralError("lumping matrix must have full column rank");
}

std::size_t bits(const Scalar& x) {
  if (x.is_rational()) {
    const Rational& q = x.rational();
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
  }
  std::size_t b = 0;
  for (const auto& c : x.coeffs()) b += bits(c);
  return b;
}

std::pair<std::size_t, std::size_t> simplicity(const Subspace& v) {
  std::size_t nnz = 0, height = 0;
  for (const auto& b : v.basis()) {
    nnz += b.nnz();
    for (const auto& [i, c] : b.entries()) height += bits(c);
  }
  return {nnz, height};
}

struct ChainBuilder {
  const SearchConfig& cfg;
  ChainResult& res;
  std::uint64_t calls = 0;
  int extensions = 0;

  using Entries = std::vector<std::pair<Subspace, std::string>>;

  Entries run(const EchelonMatBasis& s, const Field& K) {
    const std::size_t m = s.n();
    if (m <= 1) return {};
    SearchConfig c = cfg;
    c.seed = cfg.seed + 0x9e3779b97f4a7c15ULL * ++calls;
    if (!c.name_extension) c.name_extension = [this] { return "α" + std::to_string(++extensions); };
    InvariantSearchOutcome o;
    try {
      o = find_invariant_subspace(s, c, K);
    } catch (const CapExceeded& e) {
      res.diagnostics.push_back(std::string("cap exceeded: ") + e.what());
      return {};
    } catch (const SearchDiagnostic& e) {
      res.diagnostics.push_back(e.what());
      return {};
    }
    res.retries += o.retries;
    Entries out;
    switch (o.kind) {
      case OutcomeKind::NoInvariantSubspace:
        return {};
      case OutcomeKind::EigenspaceChain:
        for (auto& v : o.subspaces) out.emplace_back(std::move(v), o.path);
        return out;
      default:
        break;
    }
    const Subspace& v = o.subspaces.front();
    const Field Kv = common_field(K, o.field);
    const InducedRep rep = induced_representations(s, v);
    const Entries left = run(span_basis(rep.restriction, v.dim()), Kv);
    const Entries right = run(span_basis(rep.quotient, m - v.dim()), Kv);
    for (const auto& [w, path] : left) {
      std::vector<SparseVec> vecs;
      for (const auto& b : w.basis()) vecs.push_back(expand(v.basis(), b));
      out.emplace_back(Subspace(m, vecs, w.field()), path);
    }
    out.emplace_back(v, o.path);
    for (const auto& [u, path] : right) {
      std::vector<SparseVec> vecs = v.basis();
      for (const auto& b : u.basis()) vecs.push_back(lift(rep.complement, b));
      out.emplace_back(Subspace(m, vecs, common_field(u.field(), Kv)), path);
    }
    return out;
  }
};

}  // namespace

EchelonMatBasis jacobian_algebra(const JacobianDecomposition& d, const AlgebraOptions& opts, AlgebraStats* stats) {
  if (!d.matrices.empty()) return algebra_basis(d.matrices, opts, stats);
  return algebra_basis({SparseMat(d.dimension, d.dimension)}, opts, stats);
}

SparseVec quotient_map(const Subspace& v, const std::vector<std::size_t>& complement, const SparseVec& x) {
  SparseVec r = x;
  const auto piv = v.pivots();
  for (std::size_t i = 0; i < piv.size(); ++i) {
    const Scalar c = x.get(piv[i]);
    if (!c.is_zero()) r.axpy(-c, v.basis()[i]);
  }
  SparseVec out;
  for (std::size_t j = 0; j < complement.size(); ++j) {
    Scalar c = r.get(complement[j]);
    if (!c.is_zero()) out.push(j, std::move(c));
  }
  return out;
}

InducedRep induced_representations(const EchelonMatBasis& s, const Subspace& v) {
  const std::size_t n = s.n();
  if (v.ambient() != n) throw StructuralError("subspace and algebra have different dimensions");
  InducedRep rep;
  rep.pivots = v.pivots();
  rep.complement = complement_of(rep.pivots, n);
  const std::size_t k = v.dim();
  for (const auto& b : s.elements()) {
    std::vector<SparseVec> rcols;
    rcols.reserve(k);
    for (const auto& x : v.basis()) {
      const SparseVec w = b.apply(x);
      if (!v.contains(w)) throw StructuralError("subspace is not invariant under the algebra");
      rcols.push_back(SparseVec::from_dense(v.coordinates(w)));
    }
    rep.restriction.push_back(SparseMat::from_columns(rcols, k));
    std::vector<SparseVec> qcols;
    qcols.reserve(rep.complement.size());
    for (auto c : rep.complement) qcols.push_back(quotient_map(v, rep.complement, b.column(c)));
    rep.quotient.push_back(SparseMat::from_columns(qcols, rep.complement.size()));
  }
  return rep;
}

ChainResult maximal_chain(const EchelonMatBasis& s, const SearchConfig& cfg) {
  ChainResult res;
  ChainBuilder builder{cfg, res};
  for (auto& [v, path] : builder.run(s, s.field())) {
    res.subspaces.push_back(std::move(v));
    res.provenance.push_back(std::move(path));
  }
  for (std::size_t i = 1; i < res.subspaces.size(); ++i) {
    if (res.subspaces[i].dim() <= res.subspaces[i - 1].dim() || !res.subspaces[i].contains(res.subspaces[i - 1])) {
      throw StructuralError("assembled chain is not strictly nested");
    }
  }
  return res;
}

bool is_maximal(const EchelonMatBasis& s, const std::vector<Subspace>& chain, const SearchConfig& cfg) {
  const std::size_t n = s.n();
  std::vector<Subspace> full = chain;
  full.push_back(Subspace(n, Subspace::full(n).basis(), chain.empty() ? s.field() : chain.back().field()));
  for (std::size_t i = 0; i < full.size(); ++i) {
    const Subspace& top = full[i];
    Field K = common_field(s.field(), top.field());
    const InducedRep r1 = induced_representations(s, top);
    EchelonMatBasis factor = span_basis(r1.restriction, top.dim());
    if (i > 0) {
      const Subspace& low = full[i - 1];
      K = common_field(K, low.field());
      std::vector<SparseVec> coords;
      for (const auto& b : low.basis()) coords.push_back(SparseVec::from_dense(top.coordinates(b)));
      const Subspace inner(top.dim(), coords, low.field());
      const InducedRep r2 = induced_representations(factor, inner);
      factor = span_basis(r2.quotient, top.dim() - low.dim());
    }
    if (factor.n() <= 1) continue;
    if (find_invariant_subspace(factor, cfg, K).kind != OutcomeKind::NoInvariantSubspace) return false;
  }
  return true;
}

std::optional<Subspace> invariant_closure(const std::vector<SparseMat>& generators, const Subspace& base,
                                          const SparseVec& u, std::size_t limit) {
  const std::size_t n = base.ambient();
  EchelonBasis eb(n);
  for (const auto& b : base.basis()) eb.insert(b);
  std::vector<SparseVec> span = base.basis();
  std::vector<SparseVec> work;
  auto add = [&](const SparseVec& x) {
    if (eb.insert(x)) {
      span.push_back(x);
      work.push_back(x);
    }
  };
  add(u);
  while (!work.empty()) {
    if (eb.size() >= limit) return std::nullopt;
    const SparseVec w = std::move(work.back());
    work.pop_back();
    for (const auto& g : generators) add(g.apply(w));
  }
  if (eb.size() >= limit) return std::nullopt;
  Field f = base.field();
  for (const auto& x : span) f = common_field(f, x.field());
  return Subspace(n, span, f);
}

std::vector<Subspace> simplify_chain(const std::vector<SparseMat>& generators, std::vector<Subspace> chain) {
  if (chain.empty()) return chain;
  const std::size_t n = chain.front().ambient();
  bool changed = true;
  for (std::size_t pass = 0; changed && pass <= chain.size(); ++pass) {
    changed = false;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const Subspace low = i == 0 ? Subspace(n, {}, nullptr) : chain[i - 1];
      const Subspace high = i + 1 == chain.size() ? Subspace::full(n) : chain[i + 1];
      std::vector<SparseVec> candidates;
      for (std::size_t j = 0; j < n; ++j) {
        const SparseVec e = SparseVec::unit(j);
        if (high.contains(e) && !low.contains(e)) candidates.push_back(e);
      }
      for (const auto& b : high.basis()) {
        if (!low.contains(b)) candidates.push_back(b);
      }
      Subspace best = chain[i];
      auto best_score = simplicity(best);
      for (const auto& u : candidates) {
        const auto w = invariant_closure(generators, low, u, high.dim());
        if (!w) continue;
        const auto score = simplicity(*w);
        if (score < best_score) {
          best = *w;
          best_score = score;
        }
      }
      if (best != chain[i]) {
        chain[i] = std::move(best);
        changed = true;
      }
    }
  }
  return chain;
}

LumpingMatrices lumping_and_refinement(const std::vector<Subspace>& chain) {
  LumpingMatrices out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    out.lumpings.push_back(chain[i].matrix());
    if (i == 0) continue;
    std::vector<SparseVec> cols;
    for (const auto& b : chain[i - 1].basis()) {
      if (!chain[i].contains(b)) throw StructuralError("chain is not nested");
      cols.push_back(SparseVec::from_dense(chain[i].coordinates(b)));
    }
    out.refinements.push_back(SparseMat::from_columns(cols, chain[i].dim()));
  }
  return out;
}

std::vector<std::string> reduced_names(const ODEModel& model, std::size_t m, const std::string& stem) {
  std::vector<std::string> names = default_names(m, stem);
  names.insert(names.end(), model.params.begin(), model.params.end());
  return names;
}

std::vector<MultiPoly> reduced_system(const ODEModel& model, const SparseMat& L) {
  check_lumping_shape(model, L);
  const std::size_t n = model.dimension(), p = model.params.size(), m = L.cols();
  const std::size_t nv = n + p;
  const Subspace v(n, L.columns());
  const auto completion = complement_of(v.pivots(), n);
  std::vector<SparseVec> tcols = L.columns();
  for (auto c : completion) tcols.push_back(SparseVec::unit(c));
  const SparseMat tinv = inverse(SparseMat::from_columns(tcols, n));

  // x = z * T^{-1}, with z in the state slots and parameters unchanged.
  std::vector<MultiPoly> to_z;
  to_z.reserve(nv);
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly xi(nv);
    for (std::size_t k = 0; k < n; ++k) {
      const Scalar c = tinv.get(k, i);
      if (!c.is_zero()) xi += c * MultiPoly::variable(nv, k);
    }
    to_z.push_back(std::move(xi));
  }
  for (std::size_t j = 0; j < p; ++j) to_z.push_back(MultiPoly::variable(nv, n + j));

  std::vector<MultiPoly> to_y(nv, MultiPoly(m + p));
  for (std::size_t k = 0; k < m; ++k) to_y[k] = MultiPoly::variable(m + p, k);
  for (std::size_t j = 0; j < p; ++j) to_y[n + j] = MultiPoly::variable(m + p, m + j);

  std::vector<MultiPoly> g;
  g.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const MultiPoly gz = combine_rhs(model, L, j).substitute(to_z);
    for (std::size_t k = m; k < n; ++k) {
      if (gz.depends_on(k)) throw StructuralError("reduced right-hand side depends on completion variables");
    }
    g.push_back(gz.substitute(to_y));
  }
  return g;
}

LumpingCheck verify_lumping(const ODEModel& model, const SparseMat& L) {
  check_lumping_shape(model, L);
  LumpingCheck out;
  const std::size_t n = model.dimension(), p = model.params.size(), m = L.cols();
  const Subspace v(n, L.columns());
  const JacobianDecomposition d = jacobian_decomposition(model);
  out.invariant = true;
  const auto cols = L.columns();
  for (std::size_t i = 0; i < d.matrices.size() && out.invariant; ++i) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!v.contains(d.matrices[i].apply(cols[c]))) {
        out.invariant = false;
        out.witness = std::make_pair(i, c);
        out.message = "J[" + d.monomials[i].str(model.names()) + "] maps column " + std::to_string(c + 1) +
                      " outside the column space";
        break;
      }
    }
  }
  try {
    out.reduced = reduced_system(model, L);
  } catch (const StructuralError& e) {
    if (out.message.empty()) out.message = e.what();
    return out;
  }
  // g(x L) must equal f(x) L exactly.
  const std::size_t nv = n + p;
  std::vector<MultiPoly> to_x;
  to_x.reserve(m + p);
  for (std::size_t j = 0; j < m; ++j) {
    MultiPoly y(nv);
    for (std::size_t c = 0; c < n; ++c) {
      const Scalar a = L.get(c, j);
      if (!a.is_zero()) y += a * MultiPoly::variable(nv, c);
    }
    to_x.push_back(std::move(y));
  }
  for (std::size_t j = 0; j < p; ++j) to_x.push_back(MultiPoly::variable(nv, n + j));
  out.identity = true;
  for (std::size_t j = 0; j < m; ++j) {
    if (out.reduced[j].substitute(to_x) != combine_rhs(model, L, j)) {
      out.identity = false;
      if (out.message.empty()) out.message = "g(xL) differs from f(x)L in column " + std::to_string(j + 1);
      break;
    }
  }
  return out;
}

std::size_t count_nonequivalent(const ODEModel& model, const std::vector<SparseMat>& lumpings) {
  if (lumpings.empty()) return 0;
  // Column c of F holds the coefficients of f_c; a combination of states has
  // zero derivative iff it lies in the kernel of F.
  std::map<Monomial, std::size_t> index;
  for (const auto& f : model.rhs) {
    for (const auto& [mono, c] : f.terms()) index.emplace(mono, index.size());
  }
  auto image_rank = [&](const SparseMat& L) {
    EchelonBasis eb(index.size());
    for (std::size_t j = 0; j < L.cols(); ++j) {
      std::vector<std::pair<std::size_t, Scalar>> entries;
      const MultiPoly h = combine_rhs(model, L, j);
      for (const auto& [mono, c] : h.terms()) entries.emplace_back(index.at(mono), c);
      std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      SparseVec row;
      for (auto& [i, c] : entries) row.push(i, std::move(c));
      eb.insert(row);
    }
    return eb.size();
  };
  std::size_t classes = 1;
  std::size_t prev = image_rank(lumpings.front());
  for (std::size_t i = 1; i < lumpings.size(); ++i) {
    const std::size_t r = image_rank(lumpings[i]);
    if (r != prev) ++classes;
    prev = r;
  }
  return classes;
}

}  // namespace exlump
