#include <algorithm>
#include <random>

#include "exlump/invariant.hpp"

namespace exlump {

namespace {

Scalar sparse_dot(const SparseVec& a, const SparseVec& b) {
  Scalar s;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].first < eb[j].first) {
      ++i;
    } else if (eb[j].first < ea[i].first) {
      ++j;
    } else {
      s += ea[i].second * eb[j].second;
      ++i;
      ++j;
    }
  }
  return s;
}

// tr(A B) given A and the transpose of B.
Scalar trace_product(const SparseMat& a, const SparseMat& bt) {
  Scalar s;
  for (std::size_t r = 0; r < a.rows(); ++r) s += sparse_dot(a.row(r), bt.row(r));
  return s;
}

SparseMat combine(const std::vector<SparseMat>& mats, const SparseVec& coeffs, std::size_t n) {
  SparseMat out(n, n);
  for (const auto& [k, c] : coeffs.entries()) out = out + c * mats[k];
  return out;
}

SparseMat sample(const std::vector<SparseMat>& mats, std::size_t n, std::uint64_t D, std::mt19937_64& rng) {
  SparseMat out(n, n);
  for (const auto& b : mats) out = out + Scalar(static_cast<long>(rng() % D + 1)) * b;
  return out;
}

Subspace kernel_subspace(const SparseMat& m, const Field& K) { return Subspace(m.cols(), kernel(m), K); }

bool proper(const Subspace& v) { return v.dim() > 0 && v.dim() < v.ambient(); }

}  // namespace

std::string to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::NoInvariantSubspace:
      return "NoInvariantSubspace";
    case OutcomeKind::SubspaceOverBaseField:
      return "SubspaceOverBaseField";
    case OutcomeKind::SubspaceOverExtension:
      return "SubspaceOverExtension";
    case OutcomeKind::EigenspaceChain:
      return "EigenspaceChain";
  }
  return "?";
}

std::vector<SparseMat> radical_basis(const EchelonMatBasis& s) {
  const auto elems = s.elements();
  const std::size_t N = elems.size();
  if (N == 0) return {};
  std::vector<SparseMat> tr;
  tr.reserve(N);
  for (const auto& b : elems) tr.push_back(b.transpose());
  SparseMat gram(N, N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i; j < N; ++j) {
      const Scalar t = trace_product(elems[i], tr[j]);
      if (t.is_zero()) continue;
      gram.set(i, j, t);
      if (i != j) gram.set(j, i, t);
    }
  }
  std::vector<SparseMat> out;
  for (const auto& c : kernel(gram)) out.push_back(combine(elems, c, s.n()));
  return span_basis(out, s.n()).elements();
}

Subspace common_kernel(const std::vector<SparseMat>& mats) {
  if (mats.empty()) throw StructuralError("common kernel of no matrices");
  const std::size_t n = mats.front().cols();
  std::vector<SparseVec> rows;
  Field f;
  for (const auto& m : mats) {
    if (m.cols() != n) throw StructuralError("common kernel: shape mismatch");
    f = common_field(f, m.field());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (!m.row(r).is_zero()) rows.push_back(m.row(r));
    }
  }
  SparseMat stacked(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r) stacked.row(r) = rows[r];
  return kernel_subspace(stacked, f);
}

std::vector<SparseMat> commutant(const std::vector<SparseMat>& start, const std::vector<SparseMat>& with) {
  if (start.empty()) return {};
  const std::size_t n = start.front().rows();
  std::vector<SparseMat> cur = start;
  for (const auto& b : with) {
    std::vector<SparseVec> cols;
    cols.reserve(cur.size());
    bool all_zero = true;
    for (const auto& x : cur) {
      cols.push_back((x * b - b * x).flatten());
      all_zero = all_zero && cols.back().is_zero();
    }
    if (all_zero) continue;
    const auto ker = kernel(SparseMat::from_columns(cols, n * n));
    std::vector<SparseMat> next;
    next.reserve(ker.size());
    for (const auto& c : ker) next.push_back(combine(cur, c, n));
    cur = std::move(next);
    if (cur.empty()) break;
  }
  return span_basis(cur, n).elements();
}

std::pair<std::vector<SparseMat>, std::vector<SparseMat>> center_and_centralizer(const EchelonMatBasis& s) {
  const std::size_t n = s.n();
  const auto elems = s.elements();
  std::vector<SparseMat> units;
  units.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      SparseMat e(n, n);
      e.set(r, c, Scalar(1));
      units.push_back(std::move(e));
    }
  }
  auto center = commutant(elems, elems);
  auto centralizer = commutant(units, elems);
  return {std::move(center), std::move(centralizer)};
}

bool is_invariant(const Subspace& v, const std::vector<SparseMat>& mats) {
  for (const auto& b : mats) {
    for (const auto& x : v.basis()) {
      if (!v.contains(b.apply(x))) return false;
    }
  }
  return true;
}

Subspace orbit(const std::vector<SparseMat>& mats, const SparseVec& v, Field field) {
  std::vector<SparseVec> images;
  images.reserve(mats.size());
  for (const auto& b : mats) images.push_back(b.apply(v));
  if (mats.empty()) throw StructuralError("orbit under no matrices");
  return Subspace(mats.front().cols(), images, std::move(field));
}

InvariantSearchOutcome find_invariant_subspace(const EchelonMatBasis& s, const SearchConfig& cfg, Field K) {
  K = common_field(K, s.field());
  const std::size_t n = s.n();
  const auto elems = s.elements();
  InvariantSearchOutcome out;
  out.field = K;

  auto certify = [&](const Subspace& v) {
    if (!proper(v) || !is_invariant(v, elems)) {
      throw StructuralError("invariance certificate failed for a candidate subspace");
    }
  };
  auto single = [&](Subspace v, std::string path) {
    certify(v);
    out.kind = OutcomeKind::SubspaceOverBaseField;
    out.subspaces = {std::move(v)};
    out.path = std::move(path);
    return out;
  };

  // Step 1.
  if (s.is_full() || n <= 1) {
    out.path = "full-algebra";
    return out;
  }

  // Step 2: orbit of e1, then of one random vector.
  std::mt19937_64 rng(cfg.seed);
  {
    std::vector<SparseVec> probes = {SparseVec::unit(0)};
    Vec rnd(n);
    for (auto& x : rnd) x = Scalar(static_cast<long>(rng() % 100 + 1));
    probes.push_back(SparseVec::from_dense(rnd));
    for (const auto& v : probes) {
      Subspace o = orbit(elems, v, K);
      if (o.dim() == 0) o = Subspace(n, {v}, K);
      if (o.dim() < n) return single(std::move(o), "orbit");
    }
  }

  // Steps 3-4: radical and its common kernel.
  {
    const auto rad = radical_basis(s);
    if (!rad.empty()) return single(common_kernel(rad), "radical");
  }

  FactorOptions fopts;
  fopts.limits = cfg.limits;
  fopts.seed = cfg.seed ^ 0x9e3779b97f4a7c15ULL;

  std::vector<SparseMat> center, centralizer;
  bool structure_known = false;

  // Steps 5-14.
  std::uint64_t D = std::max<std::uint64_t>(cfg.initial_D, 1);
  for (;;) {
    if (out.retries > cfg.max_restarts) {
      throw SearchDiagnostic("invariant subspace search exceeded " + std::to_string(cfg.max_restarts) +
                             " restarts");
    }
    auto retry = [&]() {
      ++out.retries;
      if (D < (std::uint64_t{1} << 62)) D *= 2;
    };

    // Step 6-7.
    const SparseMat M = sample(elems, n, D, rng);
    const UPoly chi = charpoly(M);
    Factorization fac;
    try {
      fac = factor_univariate(chi, K, fopts);
    } catch (const CapExceeded&) {
      // Coarser answer from the square-free parts when one is invariant.
      for (const auto& part : squarefree_decomposition(chi)) {
        if (part.degree() < 1) continue;
        Subspace v = kernel_subspace(eval(part, M), K);
        if (proper(v) && is_invariant(v, elems)) return single(std::move(v), "cap-fallback");
      }
      throw;
    }
    if (fac.distinct() >= 2) {
      Subspace v = kernel_subspace(eval(fac.factors.front().first, M), K);
      if (proper(v) && is_invariant(v, elems)) return single(std::move(v), "charpoly-split");
      retry();
      continue;
    }

    // Step 8.
    const UPoly p = fac.factors.front().first;
    const std::size_t d = static_cast<std::size_t>(fac.factors.front().second);

    // Steps 9-10.
    if (!structure_known) {
      std::tie(center, centralizer) = center_and_centralizer(s);
      structure_known = true;
    }
    if (centralizer.size() != d * d * center.size()) {
      retry();
      continue;
    }

    // Steps 11-12.
    const SparseMat C = sample(centralizer, n, D, rng);
    const UPoly q = minpoly(C);
    const std::size_t ell = d * center.size();
    if (static_cast<std::size_t>(q.degree()) != ell || !is_irreducible(q, K, fopts)) {
      retry();
      continue;
    }
    if (ell == 1) {
      out.path = "irreducible";
      return out;
    }

    // Steps 13-14 over K' = K[alpha]/(q).
    Field Kx;
    try {
      Kx = extend(K, q, cfg.limits, cfg.name_extension ? cfg.name_extension() : std::string());
    } catch (const CapExceeded&) {
      Subspace v = kernel_subspace(eval(p, M), K);
      if (proper(v) && is_invariant(v, elems)) return single(std::move(v), "cap-fallback");
      throw;
    }
    const Scalar alpha = Scalar::generator(Kx);
    auto eigenspace = [&](const Scalar& root) {
      return kernel_subspace(C - root * SparseMat::identity(n), Kx);
    };
    Subspace v1 = eigenspace(alpha);
    out.field = Kx;

    std::vector<Scalar> roots = {alpha};
    bool split = false;
    try {
      const UPoly cof = divmod(q, UPoly::linear_root(alpha)).first;
      const Factorization cf = factor_univariate(cof, Kx, fopts);
      split = std::all_of(cf.factors.begin(), cf.factors.end(),
                          [](const auto& f) { return f.first.degree() == 1; });
      if (split) {
        for (const auto& f : cf.factors) roots.push_back(-f.first.coeff(0));
      }
    } catch (const CapExceeded&) {
      split = false;
    }

    if (!split) {
      certify(v1);
      out.kind = OutcomeKind::SubspaceOverExtension;
      out.subspaces = {std::move(v1)};
      out.path = "eigenspace";
      return out;
    }

    std::vector<SparseVec> acc;
    out.kind = OutcomeKind::EigenspaceChain;
    out.path = "eigenspace-chain";
    for (std::size_t j = 0; j + 1 < roots.size(); ++j) {
      const Subspace vj = j == 0 ? v1 : eigenspace(roots[j]);
      acc.insert(acc.end(), vj.basis().begin(), vj.basis().end());
      Subspace sum(n, acc, Kx);
      certify(sum);
      out.subspaces.push_back(std::move(sum));
    }
    return out;
  }
}

}  // namespace exlump
