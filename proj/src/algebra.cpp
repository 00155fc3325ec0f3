#include "exlump/algebra.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "exlump/modp.hpp"

namespace exlump {

SparseMat EchelonMatBasis::residue(const SparseMat& c) const {
  if (c.rows() != n_ || c.cols() != n_) throw StructuralError("matrix shape does not match the basis");
  return SparseMat::from_flat(flat_.reduce(c.flatten()), n_, n_);
}

bool EchelonMatBasis::insert(const SparseMat& c) {
  if (c.rows() != n_ || c.cols() != n_) throw StructuralError("matrix shape does not match the basis");
  return flat_.insert(c.flatten());
}

std::vector<SparseMat> EchelonMatBasis::elements() const {
  std::vector<SparseMat> out;
  for (const auto& v : flat_.sorted()) out.push_back(SparseMat::from_flat(v, n_, n_));
  return out;
}

Field EchelonMatBasis::field() const {
  Field f;
  for (const auto& v : flat_.rows()) f = common_field(f, v.field());
  return f;
}

SparseMat reduce_against(const SparseMat& c, const EchelonMatBasis& s) {
  SparseVec r = s.flat().reduce(c.flatten());
  if (!r.is_zero()) r.scale(r.lead_value().inverse());
  return SparseMat::from_flat(r, s.n(), s.n());
}

EchelonMatBasis span_basis(const std::vector<SparseMat>& mats, std::size_t n) {
  EchelonMatBasis b(n);
  for (const auto& m : mats) b.insert(m);
  return b;
}

namespace {

using DenseMod = std::vector<double>;  // n x n, row-major

DenseMod mod_mul(const DenseMod& a, const DenseMod& b, std::size_t n, const modp::PrimeField& fp) {
  const auto& k = simd::kernels();
  DenseMod c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = a[i * n + j];
      if (x != 0.0) k.axpy_mod(c.data() + i * n, b.data() + j * n, x, n, fp.params());
    }
  }
  return c;
}

std::optional<DenseMod> to_mod(const SparseMat& m, const modp::PrimeField& fp) {
  const std::size_t n = m.rows();
  DenseMod d(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (const auto& [c, x] : m.row(r).entries()) {
      if (!x.is_rational()) return std::nullopt;
      const auto v = fp.reduce(x.rational());
      if (!v) return std::nullopt;
      d[r * n + c] = static_cast<double>(*v);
    }
  }
  return d;
}

}  // namespace

std::optional<std::size_t> modular_algebra_dimension(const std::vector<SparseMat>& generators, bool include_identity,
                                                     std::uint64_t seed) {
  if (generators.empty()) return include_identity ? std::optional<std::size_t>(1) : std::optional<std::size_t>(0);
  const std::size_t n = generators[0].rows();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const modp::PrimeField fp(modp::random_prime(rng));
  std::vector<DenseMod> gens;
  for (const auto& g : generators) {
    auto d = to_mod(g, fp);
    if (!d) return std::nullopt;
    gens.push_back(std::move(*d));
  }
  modp::RowBasis basis(n * n, fp);
  std::deque<DenseMod> work;
  auto offer = [&](const DenseMod& m) {
    if (basis.insert(m)) work.push_back(m);
  };
  if (include_identity) {
    DenseMod id(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1.0;
    offer(id);
  }
  for (const auto& g : gens) offer(g);
  while (!work.empty() && basis.size() < n * n) {
    const DenseMod a = std::move(work.front());
    work.pop_front();
    for (const auto& g : gens) {
      offer(mod_mul(g, a, n, fp));
      offer(mod_mul(a, g, n, fp));
    }
  }
  return basis.size();
}

EchelonMatBasis algebra_basis(const std::vector<SparseMat>& generators, const AlgebraOptions& opts,
                              AlgebraStats* stats) {
  AlgebraStats local;
  AlgebraStats& st = stats ? *stats : local;
  st = AlgebraStats{};
  if (generators.empty() && !opts.include_identity) return EchelonMatBasis(0);
  const std::size_t n = generators.empty() ? 0 : generators[0].rows();
  for (const auto& g : generators) {
    if (g.rows() != n || g.cols() != n) throw StructuralError("algebra generators must be square of equal size");
  }

  if (opts.modular_certificate && n > 1) {
    const auto d = modular_algebra_dimension(generators, opts.include_identity, opts.seed);
    if (d && *d == n * n) {
      st.full_by_certificate = true;
      EchelonMatBasis full(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          SparseMat e(n, n);
          e.set(i, j, Scalar(1));
          full.insert(e);
        }
      }
      return full;
    }
  }

  const std::size_t threshold = opts.dense_threshold ? opts.dense_threshold : std::max(4 * n, n * n / 5);
  EchelonMatBasis s(n);
  std::deque<SparseMat> work;
  std::vector<SparseMat> parked;

  auto add = [&](const SparseMat& c, bool may_defer) {
    SparseVec r = s.flat().reduce(c.flatten());
    if (r.is_zero()) return;
    if (may_defer && opts.defer && r.nnz() > threshold) {
      parked.push_back(c);
      ++st.deferred;
      return;
    }
    s.insert_reduced(std::move(r));
    work.push_back(c);
  };

  if (opts.include_identity) add(SparseMat::identity(n), false);
  for (const auto& g : generators) add(g, false);
  for (;;) {
    while (!work.empty()) {
      const SparseMat a = std::move(work.front());
      work.pop_front();
      for (const auto& g : generators) {
        if (s.is_full()) break;
        add(g * a, true);
        add(a * g, true);
        st.products += 2;
      }
    }
    if (parked.empty() || s.is_full()) break;
    ++st.rounds;
    if (st.rounds > opts.round_warning) st.many_rounds = true;
    std::vector<SparseMat> retry;
    retry.swap(parked);
    for (const auto& c : retry) add(c, false);
  }
  return s;
}

}  // namespace exlump
