#include "exlump/linalg.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "exlump/modp.hpp"

namespace exlump {

// ---------------------------------------------------------------- SparseVec

SparseVec SparseVec::from_dense(const Vec& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) s.e_.emplace_back(i, v[i]);
  }
  return s;
}

SparseVec SparseVec::unit(std::size_t i) {
  SparseVec s;
  s.e_.emplace_back(i, Scalar(1));
  return s;
}

Scalar SparseVec::get(std::size_t i) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), i, [](const Entry& a, std::size_t k) { return a.first < k; });
  return (it != e_.end() && it->first == i) ? it->second : Scalar();
}

Vec SparseVec::to_dense(std::size_t dim) const {
  Vec v(dim);
  for (const auto& [i, x] : e_) v.at(i) = x;
  return v;
}

Field SparseVec::field() const {
  Field f;
  for (const auto& [i, x] : e_) f = common_field(f, x.field());
  return f;
}

void SparseVec::axpy(const Scalar& c, const SparseVec& other) {
  if (c.is_zero() || other.e_.empty()) return;
  std::vector<Entry> out;
  out.reserve(e_.size() + other.e_.size());
  auto a = e_.begin();
  auto b = other.e_.begin();
  while (a != e_.end() || b != other.e_.end()) {
    if (b == other.e_.end() || (a != e_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == e_.end() || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Scalar v = a->second + c * b->second;
      if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  e_ = std::move(out);
}

void SparseVec::scale(const Scalar& c) {
  if (c.is_zero()) {
    e_.clear();
    return;
  }
  for (auto& [i, x] : e_) x *= c;
}

void SparseVec::push(std::size_t i, Scalar v) {
  if (!e_.empty() && e_.back().first >= i) throw StructuralError("SparseVec::push out of order");
  if (!v.is_zero()) e_.emplace_back(i, std::move(v));
}

bool operator==(const SparseVec& a, const SparseVec& b) {
  if (a.e_.size() != b.e_.size()) return false;
  for (std::size_t k = 0; k < a.e_.size(); ++k) {
    if (a.e_[k].first != b.e_[k].first || a.e_[k].second != b.e_[k].second) return false;
  }
  return true;
}

// ---------------------------------------------------------------- SparseMat

SparseMat SparseMat::identity(std::size_t n) {
  SparseMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i] = SparseVec::unit(i);
  return m;
}

SparseMat SparseMat::from_dense(const std::vector<Vec>& rows) {
  SparseMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.ncols_) throw StructuralError("ragged dense matrix");
    m.rows_[r] = SparseVec::from_dense(rows[r]);
  }
  return m;
}

SparseMat SparseMat::from_columns(const std::vector<SparseVec>& cols, std::size_t nrows) {
  SparseMat m(nrows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (const auto& [r, x] : cols[c].entries()) m.rows_.at(r).push(c, x);
  }
  return m;
}

SparseMat SparseMat::from_flat(const SparseVec& flat, std::size_t rows, std::size_t cols) {
  SparseMat m(rows, cols);
  for (const auto& [k, x] : flat.entries()) m.rows_.at(k / cols).push(k % cols, x);
  return m;
}

void SparseMat::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (r >= nrows_ || c >= ncols_) throw StructuralError("matrix index out of range");
  SparseVec delta;
  delta.push(c, v - get(r, c));
  rows_[r].axpy(Scalar(1), delta);
}

std::size_t SparseMat::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.nnz();
  return n;
}

Field SparseMat::field() const {
  Field f;
  for (const auto& r : rows_) f = common_field(f, r.field());
  return f;
}

SparseMat SparseMat::transpose() const {
  SparseMat t(ncols_, nrows_);
  for (std::size_t r = 0; r < nrows_; ++r) {
    for (const auto& [c, x] : rows_[r].entries()) t.rows_[c].push(r, x);
  }
  return t;
}

SparseVec SparseMat::column(std::size_t c) const {
  SparseVec v;
  for (std::size_t r = 0; r < nrows_; ++r) {
    Scalar x = rows_[r].get(c);
    if (!x.is_zero()) v.push(r, std::move(x));
  }
  return v;
}

std::vector<SparseVec> SparseMat::columns() const {
  const SparseMat t = transpose();
  return t.rows_;
}

SparseVec SparseMat::flatten() const {
  SparseVec v;
  for (std::size_t r = 0; r < nrows_; ++r) {
    for (const auto& [c, x] : rows_[r].entries()) v.push(r * ncols_ + c, x);
  }
  return v;
}

std::vector<Vec> SparseMat::to_dense() const {
  std::vector<Vec> d;
  d.reserve(nrows_);
  for (const auto& r : rows_) d.push_back(r.to_dense(ncols_));
  return d;
}

Scalar SparseMat::trace() const {
  Scalar t;
  for (std::size_t i = 0; i < std::min(nrows_, ncols_); ++i) t += rows_[i].get(i);
  return t;
}

SparseVec SparseMat::apply(const SparseVec& v) const {
  SparseVec out;
  for (std::size_t r = 0; r < nrows_; ++r) {
    const auto& a = rows_[r].entries();
    const auto& b = v.entries();
    Scalar acc;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].first < b[j].first) {
        ++i;
      } else if (b[j].first < a[i].first) {
        ++j;
      } else {
        acc += a[i].second * b[j].second;
        ++i;
        ++j;
      }
    }
    out.push(r, std::move(acc));
  }
  return out;
}

Vec SparseMat::apply(const Vec& v) const {
  if (v.size() != ncols_) throw StructuralError("dimension mismatch in matrix-vector product");
  Vec out(nrows_);
  for (std::size_t r = 0; r < nrows_; ++r) {
    for (const auto& [c, x] : rows_[r].entries()) out[r] += x * v[c];
  }
  return out;
}

SparseMat operator+(const SparseMat& a, const SparseMat& b) {
  if (a.nrows_ != b.nrows_ || a.ncols_ != b.ncols_) throw StructuralError("shape mismatch in matrix sum");
  SparseMat s = a;
  for (std::size_t r = 0; r < a.nrows_; ++r) s.rows_[r].axpy(Scalar(1), b.rows_[r]);
  return s;
}

SparseMat operator-(const SparseMat& a, const SparseMat& b) { return a + Scalar(-1) * b; }

SparseMat operator*(const SparseMat& a, const SparseMat& b) {
  if (a.ncols_ != b.nrows_) throw StructuralError("shape mismatch in matrix product");
  SparseMat p(a.nrows_, b.ncols_);
  for (std::size_t r = 0; r < a.nrows_; ++r) {
    for (const auto& [k, x] : a.rows_[r].entries()) p.rows_[r].axpy(x, b.rows_[k]);
  }
  return p;
}

SparseMat operator*(const Scalar& c, const SparseMat& a) {
  SparseMat s = a;
  for (auto& r : s.rows_) r.scale(c);
  return s;
}

bool operator==(const SparseMat& a, const SparseMat& b) {
  return a.nrows_ == b.nrows_ && a.ncols_ == b.ncols_ && a.rows_ == b.rows_;
}

std::string SparseMat::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < nrows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < ncols_; ++c) os << (c ? ", " : "") << get(r, c).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ------------------------------------------------------------- EchelonBasis

SparseVec EchelonBasis::reduce(SparseVec v) const {
  // Basis rows are fully reduced, so eliminating a pivot only creates entries
  // at non-pivot columns; one left-to-right sweep suffices.
  std::size_t from = 0;
  for (;;) {
    const auto& e = v.entries();
    auto it = std::find_if(e.begin(), e.end(), [&](const SparseVec::Entry& x) {
      return x.first >= from && x.first < row_at_.size() && row_at_[x.first] >= 0;
    });
    if (it == e.end()) return v;
    const std::size_t col = it->first;
    const Scalar c = -it->second;
    v.axpy(c, rows_[static_cast<std::size_t>(row_at_[col])]);
    from = col + 1;
  }
}

bool EchelonBasis::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.is_zero()) return false;
  insert_reduced(std::move(r));
  return true;
}

void EchelonBasis::insert_reduced(SparseVec v) {
  const std::size_t piv = v.lead();
  if (piv >= dim_) throw StructuralError("vector longer than echelon basis dimension");
  v.scale(v.lead_value().inverse());
  for (auto& row : rows_) {
    const Scalar c = row.get(piv);
    if (!c.is_zero()) row.axpy(-c, v);
  }
  if (row_at_.size() < dim_) row_at_.assign(dim_, -1);
  row_at_[piv] = static_cast<std::ptrdiff_t>(rows_.size());
  rows_.push_back(std::move(v));
  pivot_of_.push_back(piv);
}

std::vector<SparseVec> EchelonBasis::sorted() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (std::size_t c = 0; c < row_at_.size(); ++c) {
    if (row_at_[c] >= 0) out.push_back(rows_[static_cast<std::size_t>(row_at_[c])]);
  }
  return out;
}

std::vector<std::size_t> EchelonBasis::pivots() const {
  std::vector<std::size_t> p = pivot_of_;
  std::sort(p.begin(), p.end());
  return p;
}

// ----------------------------------------------------------------- Subspace

Subspace::Subspace(std::size_t ambient, const std::vector<SparseVec>& spanning, Field field)
    : ambient_(ambient), field_(std::move(field)) {
  std::vector<const SparseVec*> order;
  for (const auto& v : spanning) order.push_back(&v);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->nnz() < b->nnz(); });
  EchelonBasis eb(ambient);
  for (const auto* v : order) eb.insert(*v);
  basis_ = eb.sorted();
  for (const auto& v : basis_) field_ = common_field(field_, v.field());
}

Subspace Subspace::full(std::size_t n) {
  std::vector<SparseVec> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(SparseVec::unit(i));
  return Subspace(n, e);
}

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> p;
  for (const auto& v : basis_) p.push_back(v.lead());
  return p;
}

bool Subspace::contains(const SparseVec& v) const {
  SparseVec r = v;
  for (const auto& b : basis_) {
    const Scalar c = r.get(b.lead());
    if (!c.is_zero()) r.axpy(-c, b);
  }
  return r.is_zero();
}

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const SparseVec& v) { return contains(v); });
}

Vec Subspace::coordinates(const SparseVec& v) const {
  Vec c;
  c.reserve(basis_.size());
  for (const auto& b : basis_) c.push_back(v.get(b.lead()));
  return c;
}

SparseMat Subspace::matrix() const { return SparseMat::from_columns(basis_, ambient_); }

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
}

// ------------------------------------------------------------- elimination

Echelon echelonize(const SparseMat& m) {
  std::vector<std::size_t> order(m.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.row(a).nnz() < m.row(b).nnz(); });
  EchelonBasis eb(m.cols());
  for (auto r : order) eb.insert(m.row(r));
  Echelon out;
  const auto rows = eb.sorted();
  out.rank = rows.size();
  out.rref = SparseMat(m.rows(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.rref.row(i) = rows[i];
    out.pivots.push_back(rows[i].lead());
  }
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : out.pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    SparseVec v;
    Vec dense(m.cols());
    dense[f] = Scalar(1);
    for (std::size_t i = 0; i < rows.size(); ++i) dense[out.pivots[i]] = -rows[i].get(f);
    out.kernel.push_back(SparseVec::from_dense(dense));
  }
  return out;
}

std::size_t rank(const SparseMat& m) {
  EchelonBasis eb(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) eb.insert(m.row(r));
  return eb.size();
}

std::vector<SparseVec> kernel(const SparseMat& m) { return echelonize(m).kernel; }

std::optional<Vec> solve(const SparseMat& a, const Vec& b) {
  if (b.size() != a.rows()) throw StructuralError("solve: right-hand side has wrong length");
  SparseMat aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    aug.row(r) = a.row(r);
    aug.row(r).push(a.cols(), b[r]);
  }
  const Echelon e = echelonize(aug);
  Vec x(a.cols());
  for (std::size_t i = 0; i < e.rank; ++i) {
    if (e.pivots[i] == a.cols()) return std::nullopt;
    x[e.pivots[i]] = e.rref.get(i, a.cols());
  }
  return x;
}

Scalar determinant(const SparseMat& m) {
  if (!m.square()) throw StructuralError("determinant of a non-square matrix");
  auto a = m.to_dense();
  const std::size_t n = a.size();
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return Scalar();
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    const Scalar inv = a[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const Scalar f = a[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) {
        if (!a[c][k].is_zero()) a[r][k] -= f * a[c][k];
      }
    }
  }
  return det;
}

UPoly charpoly(const SparseMat& m) {
  if (!m.square()) throw StructuralError("charpoly of a non-square matrix");
  auto h = m.to_dense();
  const std::size_t n = h.size();
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::size_t i = k;
    while (i < n && h[i][k - 1].is_zero()) ++i;
    if (i == n) continue;
    if (i != k) {
      std::swap(h[i], h[k]);
      for (auto& row : h) std::swap(row[i], row[k]);
    }
    const Scalar t = h[k][k - 1].inverse();
    for (std::size_t r = k + 1; r < n; ++r) {
      if (h[r][k - 1].is_zero()) continue;
      const Scalar u = h[r][k - 1] * t;
      for (std::size_t c = 0; c < n; ++c) {
        if (!h[k][c].is_zero()) h[r][c] -= u * h[k][c];
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (!h[c][r].is_zero()) h[c][k] += u * h[c][r];
      }
    }
  }
  // p_j = (t - h_jj) p_{j-1} - sum_i h_{j-i,j} (h_{j,j-1} ... h_{j-i+1,j-i}) p_{j-i-1}  (1-based)
  std::vector<UPoly> p(n + 1);
  p[0] = UPoly::constant(Scalar(1));
  for (std::size_t j = 1; j <= n; ++j) {
    p[j] = UPoly::linear_root(h[j - 1][j - 1]) * p[j - 1];
    Scalar t(1);
    for (std::size_t i = 1; i < j; ++i) {
      t *= h[j - i][j - i - 1];
      if (t.is_zero()) break;
      const Scalar c = h[j - i - 1][j - 1] * t;
      if (!c.is_zero()) p[j] = p[j] - c * p[j - i - 1];
    }
  }
  return p[n];
}

UPoly minpoly(const SparseMat& m) {
  if (!m.square()) throw StructuralError("minpoly of a non-square matrix");
  const std::size_t n = m.rows();
  // Semi-echelon rows with tracked combinations of powers.
  struct Row {
    SparseVec v;
    Vec combo;
  };
  std::vector<Row> rows;
  SparseMat power = SparseMat::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    SparseVec w = power.flatten();
    Vec combo(k + 1);
    combo[k] = Scalar(1);
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.v.lead() < b.v.lead(); });
    for (const auto& r : rows) {
      const Scalar c = w.get(r.v.lead());
      if (c.is_zero()) continue;
      w.axpy(-c, r.v);
      for (std::size_t i = 0; i < r.combo.size(); ++i) combo[i] -= c * r.combo[i];
    }
    if (w.is_zero()) return UPoly(combo).monic();
    const Scalar inv = w.lead_value().inverse();
    w.scale(inv);
    for (auto& x : combo) x *= inv;
    rows.push_back({std::move(w), std::move(combo)});
    power = power * m;
  }
  throw StructuralError("minpoly: no dependency found (unreachable)");
}

SparseMat eval(const UPoly& p, const SparseMat& m) {
  if (!m.square()) throw StructuralError("polynomial evaluation at a non-square matrix");
  SparseMat acc(m.rows(), m.cols());
  const SparseMat id = SparseMat::identity(m.rows());
  for (int k = p.degree(); k >= 0; --k) acc = acc * m + p.coeff(k) * id;
  return acc;
}

SparseMat inverse(const SparseMat& m) {
  if (!m.square()) throw StructuralError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  SparseMat aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    aug.row(r) = m.row(r);
    aug.row(r).push(n + r, Scalar(1));
  }
  const Echelon e = echelonize(aug);
  if (e.rank < n || e.pivots[n - 1] >= n) throw StructuralError("singular matrix has no inverse");
  SparseMat inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (const auto& [c, x] : e.rref.row(r).entries()) {
      if (c >= n) inv.row(r).push(c - n, x);
    }
  }
  return inv;
}

std::optional<std::size_t> rank_mod_p(const std::vector<SparseVec>& rows, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const modp::PrimeField fp(modp::random_prime(rng));
  modp::ModMatrix mm(rows.size(), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [c, x] : rows[r].entries()) {
      if (!x.is_rational()) return std::nullopt;
      const auto v = fp.reduce(x.rational());
      if (!v) return std::nullopt;
      mm.set(r, c, *v);
    }
  }
  return modp::rank(std::move(mm), fp);
}

}  // namespace exlump
