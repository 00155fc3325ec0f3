#include "exlump/modp.hpp"

#include <algorithm>

namespace exlump::modp {

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p == 0) throw StructuralError("inverse of zero mod p");
  return pow(a, p - 2);
}

std::optional<std::uint64_t> PrimeField::reduce(const Rational& q) const {
  const std::uint64_t den = reduce(q.get_den());
  if (den == 0) return std::nullopt;
  return mul(reduce(q.get_num()), inv(den));
}

std::uint64_t PrimeField::reduce(const Integer& z) const {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

std::uint64_t random_prime(std::mt19937_64& rng, std::uint64_t bits) {
  const std::uint64_t lo = std::uint64_t{1} << (bits - 1);
  for (;;) {
    const std::uint64_t cand = (lo + rng() % lo) | 1;
    if (mpz_probab_prime_p(Integer(static_cast<unsigned long>(cand)).get_mpz_t(), 30) > 0) return cand;
  }
}

std::vector<std::size_t> rref(ModMatrix& m, const PrimeField& fp) {
  const auto& k = simd::kernels();
  const auto mp = fp.params();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pr = r;
    while (pr < m.rows() && m.row(pr)[c] == 0.0) ++pr;
    if (pr == m.rows()) continue;
    if (pr != r) std::swap_ranges(m.row(pr), m.row(pr) + m.cols(), m.row(r));
    const double inv = static_cast<double>(fp.inv(m.get(r, c)));
    k.scale_mod(m.row(r), inv, m.cols(), mp);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.row(i)[c] == 0.0) continue;
      const double f = static_cast<double>(fp.neg(m.get(i, c)));
      k.axpy_mod(m.row(i), m.row(r), f, m.cols(), mp);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(ModMatrix m, const PrimeField& fp) { return rref(m, fp).size(); }

std::vector<std::vector<std::uint64_t>> nullspace(ModMatrix m, const PrimeField& fp) {
  const auto pivots = rref(m, fp);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint64_t> v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = fp.neg(m.get(i, f));
    basis.push_back(std::move(v));
  }
  return basis;
}

bool RowBasis::insert(std::vector<double> v) {
  const auto& k = simd::kernels();
  const auto mp = fp_.params();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const double c = v[pivots_[i]];
    if (c != 0.0) k.axpy_mod(v.data(), rows_[i].data(), static_cast<double>(fp_.neg(static_cast<std::uint64_t>(c))), dim_, mp);
  }
  const std::size_t piv = k.find_nonzero(v.data(), 0, dim_);
  if (piv == dim_) return false;
  k.scale_mod(v.data(), static_cast<double>(fp_.inv(static_cast<std::uint64_t>(v[piv]))), dim_, mp);
  for (auto& row : rows_) {
    const double c = row[piv];
    if (c != 0.0) k.axpy_mod(row.data(), v.data(), static_cast<double>(fp_.neg(static_cast<std::uint64_t>(c))), dim_, mp);
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly add(const Poly& a, const Poly& b, const PrimeField& fp) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = fp.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, const PrimeField& fp) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = fp.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, const PrimeField& fp) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % fp.p;
  }
  trim(r);
  return r;
}

Poly scale(const Poly& a, std::uint64_t c, const PrimeField& fp) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = fp.mul(a[i], c);
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const PrimeField& fp) {
  if (b.empty()) throw StructuralError("division by zero polynomial mod p");
  Poly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  const std::uint64_t inv = fp.inv(b.back());
  Poly q(r.size() - b.size() + 1, 0);
  for (std::size_t k = r.size(); k-- > b.size() - 1;) {
    if (!r[k]) continue;
    const std::uint64_t c = fp.mul(r[k], inv);
    const std::size_t shift = k - (b.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] = fp.sub(r[shift + j], fp.mul(c, b[j]));
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly mod(const Poly& a, const Poly& b, const PrimeField& fp) { return divmod(a, b, fp).second; }

Poly monic(const Poly& a, const PrimeField& fp) {
  if (a.empty()) return a;
  return scale(a, fp.inv(a.back()), fp);
}

Poly gcd(const Poly& a, const Poly& b, const PrimeField& fp) {
  Poly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    Poly r = mod(x, y, fp);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x, fp);
}

Poly derivative(const Poly& a, const PrimeField& fp) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) r[k - 1] = fp.mul(a[k], k % fp.p);
  trim(r);
  return r;
}

Poly powmod(const Poly& base, const Integer& e, const Poly& m, const PrimeField& fp) {
  Poly result{1};
  Poly b = mod(base, m, fp);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(mul(result, result, fp), m, fp);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(mul(result, b, fp), m, fp);
  }
  return result;
}

XGcd xgcd(const Poly& a, const Poly& b, const PrimeField& fp) {
  Poly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, fp);
    Poly s2 = sub(s0, mul(q, s1, fp), fp);
    Poly t2 = sub(t0, mul(q, t1, fp), fp);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {r0, s0, t0};
  const std::uint64_t inv = fp.inv(r0.back());
  return {scale(r0, inv, fp), scale(s0, inv, fp), scale(t0, inv, fp)};
}

std::vector<Poly> berlekamp_factor(const Poly& f, const PrimeField& fp, std::mt19937_64& rng) {
  const int n = degree(f);
  if (n <= 1) return {f};
  // Rows of Q: x^(i p) mod f. Berlekamp subalgebra = left kernel of Q - I.
  const Poly xp = powmod(Poly{0, 1}, Integer(static_cast<unsigned long>(fp.p)), f, fp);
  ModMatrix qt(n, n);  // transpose of (Q - I), so kernel vectors are right kernels
  Poly cur{1};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::uint64_t v = j < static_cast<int>(cur.size()) ? cur[j] : 0;
      if (i == j) v = fp.sub(v, 1);
      qt.set(j, i, v);
    }
    cur = mod(mul(cur, xp, fp), f, fp);
  }
  const auto basis = nullspace(qt, fp);
  const std::size_t r = basis.size();
  std::vector<Poly> factors{f};
  if (r == 1) return factors;

  const Integer half = (Integer(static_cast<unsigned long>(fp.p)) - 1) / 2;
  while (factors.size() < r) {
    Poly g;
    for (const auto& v : basis) {
      const std::uint64_t c = rng() % fp.p;
      g = add(g, scale(Poly(v.begin(), v.end()), c, fp), fp);
    }
    trim(g);
    if (degree(g) < 1) continue;
    std::vector<Poly> next;
    for (const auto& h : factors) {
      if (degree(h) <= 1) {
        next.push_back(h);
        continue;
      }
      Poly w = sub(powmod(g, half, h, fp), Poly{1}, fp);
      Poly d = gcd(h, w, fp);
      if (degree(d) > 0 && degree(d) < degree(h)) {
        next.push_back(d);
        next.push_back(divmod(h, d, fp).first);
      } else {
        next.push_back(h);
      }
    }
    factors = std::move(next);
  }
  for (auto& fac : factors) fac = monic(fac, fp);
  std::sort(factors.begin(), factors.end(), [](const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return factors;
}

}  // namespace exlump::modp
