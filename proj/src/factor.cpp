#include "exlump/factor.hpp"

#include <algorithm>
#include <random>

#include "exlump/modp.hpp"

namespace exlump {

namespace {

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  ztrim(r);
  return r;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, int sign = 1) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += sign * b[i];
  }
  ztrim(r);
  return r;
}

ZPoly zmod(ZPoly a, const Integer& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  ztrim(a);
  return a;
}

ZPoly zsymmetric(ZPoly a, const Integer& m) {
  const Integer half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  ztrim(a);
  return a;
}

// Division by a monic polynomial; coefficients reduced mod m when m > 0.
std::pair<ZPoly, ZPoly> zdivmod_monic(ZPoly a, const ZPoly& h, const Integer& m) {
  ztrim(a);
  if (a.size() < h.size()) return {{}, m > 0 ? zmod(a, m) : a};
  ZPoly q(a.size() - h.size() + 1);
  for (std::size_t k = a.size(); k-- > h.size() - 1;) {
    if (m > 0) mpz_fdiv_r(a[k].get_mpz_t(), a[k].get_mpz_t(), m.get_mpz_t());
    if (sgn(a[k]) == 0) continue;
    const Integer c = a[k];
    const std::size_t shift = k - (h.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < h.size(); ++j) a[shift + j] -= c * h[j];
  }
  if (m > 0) {
    q = zmod(q, m);
    a = zmod(a, m);
  } else {
    ztrim(q);
    ztrim(a);
  }
  return {q, a};
}

ZPoly from_modp(const modp::Poly& a) {
  ZPoly r;
  r.reserve(a.size());
  for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
  ztrim(r);
  return r;
}

modp::Poly to_modp(const ZPoly& a, const modp::PrimeField& fp) {
  modp::Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = fp.reduce(a[i]);
  modp::trim(r);
  return r;
}

struct Lift {
  ZPoly g, h, s, t;
};

// One quadratic Hensel step: from F = g h, s g + t h = 1 (mod m) to mod m^2.
Lift hensel_step(const ZPoly& F, const Lift& in, const Integer& m) {
  const Integer m2 = m * m;
  const ZPoly e = zmod(zadd(F, zmul(in.g, in.h), -1), m2);
  auto [q, r] = zdivmod_monic(zmul(in.s, e), in.h, m2);
  Lift out;
  out.g = zmod(zadd(zadd(in.g, zmul(in.t, e)), zmul(q, in.g)), m2);
  out.h = zmod(zadd(in.h, r), m2);
  const ZPoly b = zmod(zadd(zadd(zmul(in.s, out.g), zmul(in.t, out.h)), ZPoly{Integer(1)}, -1), m2);
  auto [c, d] = zdivmod_monic(zmul(in.s, b), out.h, m2);
  out.s = zmod(zadd(in.s, d, -1), m2);
  out.t = zmod(zadd(zadd(in.t, zmul(in.t, b), -1), zmul(c, out.g), -1), m2);
  return out;
}

// Lifts F = prod(factors) mod p to mod p^(2^steps) via a binary factor tree.
std::vector<ZPoly> multifactor_lift(const ZPoly& F, const std::vector<modp::Poly>& factors,
                                    const modp::PrimeField& fp, int steps) {
  if (factors.size() == 1) {
    Integer M(static_cast<unsigned long>(fp.p));
    for (int i = 0; i < steps; ++i) M *= M;
    return {zmod(F, M)};
  }
  const std::size_t half = factors.size() / 2;
  const std::vector<modp::Poly> left(factors.begin(), factors.begin() + static_cast<long>(half));
  const std::vector<modp::Poly> right(factors.begin() + static_cast<long>(half), factors.end());
  modp::Poly g{1}, h{1};
  for (const auto& f : left) g = modp::mul(g, f, fp);
  for (const auto& f : right) h = modp::mul(h, f, fp);
  const auto bez = modp::xgcd(g, h, fp);
  Lift cur{from_modp(g), from_modp(h), from_modp(bez.s), from_modp(bez.t)};
  Integer m(static_cast<unsigned long>(fp.p));
  for (int i = 0; i < steps; ++i) {
    cur = hensel_step(F, cur, m);
    m *= m;
  }
  auto a = multifactor_lift(cur.g, left, fp, steps);
  auto b = multifactor_lift(cur.h, right, fp, steps);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool zdivides_monic(const ZPoly& f, const ZPoly& g, ZPoly* quotient) {
  if (sgn(f[0]) != 0 && sgn(g[0]) == 0) return false;
  if (sgn(g[0]) != 0 && !mpz_divisible_p(f[0].get_mpz_t(), g[0].get_mpz_t())) return false;
  auto [q, r] = zdivmod_monic(f, g, Integer(0));
  if (!r.empty()) return false;
  if (quotient) *quotient = std::move(q);
  return true;
}

// Irreducible factors of a monic square-free integer polynomial.
std::vector<ZPoly> factor_monic_squarefree(const ZPoly& f, std::mt19937_64& rng) {
  const int d = zdeg(f);
  if (d <= 1) return {f};

  // Pick, among a few good primes, the one giving the fewest modular factors.
  std::vector<modp::Poly> best;
  std::uint64_t best_p = 0;
  int good = 0;
  for (int attempt = 0; attempt < 200 && good < 4; ++attempt) {
    const std::uint64_t p = modp::random_prime(rng, 20);
    const modp::PrimeField fp(p);
    const modp::Poly fm = to_modp(f, fp);
    if (modp::degree(modp::gcd(fm, modp::derivative(fm, fp), fp)) != 0) continue;
    ++good;
    auto facs = modp::berlekamp_factor(fm, fp, rng);
    if (best_p == 0 || facs.size() < best.size()) {
      best = std::move(facs);
      best_p = p;
    }
    if (best.size() == 1) return {f};
  }
  if (best_p == 0) throw StructuralError("no good reduction prime found");
  const modp::PrimeField fp(best_p);

  const Integer bound = detail::factor_coefficient_bound(f);
  Integer M(static_cast<unsigned long>(best_p));
  int steps = 0;
  while (M <= 2 * bound) {
    M *= M;
    ++steps;
  }
  std::vector<ZPoly> lifted = multifactor_lift(f, best, fp, steps);

  // Zassenhaus recombination over subsets of increasing size.
  std::vector<ZPoly> result;
  ZPoly F = f;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      ZPoly g{Integer(1)};
      for (auto i : idx) g = zmod(zmul(g, lifted[i]), M);
      g = zsymmetric(g, M);
      ZPoly q;
      if (zdeg(g) >= 1 && zdivides_monic(F, g, &q)) {
        result.push_back(g);
        F = std::move(q);
        for (std::size_t k = s; k-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[k]));
        found = true;
        break;
      }
      // next combination
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == lifted.size() - s + (k - 1)) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (zdeg(F) >= 1) result.push_back(F);
  return result;
}

UPoly to_upoly(const ZPoly& z) {
  std::vector<Scalar> c;
  c.reserve(z.size());
  for (const auto& v : z) c.emplace_back(v);
  return UPoly(std::move(c));
}

// Small dense determinant over the field of the entries.
Scalar determinant(std::vector<std::vector<Scalar>> a) {
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

// Coordinates of x in the power basis of K over its parent.
std::vector<Scalar> coordinates(const Scalar& x, const Field& K) {
  std::vector<Scalar> c(static_cast<std::size_t>(K->degree()));
  if (x.field() == K) {
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) c[i] = x.coeffs()[i];
  } else {
    c[0] = x;
  }
  return c;
}

Scalar element_norm(const Scalar& x, const Field& K) {
  const int e = K->degree();
  const Scalar gen = Scalar::generator(K);
  std::vector<std::vector<Scalar>> m(static_cast<std::size_t>(e), std::vector<Scalar>(static_cast<std::size_t>(e)));
  Scalar col = x;
  for (int j = 0; j < e; ++j) {
    const auto c = coordinates(col, K);
    for (int i = 0; i < e; ++i) m[i][j] = c[i];
    col *= gen;
  }
  return determinant(std::move(m));
}

// Newton interpolation through (x_i, y_i).
UPoly interpolate(const std::vector<Scalar>& xs, std::vector<Scalar> ys) {
  const std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  }
  UPoly acc = UPoly::constant(ys[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) {
    acc = acc * UPoly::linear_root(xs[k]) + UPoly::constant(ys[k]);
  }
  return acc;
}

std::vector<UPoly> factor_squarefree(const UPoly& f, const Field& K, const FactorOptions& opts);

// Trager's algorithm for a monic square-free f over K = L(a).
std::vector<UPoly> factor_squarefree_extension(const UPoly& f, const Field& K, const FactorOptions& opts) {
  if (f.degree() <= 1) return {f};
  const long needed = static_cast<long>(f.degree()) * absolute_degree(K);
  if (needed > opts.limits.max_extension_degree) {
    throw CapExceeded("norm of degree " + std::to_string(needed) + " exceeds degree cap " +
                      std::to_string(opts.limits.max_extension_degree));
  }
  const Scalar gen = Scalar::generator(K);
  for (long s = 0; s < 64; ++s) {
    const long shift = (s % 2 == 0) ? s / 2 : -(s + 1) / 2;
    const Scalar sa = Scalar(shift) * gen;
    const UPoly g = f.shifted(-sa);  // g(t) = f(t - s a)
    const UPoly N = norm_down(g, K);
    if (!is_squarefree(N)) continue;
    std::vector<UPoly> out;
    for (const auto& Ni : factor_squarefree(N.monic(), K->parent, opts)) {
      const UPoly h = gcd(g, Ni);
      if (h.degree() >= 1) out.push_back(h.shifted(sa).monic());
    }
    return out;
  }
  throw StructuralError("no square-free norm shift found");
}

std::vector<UPoly> factor_squarefree(const UPoly& f, const Field& K, const FactorOptions& opts) {
  if (!K) return detail::factor_squarefree_rational(f, opts.seed);
  return factor_squarefree_extension(f, K, opts);
}

}  // namespace

UPoly norm_down(const UPoly& g, const Field& K) {
  if (!K) return g;
  const int n = g.degree() * K->degree();
  std::vector<Scalar> xs, ys;
  for (int c = 0; c <= n; ++c) {
    xs.emplace_back(c);
    ys.push_back(element_norm(g.eval(Scalar(c)), K));
  }
  return interpolate(xs, std::move(ys));
}

namespace detail {

Integer factor_coefficient_bound(const std::vector<Integer>& f) {
  Integer mx = 0;
  for (const auto& c : f) mx = std::max(mx, Integer(abs(c)));
  Integer two_d;
  mpz_ui_pow_ui(two_d.get_mpz_t(), 2, f.size() - 1);
  return Integer(static_cast<unsigned long>(f.size())) * two_d * mx;
}

std::vector<UPoly> factor_squarefree_rational(const UPoly& f, std::uint64_t seed) {
  if (f.degree() <= 1) return {f.monic()};
  // Clear denominators and content.
  Integer lcm_den = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.rational().get_den_mpz_t());
  ZPoly z;
  for (const auto& c : f.coeffs()) {
    Rational v = c.rational() * lcm_den;
    z.push_back(v.get_num());
  }
  Integer content = 0;
  for (const auto& c : z) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  for (auto& c : z) c /= content;
  if (z.back() < 0) {
    for (auto& c : z) c = -c;
  }

  // Monic transform: h(x) = a^(d-1) z(x / a).
  const Integer a = z.back();
  const int d = zdeg(z);
  ZPoly h(z.size());
  Integer apow = 1;
  for (int i = d; i-- > 0;) {
    h[i] = z[i] * apow;
    apow *= a;
  }
  h[d] = 1;

  std::mt19937_64 rng(seed);
  std::vector<UPoly> out;
  for (const auto& g : factor_monic_squarefree(h, rng)) {
    // Undo: factor of z is primpart(g(a x)).
    ZPoly back(g.size());
    Integer ap = 1;
    for (std::size_t i = 0; i < g.size(); ++i) {
      back[i] = g[i] * ap;
      ap *= a;
    }
    out.push_back(to_upoly(back).monic());
  }
  return out;
}

}  // namespace detail

UPoly Factorization::product() const {
  UPoly p = UPoly::constant(leading);
  for (const auto& [f, m] : factors) p = p * pow(f, m);
  return p;
}

Factorization factor_univariate(const UPoly& p, const Field& K, const FactorOptions& opts) {
  if (p.degree() < 1) throw StructuralError("factorization of a constant polynomial");
  if (!is_subfield(p.field(), K)) throw StructuralError("polynomial not over the requested field");
  Factorization out;
  out.leading = p.lc();
  const auto parts = squarefree_decomposition(p);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() < 1) continue;
    for (auto& f : factor_squarefree(parts[i], K, opts)) {
      out.factors.emplace_back(std::move(f), static_cast<int>(i + 1));
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  return out;
}

bool is_irreducible(const UPoly& p, const Field& K, const FactorOptions& opts) {
  const auto f = factor_univariate(p, K, opts);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

}  // namespace exlump
