#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "exlump/factor.hpp"

using namespace exlump;

namespace {

UPoly random_poly(int deg, int height, std::mt19937_64& rng, bool monic) {
  std::vector<Scalar> c;
  for (int i = 0; i < deg; ++i) c.emplace_back(static_cast<long>(rng() % (2 * height + 1)) - height);
  long lead = monic ? 1 : static_cast<long>(rng() % height) + 1;
  c.emplace_back(lead);
  return UPoly(std::move(c));
}

std::vector<Integer> primitive_integer(const UPoly& p) {
  Integer den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<Integer> z;
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    const Rational v = c.rational() * den;
    z.push_back(v.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  for (auto& c : z) c /= g;
  return z;
}

std::vector<long> divisors(const Integer& v) {
  std::vector<long> d;
  const long a = Integer(abs(v)).get_si();
  for (long i = 1; i <= a; ++i)
    if (a % i == 0) d.push_back(i);
  return d;
}

// Brute-force irreducibility oracle for degree <= 4 over QQ: search all
// integer candidates a t + b and a t^2 + b t + c allowed by Gauss's lemma,
// with |b| bounded by 2 * ||p||_2 for the quadratic middle coefficient.
bool brute_irreducible(const UPoly& p) {
  if (p.degree() <= 1) return true;
  const auto z = primitive_integer(p);
  if (sgn(z[0]) == 0) return false;
  const auto lead = divisors(z.back());
  const auto tail = divisors(z[0]);
  for (long a : lead)
    for (long c : tail)
      for (long s : {1, -1})
        if ((p % UPoly{Scalar(s * c), Scalar(a)}).is_zero()) return false;
  if (p.degree() <= 3) return true;
  Integer norm2 = 0;
  for (const auto& c : z) norm2 += c * c;
  const long bound = 2 * Integer(sqrt(norm2)).get_si() + 2;
  for (long a : lead)
    for (long c : tail)
      for (long s : {1, -1})
        for (long b = -bound; b <= bound; ++b)
          if ((p % UPoly{Scalar(s * c), Scalar(b), Scalar(a)}).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("t^4 - 1 over QQ") {
  const auto f = factor_univariate(UPoly{-1, 0, 0, 0, 1}, nullptr);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0].first == UPoly({-1, 1}));
  CHECK(f.factors[1].first == UPoly({1, 1}));
  CHECK(f.factors[2].first == UPoly({1, 0, 1}));
  CHECK(f.product() == UPoly({-1, 0, 0, 0, 1}));
}

TEST_CASE("t^2 + 1 splits over QQ(i)") {
  const Field K = extend(nullptr, UPoly{1, 0, 1}, {});
  const Scalar i = Scalar::generator(K);
  const auto f = factor_univariate(UPoly{1, 0, 1}, K);
  REQUIRE(f.factors.size() == 2);
  for (const auto& [g, m] : f.factors) {
    CHECK(m == 1);
    CHECK(g.degree() == 1);
  }
  CHECK(f.product() == UPoly({1, 0, 1}));
  CHECK(((f.factors[0].first.coeff(0) == i) || (f.factors[0].first.coeff(0) == -i)));
}

TEST_CASE("t^3 - 2 over its own root field") {
  const Field K = extend(nullptr, UPoly{-2, 0, 0, 1}, {});
  const auto f = factor_univariate(UPoly{-2, 0, 0, 1}, K);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].first.degree() == 1);
  CHECK(f.factors[1].first.degree() == 2);
  CHECK(f.product() == UPoly({-2, 0, 0, 1}));
  CHECK(is_irreducible(f.factors[1].first, K));
}

TEST_CASE("multiplicities and leading coefficient") {
  const UPoly p = Scalar(Rational(-3, 2)) * (pow(UPoly{-1, 1}, 3) * pow(UPoly{2, 0, 1}, 2) * UPoly{1, 2});
  const auto f = factor_univariate(p, nullptr);
  CHECK(f.leading == Scalar(-3));
  CHECK(f.product() == p);
  REQUIRE(f.factors.size() == 3);
}

TEST_CASE("planted irreducible factors of degrees 3 and 4 are recovered") {
  std::mt19937_64 rng(11);
  int done = 0;
  while (done < 10) {
    const UPoly a = random_poly(3, 6, rng, true);
    const UPoly b = random_poly(4, 6, rng, true);
    if (!brute_irreducible(a) || !brute_irreducible(b) || gcd(a, b).degree() > 0) continue;
    const auto f = factor_univariate(a * b, nullptr);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == a);
    CHECK(f.factors[1].first == b);
    ++done;
  }
}

TEST_CASE("Swinnerton-Dyer style polynomial is irreducible") {
  // (t^2 - 2 - 3)^2 - 24 = t^4 - 10 t^2 + 1, minimal polynomial of sqrt2 + sqrt3
  CHECK(is_irreducible(UPoly{1, 0, -10, 0, 1}, nullptr));
  const Field K = extend(nullptr, UPoly{-2, 0, 1}, {});
  const auto f = factor_univariate(UPoly{1, 0, -10, 0, 1}, K);
  CHECK(f.factors.size() == 2);
  CHECK(f.product() == UPoly({1, 0, -10, 0, 1}));
}

TEST_CASE("degree cap surfaces as CapExceeded") {
  FactorOptions opts;
  opts.limits.max_extension_degree = 4;
  const Field K = extend(nullptr, UPoly{-2, 0, 0, 1}, {});
  CHECK_THROWS_AS(factor_univariate(UPoly{-5, 0, 1}, K, opts), CapExceeded);
}

TEST_CASE("recombination and brute-force irreducibility on random polynomials") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int deg = 1 + static_cast<int>(rng() % 6);
    UPoly p = random_poly(deg, 50, rng, false);
    if (trial % 3 == 0) p = p * random_poly(1 + static_cast<int>(rng() % 2), 5, rng, true);
    const auto f = factor_univariate(p, nullptr);
    CHECK(f.product() == p);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      const UPoly& g = f.factors[i].first;
      CHECK(g.lc() == Scalar(1));
      for (std::size_t j = i + 1; j < f.factors.size(); ++j) CHECK(gcd(g, f.factors[j].first).degree() == 0);
      if (g.degree() <= 4) CHECK(brute_irreducible(g));
    }
  }
}
