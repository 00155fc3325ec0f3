#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "exlump/polyring.hpp"

using namespace exlump;

namespace {

MultiPoly var(std::size_t n, std::size_t i) { return MultiPoly::variable(n, i); }
MultiPoly cst(std::size_t n, long c) { return MultiPoly::constant(n, Scalar(c)); }

MultiPoly random_poly(std::size_t n, unsigned maxdeg, std::mt19937_64& rng) {
  MultiPoly p(n);
  const int terms = 1 + static_cast<int>(rng() % 5);
  for (int t = 0; t < terms; ++t) {
    std::vector<unsigned> e(n);
    unsigned budget = static_cast<unsigned>(rng() % (maxdeg + 1));
    while (budget--) ++e[rng() % n];
    p += MultiPoly::term(n, Monomial::from_exponents(e),
                         Scalar(Rational(static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 3) + 1)));
  }
  return p;
}

void check_canonical(const MultiPoly& p) {
  for (const auto& [m, c] : p.terms()) CHECK(!c.is_zero());
}

}  // namespace

TEST_CASE("arithmetic examples") {
  const auto x1 = var(2, 0), x2 = var(2, 1);
  CHECK((x1 + (-x1)).is_zero());
  CHECK((x2 * x2) == MultiPoly::term(2, Monomial::variable(1, 2), Scalar(1)));
  CHECK_THROWS_AS(x1 + var(3, 0), StructuralError);
}

TEST_CASE("mass-action term of the running example expands to the product") {
  // variables: X, U, AXU, AUX, A, k1, k2
  const std::size_t n = 7;
  const auto k1 = var(n, 5), x = var(n, 0), u = var(n, 1);
  const MultiPoly t = (k1 * x) * u;
  CHECK(t.terms().size() == 1);
  CHECK(t.str({"X", "U", "AXU", "AUX", "A", "k1", "k2"}) == "X*U*k1");
}

TEST_CASE("rendering in degree-lex order") {
  const auto x1 = var(2, 0), x2 = var(2, 1);
  const MultiPoly p = x1 - Scalar(2) * x2 * x2;
  CHECK(p.differentiate(1).str({"x1", "x2"}) == "-4*x2");
  CHECK((Scalar(2) * x2 * x2 - Scalar(4) * x2).str({"x1", "x2"}) == "-4*x2 + 2*x2^2");
  CHECK((cst(2, 3) - x1 + Scalar(Rational(1, 2)) * x1 * x2).str({"x1", "x2"}) == "3 - x1 + 1/2*x1*x2");
  CHECK(MultiPoly(2).str({"x1", "x2"}) == "0");
}

TEST_CASE("differentiation") {
  const auto x1 = var(2, 0), x2 = var(2, 1);
  CHECK((x1 - Scalar(2) * x2.pow(2)).differentiate(1) == Scalar(-4) * x2);
  CHECK(cst(2, 5).differentiate(0).is_zero());
  // d/dx x^3 = 3x^2 against a finite-difference oracle: for a cubic the
  // symmetric difference (p(a+h) - p(a-h)) / 2h equals p'(a) + h^2.
  const MultiPoly c = var(1, 0).pow(3);
  const MultiPoly d = c.differentiate(0);
  for (long a : {-2L, 0L, 1L, 3L, 7L}) {
    const Scalar h(Rational(1, 10));
    const Scalar fd = (c.eval({Scalar(a) + h}) - c.eval({Scalar(a) - h})) / (Scalar(2) * h) - h * h;
    CHECK(fd == d.eval({Scalar(a)}));
  }
}

TEST_CASE("ring axioms and Leibniz rule on random polynomials") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_poly(3, 3, rng), q = random_poly(3, 3, rng), r = random_poly(3, 3, rng);
    CHECK((p + q) + r == p + (q + r));
    CHECK(p * (q + r) == p * q + p * r);
    check_canonical(p * q);
    check_canonical(p - p);
    for (std::size_t v = 0; v < 3; ++v) {
      CHECK((p * q).differentiate(v) == p.differentiate(v) * q + p * q.differentiate(v));
    }
  }
}

TEST_CASE("linear substitution") {
  const auto x1 = var(2, 0), x2 = var(2, 1);
  CHECK(substitute_linear(x1 * x2 + x2, SparseMat::identity(2)) == x1 * x2 + x2);
  // z1 = x1 + x2, z2 = x2  =>  x1 = z1 - z2, x2 = z2  (x = z * change)
  SparseMat change(2, 2);
  change.set(0, 0, Scalar(1));
  change.set(1, 0, Scalar(-1));
  change.set(1, 1, Scalar(1));
  CHECK(substitute_linear(x1 + x2, change) == x1);
  SparseMat singular(2, 2);
  singular.set(0, 0, Scalar(1));
  CHECK_THROWS_AS(substitute_linear(x1, singular), StructuralError);
}

TEST_CASE("substitution round trip with a random invertible change") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    SparseMat m(3, 3);
    do {
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m.set(i, j, Scalar(static_cast<long>(rng() % 7) - 3));
    } while (determinant(m).is_zero());
    const MultiPoly p = random_poly(3, 3, rng);
    CHECK(substitute_linear(substitute_linear(p, m), inverse(m)) == p);
  }
}
