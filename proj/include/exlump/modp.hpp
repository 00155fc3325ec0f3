#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "exlump/field.hpp"
#include "exlump/simd/kernels.hpp"

namespace exlump::modp {

/// Primes are drawn below 2^26 so residue products stay exact in doubles.
inline constexpr std::uint64_t kPrimeBits = 26;

struct PrimeField {
  std::uint64_t p;

  explicit PrimeField(std::uint64_t prime) : p(prime) {}
  simd::ModParams params() const { return {static_cast<double>(p), 1.0 / static_cast<double>(p)}; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;
  /// Image of a rational number; nullopt when p divides the denominator.
  std::optional<std::uint64_t> reduce(const Rational& q) const;
  std::uint64_t reduce(const Integer& z) const;
};

/// Uniform random prime in [2^(bits-1), 2^bits).
std::uint64_t random_prime(std::mt19937_64& rng, std::uint64_t bits = kPrimeBits);

/// Dense row-major matrix of residues (stored as integral doubles).
class ModMatrix {
 public:
  ModMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double* row(std::size_t r) { return a_.data() + r * cols_; }
  const double* row(std::size_t r) const { return a_.data() + r * cols_; }
  std::uint64_t get(std::size_t r, std::size_t c) const { return static_cast<std::uint64_t>(a_[r * cols_ + c]); }
  void set(std::size_t r, std::size_t c, std::uint64_t v) { a_[r * cols_ + c] = static_cast<double>(v); }

 private:
  std::size_t rows_, cols_;
  std::vector<double> a_;
};

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(ModMatrix& m, const PrimeField& fp);
std::size_t rank(ModMatrix m, const PrimeField& fp);
/// Basis of the right kernel {x : m x = 0}.
std::vector<std::vector<std::uint64_t>> nullspace(ModMatrix m, const PrimeField& fp);

/// Incremental echelon basis of row vectors mod p (used for span dimension
/// certificates). Rows are kept fully reduced.
class RowBasis {
 public:
  RowBasis(std::size_t dim, const PrimeField& fp) : dim_(dim), fp_(fp) {}
  /// Reduces v in place; returns true (and keeps it) if it was independent.
  bool insert(std::vector<double> v);
  std::size_t size() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
  PrimeField fp_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Dense polynomial over GF(p), lowest degree first, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a);
int degree(const Poly& a);
Poly add(const Poly& a, const Poly& b, const PrimeField& fp);
Poly sub(const Poly& a, const Poly& b, const PrimeField& fp);
Poly mul(const Poly& a, const Poly& b, const PrimeField& fp);
Poly scale(const Poly& a, std::uint64_t c, const PrimeField& fp);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const PrimeField& fp);
Poly mod(const Poly& a, const Poly& b, const PrimeField& fp);
Poly gcd(const Poly& a, const Poly& b, const PrimeField& fp);
Poly monic(const Poly& a, const PrimeField& fp);
Poly derivative(const Poly& a, const PrimeField& fp);
/// base^e mod m
Poly powmod(const Poly& base, const Integer& e, const Poly& m, const PrimeField& fp);
/// (g, s, t) with s a + t b = g monic.
struct XGcd {
  Poly g, s, t;
};
XGcd xgcd(const Poly& a, const Poly& b, const PrimeField& fp);

/// Distinct monic irreducible factors of a monic square-free f over GF(p)
/// (Berlekamp subalgebra, split by random elements). Sorted by degree.
std::vector<Poly> berlekamp_factor(const Poly& f, const PrimeField& fp, std::mt19937_64& rng);

}  // namespace exlump::modp
