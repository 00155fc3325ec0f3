// Acceptance checks: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "exlump/factor.hpp"
#include "exlump/report.hpp"

using namespace exlump;

namespace {

using Clock = std::chrono::steady_clock;

std::string data(const std::string& rel) { return std::string(EXLUMP_DATA_DIR) + "/" + rel; }

const std::vector<std::string> kFixtures = {"running_example.ode", "two_state.ode",  "knight.ode",
                                            "rotation.ode",        "diagonalizable.ode", "cube_root.ode",
                                            "scalars_only.ode"};

struct Check {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << what;
    ok = ok && cond;
  }
};

SparseVec vec(std::initializer_list<Scalar> v) { return SparseVec::from_dense(Vec(v)); }

Subspace span(std::size_t n, std::initializer_list<std::initializer_list<Scalar>> vs) {
  std::vector<SparseVec> out;
  for (const auto& v : vs) out.push_back(vec(v));
  return Subspace(n, out);
}

SparseMat columns(std::initializer_list<std::initializer_list<Scalar>> cols, std::size_t rows) {
  std::vector<SparseVec> cs;
  for (const auto& c : cols) cs.push_back(vec(c));
  return SparseMat::from_columns(cs, rows);
}

Subspace column_space(const SparseMat& L) { return Subspace(L.rows(), L.columns()); }

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

struct Loaded {
  ODEModel model;
  JacobianDecomposition decomposition;
  EchelonMatBasis algebra;
};

Loaded load(const std::string& name) {
  Loaded l;
  l.model = curry_parameters(read_model_file(data("fixtures/" + name)));
  l.decomposition = jacobian_decomposition(l.model);
  l.algebra = jacobian_algebra(l.decomposition);
  return l;
}

MultiPoly var(std::size_t nv, std::size_t i) { return MultiPoly::variable(nv, i); }

// Criterion 1.
Check running_example_chain() {
  Check c;
  const auto t0 = Clock::now();
  ReportConfig cfg;
  const ReduceResult r = reduce_model(read_model_file(data("fixtures/running_example.ode")), cfg);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::vector<Subspace> projected;
  for (const auto& e : r.chain) {
    const Subspace p = project(column_space(e.lumping), 5);
    if (p.dim() > 0 && (projected.empty() || projected.back() != p)) projected.push_back(p);
  }
  const std::vector<Subspace> figure = {
      span(5, {{0, 1, 1, 1, 1}}),
      span(5, {{0, 1, 1, 1, 1}, {1, 0, 1, 1, 2}}),
      span(5, {{1, 0, 0, 0, 0}, {0, 2, 1, 1, 0}, {0, 0, 1, 1, 2}}),
      span(5, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 1, 0}, {0, 0, 0, 0, 1}}),
  };
  c.require(projected.size() == figure.size(), "projected chain has " + std::to_string(projected.size()) + " levels");
  for (std::size_t i = 0; i < projected.size() && i < figure.size(); ++i) {
    c.require(projected[i] == figure[i], "level " + std::to_string(i + 1) + " differs from the figure");
  }
  c.require(secs < 1.0, "runtime above 1 s");
  c.note << "dimensions";
  for (const auto& p : projected) c.note << " " << p.dim();
  c.note << ", " << secs << " s";
  return c;
}

// Criterion 2.
Check reduced_system_fixtures() {
  Check c;
  const ODEModel m = read_model_file(data("fixtures/running_example.ode"));
  const auto g0 = reduced_system(m, columns({{0, 1, 1, 1, 1}}, 5));
  c.require(g0.size() == 1 && g0[0].is_zero(), "conservation law does not reduce to g = 0");
  const auto g = reduced_system(m, columns({{1, 0, 0, 0, 0}, {0, 2, 1, 1, 0}, {0, 0, 1, 1, 2}}, 5));
  const std::size_t nv = 5;
  const MultiPoly rhs = var(nv, 4) * var(nv, 2) - var(nv, 3) * var(nv, 0) * var(nv, 1);
  c.require(g.size() == 3 && g[0] == rhs && g[1] == rhs && g[2] == -rhs, "three-variable lumping differs");
  c.note << "g = 0 and y1' = " << rhs.str(reduced_names(m, 3));
  return c;
}

// Criterion 3.
Check knight_reduction() {
  Check c;
  const ODEModel raw = read_model_file(data("fixtures/knight.ode"));
  const ReduceResult r = reduce_model(raw, ReportConfig{});
  const Scalar h(Rational(-3, 2));
  SparseVec v;
  v.push(0, Scalar(1));
  v.push(3, Scalar(1));
  v.push(4, h);
  bool member = false;
  for (const auto& e : r.chain) member = member || column_space(e.lumping).contains(v);
  c.require(member, "vector not in any chain subspace");
  const auto check = verify_lumping(raw, columns({{1, 0, 0, 1, h}}, 5));
  c.require(check.ok(), "single-column lumping not certified");
  c.require(check.ok() && check.reduced[0] == Scalar(-5) * var(1 + raw.params.size(), 0), "reduced rhs is not -5 y");
  if (check.ok()) c.note << "y' = " << check.reduced[0].str(reduced_names(raw, 1));
  return c;
}

// Criterion 4.
Check jordan_holder() {
  Check c;
  for (const auto& name : kFixtures) {
    const Loaded l = load(name);
    std::size_t len = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SearchConfig cfg;
      cfg.seed = seed;
      const auto ch = maximal_chain(l.algebra, cfg);
      if (seed == 0) len = ch.subspaces.size();
      c.require(ch.subspaces.size() == len, name + ": length differs at seed " + std::to_string(seed));
    }
    c.note << name << "=" << len << " ";
  }
  return c;
}

// Criterion 5.
Check maximality() {
  Check c;
  for (const auto& name : kFixtures) {
    const Loaded l = load(name);
    const auto ch = maximal_chain(l.algebra, {});
    c.require(is_maximal(l.algebra, ch.subspaces, {}), name + ": a factor admits an invariant subspace");
    const auto simplified = simplify_chain(l.decomposition.matrices, ch.subspaces);
    c.require(is_maximal(l.algebra, simplified, {}), name + ": normalized chain is not maximal");
  }
  c.note << kFixtures.size() << " fixtures, raw and normalized chains";
  return c;
}

// Criterion 6.
Check eigenspace_lattice() {
  Check c;
  std::mt19937_64 rng(2024);
  const std::size_t n = 4;
  for (int trial = 0; trial < 100; ++trial) {
    SparseMat P(n, n);
    do {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) P.set(i, j, Scalar(static_cast<long>(rng() % 9) - 4));
    } while (rank(P) < n);
    std::vector<long> eig;
    while (eig.size() < n) {
      const long e = static_cast<long>(rng() % 21) - 10;
      if (std::find(eig.begin(), eig.end(), e) == eig.end()) eig.push_back(e);
    }
    SparseMat D(n, n);
    for (std::size_t i = 0; i < n; ++i) D.set(i, i, Scalar(eig[i]));
    SearchConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(trial);
    const auto ch = maximal_chain(algebra_basis({P * D * inverse(P)}), cfg);
    c.require(ch.subspaces.size() == 3, "trial " + std::to_string(trial) + ": chain length differs from 3");
    // Brute force: a subspace of dimension k is a sum of planted eigenspaces iff
    // it contains exactly k of the planted eigenvectors.
    const auto vs = P.columns();
    for (const auto& v : ch.subspaces) {
      std::size_t inside = 0;
      for (const auto& e : vs) inside += v.contains(e) ? 1 : 0;
      c.require(inside == v.dim(), "trial " + std::to_string(trial) + ": subspace is not a sum of eigenspaces");
    }
  }
  c.note << "100 random 4x4 matrices";
  return c;
}

// Criterion 7.
Check algebra_soundness() {
  Check c;
  for (const auto& name : kFixtures) {
    const Loaded l = load(name);
    const auto elems = l.algebra.elements();
    for (const auto& a : elems)
      for (const auto& b : elems) c.require(reduce_against(a * b, l.algebra).is_zero(), name + ": not closed");
    AlgebraOptions off;
    off.defer = false;
    off.modular_certificate = false;
    AlgebraOptions on;
    on.modular_certificate = false;
    const auto& gens = l.decomposition.matrices;
    if (gens.empty()) continue;
    const auto a = algebra_basis(gens, on), b = algebra_basis(gens, off);
    bool same = a.size() == b.size();
    for (const auto& x : a.elements()) same = same && b.contains(x);
    c.require(same, name + ": deferral changes the span");
  }
  c.note << kFixtures.size() << " fixtures";
  return c;
}

// Criterion 8.
Check structure_units() {
  Check c;
  auto unit = [](std::size_t r, std::size_t col) {
    SparseMat e(2, 2);
    e.set(r, col, Scalar(1));
    return e;
  };
  const auto t2 = span_basis({unit(0, 0), unit(0, 1), unit(1, 1)}, 2);
  const auto rad = radical_basis(t2);
  c.require(rad.size() == 1 && rad[0] == unit(0, 1), "radical of T2 is not span{E12}");

  const ODEModel two = read_model_file(data("fixtures/two_state.ode"));
  const auto alg = jacobian_algebra(jacobian_decomposition(two));
  const Subspace k = common_kernel(radical_basis(alg));
  c.require(k == Subspace(2, {SparseVec::unit(1)}), "common kernel is not span{e2}");
  const auto g = reduced_system(two, k.matrix());
  const MultiPoly y = var(1, 0);
  c.require(g.size() == 1 && g[0] == y * y - y, "reduction is not y' = -y + y^2");

  const auto full = span_basis({unit(0, 0), unit(0, 1), unit(1, 0), unit(1, 1)}, 2);
  c.require(find_invariant_subspace(full, {}).kind == OutcomeKind::NoInvariantSubspace, "full algebra not NO");
  c.note << "y' = " << (g.empty() ? std::string("?") : g[0].str({"y"}));
  return c;
}

std::vector<Integer> primitive_integer(const UPoly& p) {
  Integer den = 1;
  for (const auto& x : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.rational().get_den_mpz_t());
  std::vector<Integer> z;
  Integer g = 0;
  for (const auto& x : p.coeffs()) {
    const Rational v = x.rational() * den;
    z.push_back(v.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  for (auto& x : z) x /= g;
  return z;
}

std::vector<long> divisors(const Integer& v) {
  std::vector<long> d;
  const long a = Integer(abs(v)).get_si();
  for (long i = 1; i <= a; ++i)
    if (a % i == 0) d.push_back(i);
  return d;
}

// Degree <= 4 over QQ: try every linear and quadratic integer factor allowed by
// Gauss's lemma.
bool brute_irreducible(const UPoly& p) {
  if (p.degree() <= 1) return true;
  const auto z = primitive_integer(p);
  if (sgn(z[0]) == 0) return false;
  const auto lead = divisors(z.back());
  const auto tail = divisors(z[0]);
  for (long a : lead)
    for (long t : tail)
      for (long s : {1, -1})
        if ((p % UPoly{Scalar(s * t), Scalar(a)}).is_zero()) return false;
  if (p.degree() <= 3) return true;
  Integer norm2 = 0;
  for (const auto& x : z) norm2 += x * x;
  const long bound = 2 * Integer(sqrt(norm2)).get_si() + 2;
  for (long a : lead)
    for (long t : tail)
      for (long s : {1, -1})
        for (long b = -bound; b <= bound; ++b)
          if ((p % UPoly{Scalar(s * t), Scalar(b), Scalar(a)}).is_zero()) return false;
  return true;
}

// Criterion 9.
Check factorization() {
  Check c;
  std::mt19937_64 rng(99);
  auto random_poly = [&](int deg, long height, bool monic) {
    std::vector<Scalar> co;
    for (int i = 0; i < deg; ++i) co.emplace_back(static_cast<long>(rng() % (2 * height + 1)) - height);
    co.emplace_back(monic ? 1L : static_cast<long>(rng() % height) + 1);
    return UPoly(std::move(co));
  };
  int reducible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    UPoly p = random_poly(1 + static_cast<int>(rng() % 4), 50, false);
    if (trial % 2 == 0) p = p * random_poly(1 + static_cast<int>(rng() % 2), 7, true);
    const auto f = factor_univariate(p, nullptr);
    c.require(f.product() == p, "trial " + std::to_string(trial) + ": product differs");
    for (const auto& [g, m] : f.factors) {
      if (g.degree() <= 4) c.require(brute_irreducible(g), "trial " + std::to_string(trial) + ": reducible factor");
    }
    if (p.degree() <= 4) {
      const bool irreducible = f.factors.size() == 1 && f.factors[0].second == 1;
      c.require(irreducible == brute_irreducible(p), "trial " + std::to_string(trial) + ": irreducibility disagrees");
    }
    reducible += f.factors.size() > 1 || f.factors[0].second > 1;
  }
  c.note << "200 polynomials, " << reducible << " reducible";
  return c;
}

// Criterion 10.
Check corpus_scaling() {
  Check c;
  std::size_t models = 0;
  double worst = 0;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(data("corpus"))) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const ODEModel m = curry_parameters(read_model_file(path.string()));
    if (m.dimension() < 2 || m.dimension() > 9) continue;
    ++models;
    const auto t0 = Clock::now();
    const ReduceResult r = reduce_model(m, ReportConfig{});
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    worst = std::max(worst, secs);
    c.require(secs < 5.0, path.filename().string() + ": above 5 s");
    // Independent conservation-law test: common kernel of the J_i.
    const auto d = jacobian_decomposition(m);
    const bool conserved = d.matrices.empty() || common_kernel(d.matrices).dim() > 0;
    if (conserved) c.require(r.statistics.total >= 1, path.filename().string() + ": no reduction found");
  }
  c.require(models > 0, "no corpus models of dimension 2-9");
  c.note << models << " models, slowest " << worst << " s";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"running-example chain", running_example_chain},
      {"reduced-system fixtures", reduced_system_fixtures},
      {"knight-network reduction", knight_reduction},
      {"Jordan-Holder determinism", jordan_holder},
      {"maximality certificate", maximality},
      {"eigenspace-lattice oracle", eigenspace_lattice},
      {"algebra-basis soundness", algebra_soundness},
      {"structure-theory units", structure_units},
      {"factorization cross-checks", factorization},
      {"corpus scaling", corpus_scaling},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.note << "exception: " << e.what();
    }
    std::cout << "criterion " << (i + 1) << " " << (c.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << c.note.str() << "\n";
    failed += c.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
