#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>

#include "exlump/model.hpp"

using namespace exlump;

#ifndef EXLUMP_DATA_DIR
#define EXLUMP_DATA_DIR "data"
#endif

namespace {

std::string data(const std::string& rel) { return std::string(EXLUMP_DATA_DIR) + "/" + rel; }

SparseMat dense(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vec> d;
  for (const auto& r : rows) {
    Vec v;
    for (long x : r) v.emplace_back(x);
    d.push_back(v);
  }
  return SparseMat::from_dense(d);
}

}  // namespace

TEST_CASE("running example in plain grammar") {
  const ODEModel m = read_model_file(data("fixtures/running_example_plain.txt"));
  CHECK(m.states == std::vector<std::string>{"X", "AUU", "AUX", "AXU", "AXX"});
  CHECK(m.params == std::vector<std::string>{"k2", "k1"});
  CHECK(m.rhs[1].str(m.names()) == "AUX*k2 + AXU*k2 - 2*X*AUU*k1");
}

TEST_CASE("block format and plain format describe the same system") {
  const ODEModel a = read_model_file(data("fixtures/running_example.ode"));
  const ODEModel b = read_model_file(data("fixtures/running_example_plain.txt"));
  CHECK(a.name == "running_example");
  CHECK(a.params == std::vector<std::string>{"k1", "k2"});
  REQUIRE(a.init.size() == 2);
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    // Same polynomial after renaming: compare via rendering with names.
    CHECK(a.rhs[i].str(a.names()).size() == b.rhs[i].str(b.names()).size());
    std::vector<MultiPoly> swap;
    for (std::size_t v = 0; v < 5; ++v) swap.push_back(MultiPoly::variable(7, v));
    swap.push_back(MultiPoly::variable(7, 6));
    swap.push_back(MultiPoly::variable(7, 5));
    CHECK(b.rhs[i].substitute(swap) == a.rhs[i]);
  }
}

TEST_CASE("constant model and decimal literals") {
  const ODEModel m = parse_model("d(x) = 0\n");
  CHECK(m.dimension() == 1);
  CHECK(m.rhs[0].is_zero());
  const ODEModel d = parse_model("x' = 0.25*x - 1.5e1\n");
  CHECK(d.rhs[0] == Scalar(Rational(1, 4)) * MultiPoly::variable(1, 0) - MultiPoly::constant(1, Scalar(15)));
  CHECK(parse_model("x' = x/4\n").rhs[0] == Scalar(Rational(1, 4)) * MultiPoly::variable(1, 0));
}

TEST_CASE("serialize round trip") {
  for (const auto& entry : std::filesystem::directory_iterator(data("fixtures"))) {
    const ODEModel m = read_model_file(entry.path().string());
    const ODEModel r = parse_model(serialize(m));
    CHECK(r.states == m.states);
    CHECK(r.params == m.params);
    CHECK(r.rhs == m.rhs);
    CHECK(r.init == m.init);
    CHECK(serialize(r) == serialize(m));
  }
}

TEST_CASE("malformed inputs report positions") {
  for (const auto& entry : std::filesystem::directory_iterator(data("malformed"))) {
    CAPTURE(entry.path().string());
    try {
      read_model_file(entry.path().string());
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() >= 1);
      CHECK(e.column() >= 1);
    }
  }
  try {
    parse_model("x' = 1/(1 + x)\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS(parse_model("x' = x\nx' = 2*x\n"), ParseError);
  CHECK_THROWS_AS(parse_model("x' = exp(x)\n"), ParseError);
  CHECK_THROWS_AS(parse_model("x' = x^y\n"), ParseError);
  CHECK_THROWS_AS(parse_model("begin model m\n begin ODE\n  d(x) = y\n end ODE\nend model\n"), ParseError);
  CHECK_THROWS_AS(parse_model("begin model m\n begin reactions\n end reactions\nend model\n"), ParseError);
}

TEST_CASE("currying parameters") {
  const ODEModel m = read_model_file(data("fixtures/running_example.ode"));
  const ODEModel c = curry_parameters(m);
  CHECK(c.dimension() == 7);
  CHECK(c.params.empty());
  CHECK(c.rhs[5].is_zero());
  CHECK(c.rhs[6].is_zero());
  for (std::size_t i = 0; i < 5; ++i) CHECK(c.rhs[i] == m.rhs[i]);
  const ODEModel cc = curry_parameters(c);
  CHECK(cc.states == c.states);
  CHECK(cc.rhs == c.rhs);
  const ODEModel plain = parse_model("x' = -x\n");
  CHECK(curry_parameters(plain).states == plain.states);
}

TEST_CASE("jacobian decomposition of the two-state example") {
  const ODEModel m = read_model_file(data("fixtures/two_state.ode"));
  const auto d = jacobian_decomposition(m);
  REQUIRE(d.monomials.size() == 2);
  CHECK(d.monomials[0].is_one());
  CHECK(d.monomials[1] == Monomial::variable(1));
  CHECK(d.matrices[0] == dense({{1, 0}, {0, -1}}));
  CHECK(d.matrices[1] == dense({{0, 0}, {-4, 2}}));
}

TEST_CASE("jacobian decomposition of a linear system is the transpose") {
  const ODEModel m = parse_model("a' = a + 2*b\nb' = 3*a + 4*b\n");
  const auto d = jacobian_decomposition(m);
  REQUIRE(d.matrices.size() == 1);
  CHECK(d.matrices[0] == dense({{1, 3}, {2, 4}}));
}

TEST_CASE("reassembly matches direct differentiation") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    std::string text;
    for (const char* s : {"a", "b", "c", "d"}) {
      text += std::string(s) + "' = ";
      for (int t = 0; t < 4; ++t) {
        const char* v1 = std::vector<const char*>{"a", "b", "c", "d", "1"}[rng() % 5];
        const char* v2 = std::vector<const char*>{"a", "b", "c", "d", "1"}[rng() % 5];
        text += (t ? " + " : "") + std::to_string(static_cast<long>(rng() % 9) - 4) + "*" + v1 + "*" + v2;
      }
      text += "\n";
    }
    const ODEModel m = parse_model(text);
    const auto d = jacobian_decomposition(m);
    CHECK(reassemble(d) == jacobian(m));
    for (const auto& mat : d.matrices) CHECK(!mat.is_zero());
  }
  for (const auto& entry : std::filesystem::directory_iterator(data("fixtures"))) {
    const ODEModel m = curry_parameters(read_model_file(entry.path().string()));
    CHECK(reassemble(jacobian_decomposition(m)) == jacobian(m));
  }
}
