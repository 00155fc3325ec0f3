#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exlump/polyring.hpp"

namespace exlump {

/// A model file or directory could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model text; carries a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// Polynomial ODE system x' = f(x). Variables are numbered states first,
/// then parameters; every rhs lives in that combined ring.
struct ODEModel {
  std::string name;
  std::vector<std::string> states;
  std::vector<std::string> params;
  std::vector<MultiPoly> rhs;
  /// Declared parameter values; echoed, never substituted.
  std::vector<std::pair<std::string, std::optional<Rational>>> param_values;
  /// Initial values; echoed, never used by the reduction.
  std::vector<std::pair<std::string, Rational>> init;

  std::size_t dimension() const { return states.size(); }
  std::size_t nvars() const { return states.size() + params.size(); }
  std::vector<std::string> names() const;
};

/// Accepts the block format (begin model ... end model) and the plain format
/// (`x' = expr` or `d(x) = expr` lines, optional `param` and `init` lines).
ODEModel parse_model(const std::string& text);
ODEModel read_model_file(const std::string& path);
/// Block-format rendering that parse_model reads back to an equal model.
std::string serialize(const ODEModel& m);

/// Turns every parameter k into a state with k' = 0 (appended after the
/// original states). Idempotent.
ODEModel curry_parameters(const ODEModel& m);

/// J(x) = sum_i J_i m_i(x) with column j of J(x) the gradient of f_j
/// (entry (r, c) = d f_c / d x_r). Derivatives are taken with respect to the
/// states; monomials may involve every variable.
struct JacobianDecomposition {
  std::size_t dimension = 0;
  std::size_t nvars = 0;
  std::vector<Monomial> monomials;
  std::vector<SparseMat> matrices;
};

JacobianDecomposition jacobian_decomposition(const ODEModel& m);
/// The Jacobian as a matrix of polynomials, rebuilt from a decomposition.
std::vector<std::vector<MultiPoly>> reassemble(const JacobianDecomposition& d);
/// The Jacobian by direct differentiation.
std::vector<std::vector<MultiPoly>> jacobian(const ODEModel& m);

}  // namespace exlump
