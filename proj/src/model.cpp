#include "exlump/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace exlump {

std::vector<std::string> ODEModel::names() const {
  std::vector<std::string> n = states;
  n.insert(n.end(), params.begin(), params.end());
  return n;
}

namespace {

enum class Tok { Ident, Number, Op, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> tokenize_line(const std::string& line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const int col = static_cast<int>(i) + 1;
    if (c == '#' || (c == '/' && i + 1 < line.size() && line[i + 1] == '/')) break;
    if (std::isspace(static_cast<unsigned char>(c)) || c == ';') {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
      out.push_back({Tok::Ident, line.substr(i, j - i), lineno, col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < line.size() && std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      if (j < line.size() && line[j] == '.') {
        ++j;
        while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      }
      if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
        if (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) {
          while (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) ++k;
          j = k;
        }
      }
      out.push_back({Tok::Number, line.substr(i, j - i), lineno, col});
      i = j;
      continue;
    }
    if (c == '*' && i + 1 < line.size() && line[i + 1] == '*') {
      out.push_back({Tok::Op, "^", lineno, col});
      i += 2;
      continue;
    }
    if (std::string("+-*/^()=',").find(c) != std::string::npos) {
      out.push_back({Tok::Op, std::string(1, c), lineno, col});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", lineno, col);
  }
  const int endcol = static_cast<int>(line.size()) + 1;
  out.push_back({Tok::End, "", lineno, endcol});
  return out;
}

struct Line {
  int number;
  std::vector<Token> toks;
};

// Recursive-descent expression parser over one line's tokens.
class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, std::size_t pos, const std::map<std::string, std::size_t>& vars,
             std::size_t nvars, const std::map<std::string, Rational>* constants = nullptr)
      : t_(toks), p_(pos), vars_(vars), nvars_(nvars), constants_(constants) {}

  MultiPoly parse_all() {
    MultiPoly e = expr();
    if (t_[p_].kind != Tok::End) fail("unexpected '" + t_[p_].text + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, t_[p_].line, t_[p_].col); }
  bool is_op(const char* s) const { return t_[p_].kind == Tok::Op && t_[p_].text == s; }

  MultiPoly expr() {
    MultiPoly acc = term();
    while (is_op("+") || is_op("-")) {
      const bool minus = is_op("-");
      ++p_;
      MultiPoly rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    while (is_op("*") || is_op("/")) {
      const bool div = is_op("/");
      const Token at = t_[p_];
      ++p_;
      MultiPoly rhs = unary();
      if (!div) {
        acc = acc * rhs;
        continue;
      }
      if (!rhs.is_constant()) {
        throw ParseError("division by a non-constant expression (only polynomial models are supported)", at.line,
                         at.col);
      }
      if (rhs.is_zero()) throw ParseError("division by zero", at.line, at.col);
      acc = rhs.terms().begin()->second.inverse() * acc;
    }
    return acc;
  }

  MultiPoly unary() {
    if (is_op("-")) {
      ++p_;
      return -unary();
    }
    if (is_op("+")) {
      ++p_;
      return unary();
    }
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (!is_op("^")) return base;
    ++p_;
    bool paren = false;
    if (is_op("(")) {
      paren = true;
      ++p_;
    }
    if (t_[p_].kind != Tok::Number || t_[p_].text.find_first_of(".eE") != std::string::npos) {
      fail("exponent must be a non-negative integer literal");
    }
    const unsigned long e = std::stoul(t_[p_].text);
    ++p_;
    if (paren) {
      if (!is_op(")")) fail("expected ')'");
      ++p_;
    }
    return base.pow(static_cast<unsigned>(e));
  }

  MultiPoly primary() {
    const Token& tk = t_[p_];
    if (tk.kind == Tok::Number) {
      ++p_;
      return MultiPoly::constant(nvars_, Scalar::parse_rational(tk.text));
    }
    if (tk.kind == Tok::Ident) {
      ++p_;
      if (is_op("(")) {
        throw ParseError("function call '" + tk.text + "' is not polynomial", tk.line, tk.col);
      }
      auto it = vars_.find(tk.text);
      if (it != vars_.end()) return MultiPoly::variable(nvars_, it->second);
      if (constants_) {
        auto c = constants_->find(tk.text);
        if (c != constants_->end()) return MultiPoly::constant(nvars_, Scalar(c->second));
      }
      throw ParseError("unknown symbol '" + tk.text + "'", tk.line, tk.col);
    }
    if (is_op("(")) {
      ++p_;
      MultiPoly e = expr();
      if (!is_op(")")) fail("expected ')'");
      ++p_;
      return e;
    }
    fail(tk.kind == Tok::End ? "unexpected end of line" : "unexpected '" + tk.text + "'");
  }

  const std::vector<Token>& t_;
  std::size_t p_;
  const std::map<std::string, std::size_t>& vars_;
  std::size_t nvars_;
  const std::map<std::string, Rational>* constants_;
};

Rational constant_value(const std::vector<Token>& toks, std::size_t pos, const std::map<std::string, Rational>& known) {
  static const std::map<std::string, std::size_t> none;
  const MultiPoly p = ExprParser(toks, pos, none, 0, &known).parse_all();
  return p.is_zero() ? Rational(0) : p.terms().begin()->second.rational();
}

struct Equation {
  std::string state;
  const Line* line;
  std::size_t rhs_pos;
};

struct Collected {
  std::string name;
  std::vector<Equation> odes;
  std::vector<std::pair<std::string, const Line*>> params;  // with position of the value (or none)
  std::vector<std::pair<std::string, std::size_t>> param_pos;
  std::vector<std::pair<const Line*, std::size_t>> inits;
  std::vector<std::string> init_names;
  bool strict = false;
};

void expect_op(const std::vector<Token>& t, std::size_t i, const char* op) {
  if (i >= t.size() || t[i].kind != Tok::Op || t[i].text != op) {
    const Token& at = t[std::min(i, t.size() - 1)];
    throw ParseError(std::string("expected '") + op + "'", at.line, at.col);
  }
}

void expect_ident(const std::vector<Token>& t, std::size_t i, const char* what) {
  if (t[i].kind != Tok::Ident) throw ParseError(std::string("expected ") + what, t[i].line, t[i].col);
}

// `d(x) = expr` or `x' = expr`; returns false when the line is neither.
bool parse_equation_head(const Line& l, Equation& eq) {
  const auto& t = l.toks;
  if (t.size() >= 6 && t[0].kind == Tok::Ident && t[0].text == "d" && t[1].kind == Tok::Op && t[1].text == "(") {
    expect_ident(t, 2, "state name");
    expect_op(t, 3, ")");
    expect_op(t, 4, "=");
    eq = {t[2].text, &l, 5};
    return true;
  }
  if (t.size() >= 4 && t[0].kind == Tok::Ident && t[1].kind == Tok::Op && t[1].text == "'") {
    expect_op(t, 2, "=");
    eq = {t[0].text, &l, 3};
    return true;
  }
  return false;
}

void collect_plain(const std::vector<Line>& lines, Collected& c) {
  for (const auto& l : lines) {
    const auto& t = l.toks;
    if (t[0].kind == Tok::Ident && t[0].text == "param" && t.size() > 1 && t[1].kind == Tok::Ident) {
      c.params.emplace_back(t[1].text, &l);
      if (t[2].kind == Tok::End) {
        c.param_pos.emplace_back(t[1].text, 0);
      } else {
        expect_op(t, 2, "=");
        c.param_pos.emplace_back(t[1].text, 3);
      }
      continue;
    }
    if (t[0].kind == Tok::Ident && t[0].text == "init" && t.size() > 1 && t[1].kind == Tok::Ident) {
      expect_op(t, 2, "=");
      c.init_names.push_back(t[1].text);
      c.inits.emplace_back(&l, 3);
      continue;
    }
    if (t[0].kind == Tok::Ident && t[0].text == "name" && t.size() > 1 && t[1].kind == Tok::Ident) {
      c.name = t[1].text;
      continue;
    }
    Equation eq;
    if (!parse_equation_head(l, eq)) throw ParseError("expected an equation `x' = expr` or `d(x) = expr`", l.number, t[0].col);
    c.odes.push_back(eq);
  }
}

void collect_block(const std::vector<Line>& lines, Collected& c) {
  c.strict = true;
  std::string section;
  bool in_model = false, done = false;
  for (const auto& l : lines) {
    const auto& t = l.toks;
    const bool is_begin = t[0].kind == Tok::Ident && t[0].text == "begin";
    const bool is_end = t[0].kind == Tok::Ident && t[0].text == "end";
    if (done) throw ParseError("content after `end model`", l.number, t[0].col);
    if (!in_model) {
      if (!is_begin || t[1].text != "model") throw ParseError("expected `begin model`", l.number, t[0].col);
      in_model = true;
      if (t[2].kind == Tok::Ident) c.name = t[2].text;
      continue;
    }
    if (is_begin) {
      if (!section.empty()) throw ParseError("nested section", l.number, t[0].col);
      expect_ident(t, 1, "section name");
      section = t[1].text;
      if (section == "reactions" || section == "algebraic") {
        throw ParseError("section `" + section + "` is not supported; give the ODE system directly", l.number, t[1].col);
      }
      continue;
    }
    if (is_end) {
      expect_ident(t, 1, "section name");
      if (t[1].text == "model" && section.empty()) {
        done = true;
        continue;
      }
      if (t[1].text != section) throw ParseError("`end " + t[1].text + "` does not close `begin " + section + "`", l.number, t[1].col);
      section.clear();
      continue;
    }
    if (section == "parameters") {
      expect_ident(t, 0, "parameter name");
      c.params.emplace_back(t[0].text, &l);
      if (t[1].kind == Tok::End) {
        c.param_pos.emplace_back(t[0].text, 0);
      } else {
        expect_op(t, 1, "=");
        c.param_pos.emplace_back(t[0].text, 2);
      }
    } else if (section == "init") {
      expect_ident(t, 0, "state name");
      expect_op(t, 1, "=");
      c.init_names.push_back(t[0].text);
      c.inits.emplace_back(&l, 2);
    } else if (section == "ODE" || section == "ode") {
      Equation eq;
      if (!parse_equation_head(l, eq)) throw ParseError("expected `d(x) = expr`", l.number, t[0].col);
      c.odes.push_back(eq);
    } else if (section.empty()) {
      // Tool commands between sections (simulate, reduce, ...) are ignored.
      if (!(t[0].kind == Tok::Ident && t[1].kind == Tok::Op && t[1].text == "(")) {
        throw ParseError("unexpected line outside any section", l.number, t[0].col);
      }
    }
    // Lines in other sections (views, ...) are skipped.
  }
  if (!in_model) throw ParseError("empty model", 1, 1);
  if (!done) {
    const int last = lines.empty() ? 1 : lines.back().number;
    throw ParseError(section.empty() ? "missing `end model`" : "unterminated section `" + section + "`", last, 1);
  }
}

}  // namespace

ODEModel parse_model(const std::string& text) {
  std::vector<Line> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
      ++no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      auto toks = tokenize_line(raw, no);
      if (toks.size() > 1) lines.push_back({no, std::move(toks)});
    }
  }
  Collected c;
  if (!lines.empty() && lines[0].toks[0].kind == Tok::Ident && lines[0].toks[0].text == "begin") {
    collect_block(lines, c);
  } else {
    collect_plain(lines, c);
  }

  ODEModel m;
  m.name = c.name;
  std::set<std::string> seen;
  for (const auto& eq : c.odes) {
    if (!seen.insert(eq.state).second) {
      throw ParseError("duplicate equation for state '" + eq.state + "'", eq.line->number, eq.line->toks[0].col);
    }
    m.states.push_back(eq.state);
  }
  std::map<std::string, Rational> known;
  for (std::size_t i = 0; i < c.params.size(); ++i) {
    const auto& [name, line] = c.params[i];
    const std::size_t pos = c.param_pos[i].second;
    if (seen.count(name)) {
      throw ParseError("parameter '" + name + "' is also a state or declared twice", line->number, line->toks[0].col);
    }
    seen.insert(name);
    m.params.push_back(name);
    if (pos == 0) {
      m.param_values.emplace_back(name, std::nullopt);
    } else {
      const Rational v = constant_value(line->toks, pos, known);
      known[name] = v;
      m.param_values.emplace_back(name, v);
    }
  }
  // Plain format: undeclared symbols on right-hand sides are parameters.
  if (!c.strict) {
    for (const auto& eq : c.odes) {
      const auto& t = eq.line->toks;
      for (std::size_t i = eq.rhs_pos; i < t.size(); ++i) {
        if (t[i].kind != Tok::Ident || seen.count(t[i].text)) continue;
        if (t[i + 1].kind == Tok::Op && t[i + 1].text == "(") continue;  // reported by the parser
        seen.insert(t[i].text);
        m.params.push_back(t[i].text);
        m.param_values.emplace_back(t[i].text, std::nullopt);
      }
    }
  }
  std::map<std::string, std::size_t> vars;
  for (std::size_t i = 0; i < m.states.size(); ++i) vars[m.states[i]] = i;
  for (std::size_t i = 0; i < m.params.size(); ++i) vars[m.params[i]] = m.states.size() + i;
  for (const auto& eq : c.odes) {
    m.rhs.push_back(ExprParser(eq.line->toks, eq.rhs_pos, vars, m.nvars()).parse_all());
  }
  for (std::size_t i = 0; i < c.inits.size(); ++i) {
    const auto& [line, pos] = c.inits[i];
    if (!vars.count(c.init_names[i])) {
      throw ParseError("initial value for unknown state '" + c.init_names[i] + "'", line->number, line->toks[0].col);
    }
    m.init.emplace_back(c.init_names[i], constant_value(line->toks, pos, known));
  }
  return m;
}

ODEModel read_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

std::string serialize(const ODEModel& m) {
  const auto names = m.names();
  std::ostringstream os;
  os << "begin model " << (m.name.empty() ? "model" : m.name) << "\n";
  if (!m.params.empty()) {
    os << " begin parameters\n";
    for (const auto& [n, v] : m.param_values) {
      os << "  " << n;
      if (v) os << " = " << v->get_str();
      os << "\n";
    }
    os << " end parameters\n";
  }
  if (!m.init.empty()) {
    os << " begin init\n";
    for (const auto& [n, v] : m.init) os << "  " << n << " = " << v.get_str() << "\n";
    os << " end init\n";
  }
  os << " begin ODE\n";
  for (std::size_t i = 0; i < m.states.size(); ++i) os << "  d(" << m.states[i] << ") = " << m.rhs[i].str(names) << "\n";
  os << " end ODE\n";
  os << "end model\n";
  return os.str();
}

ODEModel curry_parameters(const ODEModel& m) {
  if (m.params.empty()) return m;
  ODEModel c = m;
  c.states.insert(c.states.end(), m.params.begin(), m.params.end());
  c.params.clear();
  c.param_values.clear();
  for (std::size_t i = 0; i < m.params.size(); ++i) c.rhs.emplace_back(m.nvars());
  return c;
}

JacobianDecomposition jacobian_decomposition(const ODEModel& m) {
  const std::size_t n = m.dimension();
  std::map<Monomial, SparseMat> by_mono;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      const MultiPoly d = m.rhs[c].differentiate(r);
      for (const auto& [mono, coef] : d.terms()) {
        auto it = by_mono.try_emplace(mono, n, n).first;
        it->second.set(r, c, coef);
      }
    }
  }
  JacobianDecomposition out;
  out.dimension = n;
  out.nvars = m.nvars();
  for (auto& [mono, mat] : by_mono) {
    out.monomials.push_back(mono);
    out.matrices.push_back(std::move(mat));
  }
  return out;
}

std::vector<std::vector<MultiPoly>> reassemble(const JacobianDecomposition& d) {
  const std::size_t n = d.dimension;
  std::vector<std::vector<MultiPoly>> j(n, std::vector<MultiPoly>(n, MultiPoly(d.nvars)));
  for (std::size_t i = 0; i < d.matrices.size(); ++i) {
    for (std::size_t r = 0; r < n; ++r) {
      for (const auto& [c, x] : d.matrices[i].row(r).entries()) j[r][c] += MultiPoly::term(d.nvars, d.monomials[i], x);
    }
  }
  return j;
}

std::vector<std::vector<MultiPoly>> jacobian(const ODEModel& m) {
  const std::size_t n = m.dimension();
  std::vector<std::vector<MultiPoly>> j(n, std::vector<MultiPoly>(n, MultiPoly(m.nvars())));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) j[r][c] = m.rhs[c].differentiate(r);
  }
  return j;
}

}  // namespace exlump
