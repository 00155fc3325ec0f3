#include "exlump/polyring.hpp"

#include <algorithm>
#include <sstream>

namespace exlump {

Monomial Monomial::variable(std::size_t var, unsigned exp) {
  Monomial m;
  if (exp) m.e_.emplace_back(var, exp);
  return m;
}

Monomial Monomial::from_exponents(const std::vector<unsigned>& exps) {
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i]) m.e_.emplace_back(i, exps[i]);
  }
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [v, k] : e_) d += k;
  return d;
}

unsigned Monomial::exponent(std::size_t var) const {
  for (const auto& [v, k] : e_) {
    if (v == var) return k;
  }
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto i = a.e_.begin();
  auto j = b.e_.begin();
  while (i != a.e_.end() || j != b.e_.end()) {
    if (j == b.e_.end() || (i != a.e_.end() && i->first < j->first)) {
      r.e_.push_back(*i++);
    } else if (i == a.e_.end() || j->first < i->first) {
      r.e_.push_back(*j++);
    } else {
      r.e_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  const std::size_t n = std::min(a.e_.size(), b.e_.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a.e_[k].first != b.e_[k].first) return a.e_[k].first < b.e_[k].first;
    if (a.e_[k].second != b.e_[k].second) return a.e_[k].second > b.e_[k].second;
  }
  return false;  // equal degree and equal prefix means equal
}

std::string Monomial::str(const std::vector<std::string>& names) const {
  if (e_.empty()) return "1";
  std::string s;
  for (const auto& [v, k] : e_) {
    if (!s.empty()) s += "*";
    s += v < names.size() ? names[v] : "x" + std::to_string(v + 1);
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Scalar& c) { return term(nvars, Monomial(), c); }

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t var) {
  if (var >= nvars) throw StructuralError("variable index out of range");
  return term(nvars, Monomial::variable(var), Scalar(1));
}

MultiPoly MultiPoly::term(std::size_t nvars, const Monomial& m, const Scalar& c) {
  if (m.span() > nvars) throw StructuralError("monomial uses a variable beyond the ring arity");
  MultiPoly p(nvars);
  if (!c.is_zero()) p.terms_.emplace(m, c);
  return p;
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

int MultiPoly::degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree()); }

Scalar MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

bool MultiPoly::depends_on(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.exponent(var) > 0; });
}

Field MultiPoly::field() const {
  Field f;
  for (const auto& [m, c] : terms_) f = common_field(f, c.field());
  return f;
}

void MultiPoly::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

namespace {
void check_arity(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars()) {
    throw StructuralError("polynomial arity mismatch: " + std::to_string(a.nvars()) + " vs " +
                          std::to_string(b.nvars()));
  }
}
}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_arity(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  r += b;
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  check_arity(a, b);
  MultiPoly r(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

MultiPoly operator*(const Scalar& c, const MultiPoly& a) {
  MultiPoly r(a.nvars_);
  if (c.is_zero()) return r;
  for (const auto& [m, x] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * x);
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(nvars_, Scalar(1));
  MultiPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::differentiate(std::size_t var) const {
  if (var >= nvars_) throw StructuralError("differentiation variable out of range");
  MultiPoly r(nvars_);
  for (const auto& [m, c] : terms_) {
    const unsigned k = m.exponent(var);
    if (k == 0) continue;
    Monomial dm;
    for (const auto& [v, x] : m.entries()) {
      dm = dm * Monomial::variable(v, v == var ? x - 1 : x);
    }
    r.add_term(dm, c * Scalar(static_cast<long>(k)));
  }
  return r;
}

Scalar MultiPoly::eval(const Vec& point) const {
  if (point.size() != nvars_) throw StructuralError("evaluation point has wrong length");
  Scalar acc;
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (const auto& [v, k] : m.entries()) {
      for (unsigned i = 0; i < k; ++i) t *= point[v];
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
  if (images.size() != nvars_) throw StructuralError("substitution needs one image per variable");
  const std::size_t out = images.empty() ? 0 : images[0].nvars();
  for (const auto& im : images) {
    if (im.nvars() != out) throw StructuralError("substitution images of different arity");
  }
  // Cache powers of each image as they are needed.
  std::vector<std::vector<MultiPoly>> powers(nvars_);
  auto power = [&](std::size_t v, unsigned k) -> const MultiPoly& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(MultiPoly::constant(out, Scalar(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * images[v]);
    return cache[k];
  };
  MultiPoly r(out);
  for (const auto& [m, c] : terms_) {
    MultiPoly t = MultiPoly::constant(out, c);
    for (const auto& [v, k] : m.entries()) t = t * power(v, k);
    r += t;
  }
  return r;
}

MultiPoly MultiPoly::with_arity(std::size_t nvars) const {
  MultiPoly r(nvars);
  for (const auto& [m, c] : terms_) {
    if (m.span() > nvars) throw StructuralError("polynomial uses a variable beyond the new arity");
    r.terms_.emplace_hint(r.terms_.end(), m, c);
  }
  return r;
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = false;
    std::string coef;
    if (c.is_rational()) {
      Rational v = c.rational();
      negative = sgn(v) < 0;
      if (negative) v = -v;
      coef = v.get_str();
    } else {
      coef = "(" + c.str() + ")";
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    if (m.is_one()) {
      os << coef;
    } else if (coef == "1") {
      os << m.str(names);
    } else {
      os << coef << "*" << m.str(names);
    }
    first = false;
  }
  return os.str();
}

MultiPoly substitute_linear(const MultiPoly& p, const SparseMat& change) {
  if (!change.square() || change.rows() != p.nvars()) {
    throw StructuralError("basis change must be square of the polynomial's arity");
  }
  if (determinant(change).is_zero()) throw StructuralError("singular basis change");
  const std::size_t n = p.nvars();
  std::vector<MultiPoly> images(n, MultiPoly(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& [i, x] : change.row(k).entries()) {
      images[i] += MultiPoly::term(n, Monomial::variable(k), x);
    }
  }
  return p.substitute(images);
}

std::vector<std::string> default_names(std::size_t n, const std::string& stem) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(stem + std::to_string(i + 1));
  return v;
}

}  // namespace exlump
