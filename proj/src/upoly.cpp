#include <sstream>

#include "exlump/upoly.hpp"

namespace exlump {

UPoly::UPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::constant(const Scalar& c) { return UPoly(std::vector<Scalar>{c}); }

UPoly UPoly::linear_root(const Scalar& root) { return UPoly({-root, Scalar(1)}); }

UPoly UPoly::monomial(const Scalar& c, int degree) {
  std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return UPoly(std::move(v));
}

Scalar UPoly::coeff(int i) const {
  return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Scalar();
}

Field UPoly::field() const {
  Field f;
  for (const auto& c : c_) f = common_field(f, c.field());
  return f;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Scalar> r = a.c_;
  if (r.size() < b.c_.size()) r.resize(b.c_.size());
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (!b.c_[j].is_zero()) r[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return UPoly(std::move(r));
}

UPoly operator*(const Scalar& s, const UPoly& a) {
  if (s.is_zero()) return {};
  std::vector<Scalar> r = a.c_;
  for (auto& c : r) c *= s;
  return UPoly(std::move(r));
}

bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

Scalar UPoly::eval(const Scalar& x) const {
  Scalar acc;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Scalar> r(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * Scalar(static_cast<long>(k));
  return UPoly(std::move(r));
}

UPoly UPoly::monic() const {
  if (is_zero() || lc().is_one()) return *this;
  return lc().inverse() * *this;
}

UPoly UPoly::shifted(const Scalar& shift) const {
  // Horner in the ring: p(t + s) = (...(c_n (t+s) + c_{n-1})(t+s) ...).
  const UPoly lin({shift, Scalar(1)});
  UPoly acc;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * lin + UPoly::constant(c_[k]);
  return acc;
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Scalar& c = c_[k];
    if (c.is_zero()) continue;
    std::string cs;
    bool negative = false;
    if (c.is_rational()) {
      Rational v = c.rational();
      negative = sgn(v) < 0;
      if (negative) v = -v;
      cs = v.get_str();
    } else {
      cs = "(" + c.str() + ")";
    }
    std::string term;
    if (k == 0) {
      term = cs;
    } else {
      term = (cs == "1" ? "" : cs + "*") + var + (k > 1 ? "^" + std::to_string(k) : "");
    }
    if (first) {
      os << (negative ? "-" : "") << term;
    } else {
      os << (negative ? " - " : " + ") << term;
    }
    first = false;
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw StructuralError("polynomial division by zero");
  std::vector<Scalar> r = a.coeffs();
  const auto& bc = b.coeffs();
  if (r.size() < bc.size()) return {UPoly(), a};
  const Scalar inv = b.lc().inverse();
  std::vector<Scalar> q(r.size() - bc.size() + 1);
  for (std::size_t k = r.size(); k-- > bc.size() - 1;) {
    if (r[k].is_zero()) continue;
    const Scalar c = r[k] * inv;
    const std::size_t shift = k - (bc.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < bc.size(); ++j) {
      if (!bc[j].is_zero()) r[shift + j] -= c * bc[j];
    }
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

XGcd xgcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0 = UPoly::constant(Scalar(1)), s1;
  UPoly t0, t1 = UPoly::constant(Scalar(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s2 = s0 - q * s1;
    UPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Scalar inv = r0.lc().inverse();
  return {inv * r0, inv * s0, inv * t0};
}

UPoly pow(const UPoly& p, int e) {
  UPoly result = UPoly::constant(Scalar(1));
  UPoly base = p;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
  if (p.degree() < 1) throw StructuralError("square-free decomposition of a constant");
  std::vector<UPoly> parts;
  const UPoly f = p.monic();
  UPoly a = gcd(f, f.derivative());
  UPoly b = divmod(f, a).first;
  UPoly c = divmod(f.derivative(), a).first;
  UPoly d = c - b.derivative();
  while (b.degree() > 0) {
    UPoly g = gcd(b, d);
    parts.push_back(g);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
  }
  while (!parts.empty() && parts.back().degree() == 0) parts.pop_back();
  return parts;
}

bool is_squarefree(const UPoly& p) {
  if (p.degree() < 1) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

int compare(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  // Higher-degree coefficients first, then lower.
  for (int k = a.degree(); k >= 0; --k) {
    if (int c = compare(a.coeff(k), b.coeff(k))) return c;
  }
  return 0;
}

Field extend(const Field& base, const UPoly& minpoly, const FieldLimits& limits,
             std::string name) {
  if (minpoly.degree() < 2) throw StructuralError("extension by a polynomial of degree < 2");
  if (!minpoly.lc().is_one()) throw StructuralError("extension polynomial must be monic");
  if (!is_subfield(minpoly.field(), base)) {
    throw StructuralError("extension polynomial not over the base field");
  }
  const int h = height(base) + 1;
  const int deg = absolute_degree(base) * minpoly.degree();
  if (h > limits.max_tower_height) {
    throw CapExceeded("tower height " + std::to_string(h) + " exceeds cap " +
                      std::to_string(limits.max_tower_height));
  }
  if (deg > limits.max_extension_degree) {
    throw CapExceeded("extension degree " + std::to_string(deg) + " exceeds cap " +
                      std::to_string(limits.max_extension_degree));
  }
  auto level = std::make_shared<TowerLevel>();
  level->parent = base;
  level->generator = name.empty() ? "α" + std::to_string(h) : std::move(name);
  level->minpoly = minpoly.coeffs();
  level->height = h;
  level->absolute_degree = deg;
  return level;
}

}  // namespace exlump
