#include <algorithm>
#include <sstream>
#include <string>

#include "exlump/field.hpp"

namespace exlump {

namespace {

using Coeffs = std::vector<Scalar>;

void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// Coefficients of `a` viewed as an element of level `f` (a must lie in f).
Coeffs lift_coeffs(const Scalar& a, const Field& f) {
  if (a.field() == f) return a.coeffs();
  if (a.is_zero()) return {};
  return {a};
}

// r := r mod m for monic m (coefficient vectors over a common parent).
void reduce_monic(Coeffs& r, const Coeffs& m) {
  const std::size_t d = m.size() - 1;
  for (std::size_t k = r.size(); k-- > d;) {
    if (r[k].is_zero()) continue;
    const Scalar c = r[k];
    for (std::size_t j = 0; j < d; ++j) {
      if (!m[j].is_zero()) r[k - d + j] -= c * m[j];
    }
    r[k] = Scalar();
  }
  trim(r);
}

Coeffs poly_mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
  }
  trim(r);
  return r;
}

// a - q*b, used by the extended Euclid below.
Coeffs poly_sub_mul(const Coeffs& a, const Coeffs& q, const Coeffs& b) {
  Coeffs qb = poly_mul(q, b);
  Coeffs r = a;
  if (r.size() < qb.size()) r.resize(qb.size());
  for (std::size_t i = 0; i < qb.size(); ++i) r[i] -= qb[i];
  trim(r);
  return r;
}

std::pair<Coeffs, Coeffs> poly_divmod(Coeffs a, const Coeffs& b) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  const Scalar inv = b.back().inverse();
  Coeffs q(a.size() - b.size() + 1);
  for (std::size_t k = a.size(); k-- >= b.size();) {
    if (a[k].is_zero()) continue;
    const Scalar c = a[k] * inv;
    const std::size_t shift = k - (b.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    if (k == 0) break;
  }
  trim(q);
  trim(a);
  return {q, a};
}

}  // namespace

const Rational& Scalar::rational() const {
  if (field_) throw StructuralError("scalar is not rational: " + str());
  return q_;
}

Scalar Scalar::generator(const Field& f) {
  if (!f) throw StructuralError("QQ has no generator");
  return from_coeffs(f, {Scalar(0), Scalar(1)});
}

Scalar Scalar::from_coeffs(const Field& f, std::vector<Scalar> coeffs) {
  if (!f) {
    trim(coeffs);
    if (coeffs.size() > 1) throw StructuralError("QQ element with generator terms");
    return coeffs.empty() ? Scalar() : coeffs[0];
  }
  for (const auto& c : coeffs) {
    if (!is_subfield(c.field(), f->parent)) {
      throw StructuralError("coefficient outside base field");
    }
  }
  trim(coeffs);
  if (coeffs.size() > f->minpoly.size() - 1) reduce_monic(coeffs, f->minpoly);
  if (coeffs.empty()) return Scalar();
  if (coeffs.size() == 1) return coeffs[0];
  Scalar s;
  s.field_ = f;
  s.coeffs_ = std::move(coeffs);
  return s;
}

Scalar Scalar::parse_rational(const std::string& text) {
  std::string mant = text;
  long exp10 = 0;
  const auto e = text.find_first_of("eE");
  if (e != std::string::npos) {
    mant = text.substr(0, e);
    exp10 = std::stol(text.substr(e + 1));
  }
  if (!mant.empty() && mant[0] == '+') mant.erase(0, 1);
  Rational q;
  const auto dot = mant.find('.');
  if (dot == std::string::npos) {
    q = Rational(mant, 10);
  } else {
    const std::string digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    q = Rational(Integer(digits.empty() || digits == "-" ? "0" : digits, 10));
  }
  q.canonicalize();
  if (exp10 != 0) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 > 0) q *= scale;
    else q /= scale;
  }
  return Scalar(q);
}

Scalar Scalar::operator-() const {
  if (!field_) return Scalar(Rational(-q_));
  Scalar r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (!field_ && !o.field_) {
    q_ += o.q_;
    return *this;
  }
  const Field f = common_field(field_, o.field_);
  Coeffs a = lift_coeffs(*this, f);
  const Coeffs b = lift_coeffs(o, f);
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  *this = from_coeffs(f, std::move(a));
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (!field_ && !o.field_) {
    q_ *= o.q_;
    return *this;
  }
  if (is_zero() || o.is_zero()) return *this = Scalar();
  const Field f = common_field(field_, o.field_);
  Coeffs r = poly_mul(lift_coeffs(*this, f), lift_coeffs(o, f));
  *this = from_coeffs(f, std::move(r));
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw StructuralError("inverse of zero");
  if (!field_) return Scalar(Rational(1 / q_));
  // Extended Euclid in parent[t]: s*a + u*m = 1.
  Coeffs r0 = field_->minpoly, r1 = coeffs_;
  Coeffs s0, s1 = {Scalar(1)};
  while (r1.size() > 1) {
    auto [q, r] = poly_divmod(r0, r1);
    Coeffs s2 = poly_sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw StructuralError("element not invertible; minpoly reducible?");
  const Scalar c = r1[0].inverse();
  for (auto& x : s1) x *= c;
  return from_coeffs(field_, std::move(s1));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  if (!a.field_) return a.q_ == b.q_;
  return a.coeffs_ == b.coeffs_;
}

int compare(const Scalar& a, const Scalar& b) {
  const int ha = height(a.field()), hb = height(b.field());
  if (ha != hb) return ha < hb ? -1 : 1;
  if (a.is_rational()) return cmp(a.rational(), b.rational()) < 0 ? -1 : (a == b ? 0 : 1);
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
  for (std::size_t i = ca.size(); i-- > 0;) {
    if (int c = compare(ca[i], cb[i])) return c;
  }
  return 0;
}

std::string Scalar::str() const {
  if (!field_) return q_.get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Scalar& c = coeffs_[k];
    if (c.is_zero()) continue;
    std::string body;
    bool negative = false;
    if (c.is_rational()) {
      Rational v = c.rational();
      negative = sgn(v) < 0;
      if (negative) v = -v;
      if (k == 0) {
        body = v.get_str();
      } else {
        body = v == 1 ? "" : v.get_str() + "*";
      }
    } else {
      body = k == 0 ? "(" + c.str() + ")" : "(" + c.str() + ")*";
    }
    if (k == 1) body += field_->generator;
    if (k > 1) body += field_->generator + "^" + std::to_string(k);
    if (first) {
      os << (negative ? "-" : "") << body;
    } else {
      os << (negative ? " - " : " + ") << body;
    }
    first = false;
  }
  return os.str();
}

int height(const Field& f) { return f ? f->height : 0; }

int absolute_degree(const Field& f) { return f ? f->absolute_degree : 1; }

bool is_subfield(const Field& sub, const Field& super) {
  if (!sub) return true;
  for (const TowerLevel* p = super.get(); p; p = p->parent.get()) {
    if (p == sub.get()) return true;
  }
  return false;
}

Field common_field(const Field& a, const Field& b) {
  if (is_subfield(a, b)) return b;
  if (is_subfield(b, a)) return a;
  throw StructuralError("elements from unrelated fields");
}

std::vector<Field> tower_levels(const Field& f) {
  std::vector<Field> out;
  for (Field p = f; p; p = p->parent) out.push_back(p);
  std::reverse(out.begin(), out.end());
  return out;
}

std::string describe(const Field& f) {
  if (!f) return "QQ";
  std::ostringstream os;
  os << "QQ";
  for (const auto& level : tower_levels(f)) {
    os << "[" << level->generator << " : ";
    bool first = true;
    for (std::size_t k = level->minpoly.size(); k-- > 0;) {
      const Scalar& c = level->minpoly[k];
      if (c.is_zero()) continue;
      const std::string mono = k == 0 ? "" : (k == 1 ? level->generator : level->generator + "^" + std::to_string(k));
      bool negative = false;
      std::string cs;
      if (c.is_rational()) {
        Rational v = c.rational();
        negative = sgn(v) < 0;
        if (negative) v = -v;
        cs = v.get_str();
      } else {
        cs = "(" + c.str() + ")";
      }
      if (first) {
        if (negative) os << "-";
      } else {
        os << (negative ? " - " : " + ");
      }
      if (k == 0) {
        os << cs;
      } else if (cs == "1") {
        os << mono;
      } else {
        os << cs << "*" << mono;
      }
      first = false;
    }
    os << " = 0]";
  }
  return os.str();
}

}  // namespace exlump
