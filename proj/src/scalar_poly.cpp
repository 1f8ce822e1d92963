#include "phasealg/scalar_poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "phasealg/error.hpp"

namespace phasealg {

Monomial Monomial::variable(std::string name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) {
    m.powers_.emplace_back(std::move(name), exponent);
  }
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [name, e] : powers_) d += e;
  return d;
}

unsigned Monomial::exponent(const std::string& name) const {
  for (const auto& [n, e] : powers_) {
    if (n == name) return e;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  auto a = powers_.begin();
  auto b = other.powers_.begin();
  while (a != powers_.end() || b != other.powers_.end()) {
    if (b == other.powers_.end() || (a != powers_.end() && a->first < b->first)) {
      out.powers_.push_back(*a++);
    } else if (a == powers_.end() || b->first < a->first) {
      out.powers_.push_back(*b++);
    } else {
      out.powers_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

Monomial Monomial::without(const std::string& name) const {
  Monomial out;
  for (const auto& p : powers_) {
    if (p.first != name) out.powers_.push_back(p);
  }
  return out;
}

Monomial Monomial::divided_by(const std::string& name) const {
  Monomial out;
  for (const auto& [n, e] : powers_) {
    if (n != name) {
      out.powers_.emplace_back(n, e);
    } else if (e > 1) {
      out.powers_.emplace_back(n, e - 1);
    }
  }
  return out;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [name, e] : powers_) {
    if (!out.empty()) out += "*";
    out += name;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

ScalarPoly::ScalarPoly(GaussianRational c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

ScalarPoly ScalarPoly::variable(const std::string& name) {
  return monomial(Monomial::variable(name), GaussianRational(1));
}

ScalarPoly ScalarPoly::monomial(Monomial m, GaussianRational c) {
  ScalarPoly p;
  p.add_term(m, c);
  return p;
}

void ScalarPoly::add_term(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool ScalarPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

GaussianRational ScalarPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? GaussianRational{} : it->second;
}

unsigned ScalarPoly::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::set<std::string> ScalarPoly::variables() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [name, e] : m.powers()) out.insert(name);
  }
  return out;
}

ScalarPoly& ScalarPoly::operator+=(const ScalarPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ScalarPoly& ScalarPoly::operator-=(const ScalarPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
  ScalarPoly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term(ma * mb, ca * cb);
    }
  }
  return out;
}

ScalarPoly& ScalarPoly::operator*=(const ScalarPoly& o) {
  *this = *this * o;
  return *this;
}

ScalarPoly ScalarPoly::operator-() const { return scaled(GaussianRational(-1)); }

ScalarPoly ScalarPoly::scaled(const GaussianRational& c) const {
  ScalarPoly out;
  for (const auto& [m, coeff] : terms_) out.add_term(m, coeff * c);
  return out;
}

ScalarPoly ScalarPoly::substitute(const std::map<std::string, ScalarPoly>& values) const {
  ScalarPoly out;
  for (const auto& [m, c] : terms_) {
    ScalarPoly term(c);
    Monomial kept;
    for (const auto& [name, e] : m.powers()) {
      auto it = values.find(name);
      if (it == values.end()) {
        kept = kept * Monomial::variable(name, e);
        continue;
      }
      for (unsigned k = 0; k < e; ++k) term *= it->second;
    }
    out += term * monomial(kept, GaussianRational(1));
  }
  return out;
}

GaussianRational ScalarPoly::evaluate(const std::map<std::string, GaussianRational>& values) const {
  GaussianRational sum;
  for (const auto& [m, c] : terms_) {
    GaussianRational term = c;
    for (const auto& [name, e] : m.powers()) {
      auto it = values.find(name);
      if (it == values.end()) {
        throw EvaluationError("unassigned parameter '" + name + "'");
      }
      for (unsigned k = 0; k < e; ++k) term *= it->second;
    }
    sum += term;
  }
  return sum;
}

std::vector<std::pair<Monomial, GaussianRational>> ScalarPoly::display_order() const {
  std::vector<std::pair<Monomial, GaussianRational>> out(terms_.begin(), terms_.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.first.degree() > b.first.degree();
  });
  return out;
}

std::pair<Monomial, GaussianRational> ScalarPoly::leading() const {
  if (terms_.empty()) {
    throw std::logic_error("leading term of the zero polynomial");
  }
  return display_order().front();
}

ScalarPoly ScalarPoly::normalized() const {
  if (terms_.empty()) return *this;
  const GaussianRational lead = leading().second;
  return scaled(GaussianRational(1) / lead);
}

bool ScalarPoly::proportional_to(const ScalarPoly& other) const {
  if (is_zero() || other.is_zero()) return is_zero() && other.is_zero();
  return normalized() == other.normalized();
}

ScalarPoly ScalarPoly::coefficient_of(const std::string& name, unsigned power) const {
  ScalarPoly out;
  for (const auto& [m, c] : terms_) {
    if (m.exponent(name) == power) out.add_term(m.without(name), c);
  }
  return out;
}

std::strong_ordering operator<=>(const ScalarPoly& a, const ScalarPoly& b) {
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c;
    if (auto c = ia->second <=> ib->second; c != 0) return c;
  }
  if (ia != a.terms_.end()) return std::strong_ordering::greater;
  if (ib != b.terms_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

namespace {

// Coefficient times monomial, sign included: `-2*u*v`, `i*g`, `(1+i)*u`, `-1/2`.
std::string render_monomial(const Monomial& m, const GaussianRational& c) {
  const std::string vars = m.to_string();
  if (vars.empty()) return c.to_string();
  if (c.is_one()) return vars;
  if (c == GaussianRational(-1)) return "-" + vars;
  return c.to_string() + "*" + vars;
}

}  // namespace

std::string ScalarPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : display_order()) {
    std::string piece = render_monomial(m, c);
    if (out.empty()) {
      out = piece;
    } else if (piece.front() == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

bool ScalarPoly::is_compound() const { return terms_.size() > 1; }

}  // namespace phasealg
