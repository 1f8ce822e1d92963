#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "phasealg/gaussian_rational.hpp"

namespace phasealg {

/// Product of named parameters with positive exponents, kept sorted by name.
class Monomial {
 public:
  using Power = std::pair<std::string, unsigned>;

  Monomial() = default;
  static Monomial variable(std::string name, unsigned exponent = 1);

  const std::vector<Power>& powers() const { return powers_; }
  unsigned degree() const;
  unsigned exponent(const std::string& name) const;
  bool is_unit() const { return powers_.empty(); }

  Monomial operator*(const Monomial& other) const;
  /// Monomial with `name` removed entirely.
  Monomial without(const std::string& name) const;
  /// Divides out one power of `name`; requires exponent(name) > 0.
  Monomial divided_by(const std::string& name) const;

  auto operator<=>(const Monomial&) const = default;

  /// `u*v^2`, or the empty string for the unit monomial.
  std::string to_string() const;

 private:
  std::vector<Power> powers_;
};

/// Multivariate polynomial over the Gaussian rationals. Zero coefficients are never stored.
class ScalarPoly {
 public:
  using TermMap = std::map<Monomial, GaussianRational>;

  ScalarPoly() = default;
  ScalarPoly(GaussianRational c);
  ScalarPoly(int c) : ScalarPoly(GaussianRational(c)) {}

  static ScalarPoly variable(const std::string& name);
  static ScalarPoly monomial(Monomial m, GaussianRational c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussianRational constant_term() const;
  unsigned degree() const;
  std::set<std::string> variables() const;

  ScalarPoly& operator+=(const ScalarPoly& o);
  ScalarPoly& operator-=(const ScalarPoly& o);
  ScalarPoly& operator*=(const ScalarPoly& o);
  friend ScalarPoly operator+(ScalarPoly a, const ScalarPoly& b) { return a += b; }
  friend ScalarPoly operator-(ScalarPoly a, const ScalarPoly& b) { return a -= b; }
  friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b);
  ScalarPoly operator-() const;
  ScalarPoly scaled(const GaussianRational& c) const;

  /// Simultaneous substitution of parameters by polynomials.
  ScalarPoly substitute(const std::map<std::string, ScalarPoly>& values) const;
  /// Throws EvaluationError when a parameter is unbound.
  GaussianRational evaluate(const std::map<std::string, GaussianRational>& values) const;

  /// Terms in display order: higher degree first, then monomial order.
  std::vector<std::pair<Monomial, GaussianRational>> display_order() const;
  /// First term in display order; requires a nonzero polynomial.
  std::pair<Monomial, GaussianRational> leading() const;
  /// Scaled so the leading coefficient is 1 (zero stays zero).
  ScalarPoly normalized() const;
  bool proportional_to(const ScalarPoly& other) const;

  /// Coefficient polynomial of name^power, i.e. the part of *this divisible by exactly that power.
  ScalarPoly coefficient_of(const std::string& name, unsigned power) const;

  friend bool operator==(const ScalarPoly& a, const ScalarPoly& b) { return a.terms_ == b.terms_; }
  friend std::strong_ordering operator<=>(const ScalarPoly& a, const ScalarPoly& b);

  std::string to_string() const;
  /// True when rendering needs parentheses as a multiplicative factor.
  bool is_compound() const;

 private:
  void add_term(const Monomial& m, const GaussianRational& c);

  TermMap terms_;
};

}  // namespace phasealg
