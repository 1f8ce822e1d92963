#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "phasealg/scalar_poly.hpp"

namespace phasealg {

/// Index slot: either a symbolic label (`i`, `d1`, `_t3`) or a concrete value 1..3.
class Index {
 public:
  Index() = default;
  Index(std::string name) : name_(std::move(name)) {}
  Index(const char* name) : name_(name) {}
  Index(int value);

  bool is_value() const;
  bool is_label() const { return !name_.empty() && !is_value(); }
  int value() const;
  const std::string& name() const { return name_; }

  auto operator<=>(const Index&) const = default;

 private:
  std::string name_;
};

enum class FactorKind { Delta, Eps, Named, Rotation };

enum class Symmetry {
  None,
  Antisym2,   // T(j,i) = -T(i,j)
  Antisym12,  // T(j,i,k) = -T(i,j,k)
};

struct Factor {
  FactorKind kind = FactorKind::Delta;
  std::string name;
  Symmetry symmetry = Symmetry::None;
  std::vector<Index> indices;

  static Factor delta(Index a, Index b);
  static Factor eps(Index a, Index b, Index c);
  static Factor named(std::string name, Symmetry symmetry, std::vector<Index> indices);
  /// Formal rotation matrix entry a(row, col).
  static Factor rotation(Index row, Index col);

  auto operator<=>(const Factor&) const = default;
};

enum class AtomKind { Id, X, P };

struct Atom {
  AtomKind kind = AtomKind::Id;
  Index index;

  static Atom id() { return {}; }
  static Atom x(Index i) { return {AtomKind::X, std::move(i)}; }
  static Atom p(Index i) { return {AtomKind::P, std::move(i)}; }

  auto operator<=>(const Atom&) const = default;
};

struct Term {
  ScalarPoly coeff;
  std::vector<Factor> factors;
  Atom atom;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Finite sum of coefficient * tensor factors * one basis atom.
class TensorExpr {
 public:
  TensorExpr() = default;
  explicit TensorExpr(Term term);

  static TensorExpr scalar(const ScalarPoly& c);
  static TensorExpr of(Atom atom);
  static TensorExpr of(Factor factor);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  TensorExpr& operator+=(const TensorExpr& o);
  TensorExpr& operator-=(const TensorExpr& o);
  friend TensorExpr operator+(TensorExpr a, const TensorExpr& b) { return a += b; }
  friend TensorExpr operator-(TensorExpr a, const TensorExpr& b) { return a -= b; }
  TensorExpr operator-() const;

  /// Raw product: factor lists are concatenated and labels are NOT renamed.
  /// Throws StructuralError when both terms carry a non-identity atom.
  friend TensorExpr operator*(const TensorExpr& a, const TensorExpr& b);
  friend TensorExpr operator*(const ScalarPoly& c, const TensorExpr& e);

  friend bool operator==(const TensorExpr&, const TensorExpr&) = default;

 private:
  std::vector<Term> terms_;
};

/// Generates labels that cannot collide with parsed or canonical ones.
class FreshLabels {
 public:
  explicit FreshLabels(std::string prefix = "_t") : prefix_(std::move(prefix)) {}
  Index next() { return Index(prefix_ + std::to_string(counter_++)); }

 private:
  std::string prefix_;
  int counter_ = 0;
};

/// Occurrence count of each symbolic label in a term.
std::map<std::string, int> label_counts(const Term& term);
/// Labels occurring exactly once, sorted.
std::vector<std::string> free_labels(const Term& term);
/// Union of the terms' free labels, sorted.
std::vector<std::string> free_labels(const TensorExpr& e);
/// Throws StructuralError when a label occurs three or more times in one term.
void validate_indices(const TensorExpr& e);

/// Sorted factors, sorted symmetric/antisymmetric slots (sign tracked), canonical dummy
/// labels d1, d2, ..., merged like terms, zero terms dropped. Idempotent.
TensorExpr canonicalize(const TensorExpr& e);
/// Eliminates deltas against dummy labels; delta(i,i) becomes 3. Epsilons with two fixed
/// values are lowered to a signed delta.
TensorExpr contract_delta(const TensorExpr& e);
/// Rewrites each pair of epsilons sharing a dummy via eps(a,b,l) eps(l,c,d) = dd - dd.
TensorExpr reduce_eps_pair(const TensorExpr& e);
/// Fixpoint of reduce_eps_pair, contract_delta and canonicalize.
TensorExpr simplify(const TensorExpr& e);

/// Equality as tensors. Throws StructuralError on mismatched free labels.
bool expr_equiv(const TensorExpr& a, const TensorExpr& b);
/// True when a == c * b for some nonzero constant c (or both vanish).
bool equiv_up_to_scale(const TensorExpr& a, const TensorExpr& b);

/// Simultaneous relabeling of symbolic labels.
TensorExpr relabel(const TensorExpr& e, const std::map<std::string, Index>& mapping);
/// Renames every dummy to a fresh label, term by term.
TensorExpr freshen_dummies(const TensorExpr& e, FreshLabels& fresh);
/// Simultaneous substitution of scalar parameters.
TensorExpr substitute_params(const TensorExpr& e, const std::map<std::string, ScalarPoly>& values);
/// Swaps X and P atoms according to a linear rule: X(k) -> x_image, P(k) -> p_image.
TensorExpr map_atoms(const TensorExpr& e, AtomKind x_to, int x_sign, AtomKind p_to, int p_sign);

std::string render(const Index& i);
std::string render(const Factor& f);
std::string render(const Atom& a);
std::string render(const Term& t);
/// Deterministic plain text, e.g. `i*u*eps(i,j,k)*X(k)`; `0` for the empty sum.
std::string render(const TensorExpr& e);

}  // namespace phasealg
