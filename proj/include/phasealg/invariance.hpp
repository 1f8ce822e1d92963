#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "phasealg/algebra.hpp"
#include "phasealg/components.hpp"

namespace phasealg {

/// Operator-level duality X' = P, P' = -X: the tables of the primed generators rewritten in
/// primed atoms. Parameter names are untouched; compare with DualityMap::apply.
AlgebraSpec duality_transform(const AlgebraSpec& spec);
/// Operator-level parity X' = -X, P' = -P.
AlgebraSpec parity_transform(const AlgebraSpec& spec);

/// Image of one structure tensor under the duality: T(a,b,c) -> sign * target(a[perm]...).
struct DualityEntry {
  std::string target;
  std::vector<int> perm;
  int sign = 1;
};

/// Substitution of structure constants that realizes the duality on the tables.
class DualityMap {
 public:
  /// u -> v(j,i,k), v -> -u(j,i,k), alpha <-> beta, f -> m, m -> -f, g -> -l, l -> g.
  /// Scalar form: u' = -v, v' = u, f' = m, m' = -f, g' = -l, l' = g.
  static DualityMap standard();
  /// The table exactly as printed in the source derivation (v' = -u instead of v' = u).
  static DualityMap as_printed();

  const std::map<std::string, DualityEntry>& entries() const { return entries_; }
  /// Scalar images used when a structure tensor appears as an isotropic parameter.
  std::map<std::string, ScalarPoly> scalar_map() const;

  TensorExpr apply(const TensorExpr& e) const;
  AlgebraSpec apply(const AlgebraSpec& spec) const;
  ConstraintSet apply(const ConstraintSet& cs) const;

 private:
  std::map<std::string, DualityEntry> entries_;
};

/// True when all three tables are equivalent (expr_equiv).
bool specs_equivalent(const AlgebraSpec& a, const AlgebraSpec& b);

/// Every equation of each set has a partner in the other, equal up to constant scaling after
/// some permutation of the triple labels i, j, k.
bool constraint_sets_match(const ConstraintSet& a, const ConstraintSet& b);

enum class Table { XP, XX, PP };
std::string to_string(Table t);

/// [A'(i), B'(j)] with A' = a A, expressed in primed atoms, before any rotation axiom is used.
TensorExpr rotated_table(const AlgebraSpec& spec, Table t);

/// Applies a(p,s) a(q,s) -> delta(p,q), a(p,x) a(q,y) a(r,z) eps(x,y,z) -> eps(p,q,r) and their
/// first-slot counterparts, to a fixpoint with contraction.
TensorExpr reduce_rotations(const TensorExpr& e);

struct RotationWitness {
  Table table;
  TensorExpr residual;  // rotated minus original, after reduction
};

struct RotationCheck {
  bool invariant = true;
  std::vector<RotationWitness> witnesses;
};

RotationCheck check_rotation_invariance(const AlgebraSpec& spec);

/// Expectation values; the identity always maps to 1.
class ExpectationAssignment {
 public:
  void set(const Atom& atom, Rational value);
  /// Throws EvaluationError for an unassigned X/P expectation.
  Rational at(AtomKind kind, int index) const;

 private:
  std::map<std::pair<AtomKind, int>, Rational> values_;
};

/// |<E>|/2 for commutator = i E. The commutator must carry no free labels; parameters are
/// read from `params`. Throws StructuralError when the commutator is not i times a real form.
Rational uncertainty_bound(const TensorExpr& commutator, const ExpectationAssignment& ev,
                           const std::map<std::string, GaussianRational>& params = {});

}  // namespace phasealg
