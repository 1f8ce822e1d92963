#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phasealg/algebra.hpp"
#include "phasealg/scalar_poly.hpp"

namespace phasealg {

struct IsotropyResult {
  AlgebraSpec spec;
  /// One line per replaced tensor, e.g. `u(i,j,k) -> u*eps(i,j,k)`.
  std::vector<std::string> notes;
};

/// Every 3-tensor T becomes the scalar parameter T times eps; every antisymmetric 2-tensor
/// becomes zero (no nonzero isotropic antisymmetric 2-tensor exists in three dimensions).
/// A 2-tensor without the antisymmetry tag is a StructuralError.
IsotropyResult apply_isotropy_traced(const AlgebraSpec& spec);
AlgebraSpec apply_isotropy(const AlgebraSpec& spec);

/// Polynomials required to vanish, deduplicated up to constant scaling, insertion order kept.
class PolynomialSystem {
 public:
  PolynomialSystem() = default;
  PolynomialSystem(std::initializer_list<ScalarPoly> eqs);

  /// Stores the normalized form; ignores zero and already-present relations.
  bool add(const ScalarPoly& p);
  bool contains(const ScalarPoly& p) const;

  const std::vector<ScalarPoly>& equations() const { return equations_; }
  bool empty() const { return equations_.empty(); }
  std::size_t size() const { return equations_.size(); }

 private:
  std::vector<ScalarPoly> equations_;
};

/// Every component of the equation over {1,2,3}. Named tensors must already be gone.
PolynomialSystem scalarize(const ConstraintEquation& eq);
PolynomialSystem scalarize(const ConstraintSet& cs);

enum class Family { Heisenberg, RC1, RC2, Other };

struct SolutionBranch {
  std::vector<std::string> params;
  /// Solved parameters; anything absent is free.
  std::map<std::string, ScalarPoly> assignments;
  /// Relations left unsolved.
  std::vector<ScalarPoly> residual;
  /// Split decisions taken along the way, e.g. `l = 0`.
  std::vector<std::string> lineage;
  Family family = Family::Other;
  std::string family_label = "Other";
  std::optional<std::string> length_scale;

  std::vector<std::string> free_params() const;
};

struct SolverEvent {
  std::string lineage;
  std::string kind;  // substitute | root | split | infeasible | residual | solved
  std::string relation;
  std::string detail;
};

struct SolveResult {
  std::vector<SolutionBranch> branches;
  std::vector<SolverEvent> events;
};

/// Substitution of linear relations (eliminating the latest-declared parameter), single-root
/// powers c*p^k -> p = 0, then case splits on a common factor p*R (p = 0 first, with the
/// latest-declared common parameter), depth first. Relations that admit none of these stay as
/// residual. Throws UnsupportedSystemError when a relation exceeds degree 2.
SolveResult solve_branches_traced(const PolynomialSystem& ps, const std::vector<std::string>& params);
std::vector<SolutionBranch> solve_branches(const PolynomialSystem& ps,
                                           const std::vector<std::string>& params);

/// Heisenberg (everything zero), RC1 (only g free), RC2 (only l free), otherwise Other.
SolutionBranch classify_family(SolutionBranch b);

std::string to_string(Family f);
std::string render_lineage(const std::vector<std::string>& lineage);
std::string render(const SolutionBranch& b);

}  // namespace phasealg
