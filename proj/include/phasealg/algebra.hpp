#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "phasealg/components.hpp"
#include "phasealg/tensor_expr.hpp"

namespace phasealg {

struct TensorDecl {
  std::string name;
  Symmetry symmetry = Symmetry::None;
  int rank = 2;

  auto operator<=>(const TensorDecl&) const = default;
};

/// The three commutator tables as templates in the free labels i, j.
struct AlgebraSpec {
  int dim = 3;
  std::vector<std::string> params;
  std::vector<TensorDecl> tensors;
  TensorExpr comm_xp;
  TensorExpr comm_xx;
  TensorExpr comm_pp;

  const TensorDecl* find_tensor(const std::string& name) const;
  bool has_param(const std::string& name) const;
};

/// Throws StructuralError unless XX and PP are antisymmetric under i <-> j, every template is
/// affine with free labels within {i, j}, and every symbol is declared.
void validate_spec(const AlgebraSpec& spec);

/// Table lookup with the atoms' indices substituted. [a,a] = 0, [Id, .] = 0.
/// Throws StructuralError for distinct atoms sharing one symbolic label.
TensorExpr basic_commutator(const Atom& a, const Atom& b, const AlgebraSpec& spec);

/// Bilinear extension of basic_commutator; the free labels of A and B must be disjoint.
TensorExpr linear_commutator(const TensorExpr& a, const TensorExpr& b, const AlgebraSpec& spec);

/// [a,[b,c]] - [[a,b],c] - [b,[a,c]], simplified.
TensorExpr jacobi_residual(const Atom& a, const Atom& b, const Atom& c, const AlgebraSpec& spec);

enum class TripleType { XXP, XPP, XXX, PPP };
enum class Sector { Id, X, P };

const std::vector<TripleType>& all_triple_types();
std::string to_string(TripleType t);
std::string to_string(Sector s);
/// Parses `xxp`, `xpp`, `xxx`, `ppp` (case-insensitive); throws std::invalid_argument.
TripleType parse_triple_type(const std::string& text);
/// The representative triple with labels i, j, k.
std::array<Atom, 3> triple_atoms(TripleType t);

struct Provenance {
  TripleType triple = TripleType::XXP;
  Sector sector = Sector::Id;

  auto operator<=>(const Provenance&) const = default;
};

/// A tensor expression (no basis atoms) required to vanish identically.
struct ConstraintEquation {
  TensorExpr lhs;
  std::vector<std::string> free;
  Provenance provenance;
};

/// Equations deduplicated up to overall nonzero constant scaling; insertion order kept.
class ConstraintSet {
 public:
  /// Returns false when an equivalent equation is already present.
  bool add(ConstraintEquation eq);
  void merge(const ConstraintSet& other);

  const std::vector<ConstraintEquation>& equations() const { return equations_; }
  bool empty() const { return equations_.empty(); }
  std::size_t size() const { return equations_.size(); }

 private:
  bool add(ConstraintEquation eq, SymbolicComponents key);

  std::vector<ConstraintEquation> equations_;
  std::vector<SymbolicComponents> keys_;  // scale-normalized components, parallel to equations_
};

/// Label used for the free index of the X_m / P_m sectors.
inline const char* kSectorLabel = "m";

/// Id, X_m and P_m coefficients of r (vanishing sectors omitted), not deduplicated.
std::vector<ConstraintEquation> split_sectors(const TensorExpr& r, TripleType triple);
/// Inverse of split_sectors: sum of sector coefficients times their atoms.
TensorExpr reassemble(const std::vector<ConstraintEquation>& sectors);

/// split_sectors followed by canonical deduplication.
ConstraintSet extract_constraints(const TensorExpr& r, TripleType triple);

/// Union over the selected triple types (all four by default).
ConstraintSet full_constraint_set(const AlgebraSpec& spec,
                                  const std::vector<TripleType>& triples = all_triple_types());

std::string render(const ConstraintEquation& eq);

}  // namespace phasealg
