#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phasealg/tensor_expr.hpp"

namespace phasealg {

/// One component slot: values of the free labels (sorted by label) and the basis atom.
struct ComponentKey {
  std::vector<std::pair<std::string, int>> free_values;
  AtomKind atom = AtomKind::Id;
  int atom_index = 0;  // 0 for Id

  auto operator<=>(const ComponentKey&) const = default;
};

/// Sparse: absent keys are zero.
using Components = std::map<ComponentKey, GaussianRational>;
using SymbolicComponents = std::map<ComponentKey, ScalarPoly>;

using RotationMatrix = std::array<std::array<Rational, 3>, 3>;

/// Numeric values for everything an expression can mention.
struct Valuation {
  std::map<std::string, GaussianRational> params;
  /// Raw component tables keyed by 1-based index tuples; missing entries read as zero.
  std::map<std::string, std::map<std::vector<int>, GaussianRational>> tensors;
  std::optional<RotationMatrix> rotation;
};

/// Brute-force evaluation: every free assignment in {1,2,3}, every dummy summed explicitly,
/// every factor read from its definition. No rewriting is involved.
/// Throws EvaluationError on an unbound parameter, tensor or rotation.
Components enumerate_components(const TensorExpr& e, const Valuation& v);
Components enumerate_components(const TensorExpr& e,
                                const std::map<std::string, GaussianRational>& params);

/// Same enumeration with parameters left symbolic. A named tensor entry becomes the variable
/// `name[a,b,c]` in its canonical orientation; a rotation entry becomes `rot[r,c]`.
SymbolicComponents symbolic_components(const TensorExpr& e);

/// Variable name used for a named tensor entry by symbolic_components.
std::string component_variable(const std::string& tensor, const std::vector<int>& values);

GaussianRational component(const Components& c, const ComponentKey& key);

std::string render(const ComponentKey& key);

}  // namespace phasealg
