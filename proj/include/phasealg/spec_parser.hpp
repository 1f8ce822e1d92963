#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "phasealg/algebra.hpp"

namespace phasealg {

/// Parsed `.alg` document. Commutator bodies are stored in canonical form.
struct SpecDocument {
  int dimension = 3;
  std::vector<std::string> params;
  std::vector<TensorDecl> tensors;
  TensorExpr comm_xp;
  TensorExpr comm_xx;
  TensorExpr comm_pp;

  AlgebraSpec spec() const;

  friend bool operator==(const SpecDocument&, const SpecDocument&) = default;
};

/// Diagnostic codes carried by ParseError.
namespace diag {
inline constexpr const char* kSyntax = "E-SYNTAX";
inline constexpr const char* kUndeclared = "E-UNDECLARED";
inline constexpr const char* kAntisym = "E-ANTISYM";
inline constexpr const char* kIndex = "E-INDEX";
inline constexpr const char* kNonlinear = "E-NONLINEAR";
inline constexpr const char* kDuplicate = "E-DUPLICATE";
inline constexpr const char* kMissing = "E-MISSING";
inline constexpr const char* kDimension = "E-DIMENSION";
}  // namespace diag

/// Line-oriented grammar, `#` starts a comment:
///   dimension 3
///   param <name> ...
///   tensor <name> antisym2 | antisym12 | none <rank>
///   comm X X : <expr>    comm X P : <expr>    comm P P : <expr>
/// Throws ParseError.
SpecDocument parse_spec(std::string_view text);

/// Parses one expression against the declarations of `doc` (line numbers start at `line`).
TensorExpr parse_expression(std::string_view text, const SpecDocument& doc, int line = 1);

/// Parses a scalar polynomial; every identifier other than `i` is a parameter.
ScalarPoly parse_polynomial(std::string_view text);

/// Canonical text; parse_spec(render(doc)) == doc.
std::string render(const SpecDocument& doc);

}  // namespace phasealg
