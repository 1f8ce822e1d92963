#include "phasealg/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "phasealg/components.hpp"
#include "phasealg/error.hpp"

namespace phasealg {

const TensorDecl* AlgebraSpec::find_tensor(const std::string& name) const {
  for (const auto& t : tensors) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

bool AlgebraSpec::has_param(const std::string& name) const {
  return std::find(params.begin(), params.end(), name) != params.end();
}

namespace {

const char* table_name(int which) {
  static const char* names[] = {"X P", "X X", "P P"};
  return names[which];
}

void validate_template(const AlgebraSpec& spec, const TensorExpr& e, int which) {
  const std::string where = std::string("comm ") + table_name(which) + ": ";
  validate_indices(e);
  const auto free = free_labels(e);
  for (const auto& l : free) {
    if (l != "i" && l != "j") {
      throw StructuralError(where + "free label '" + l + "' (only i and j may be free)");
    }
  }
  for (const auto& t : e.terms()) {
    if (free_labels(t) != free) {
      throw StructuralError(where + "term " + render(t) + " does not carry the free labels of the table");
    }
    for (const auto& v : t.coeff.variables()) {
      if (!spec.has_param(v)) throw StructuralError(where + "undeclared parameter '" + v + "'");
    }
    for (const auto& f : t.factors) {
      if (f.kind == FactorKind::Rotation) throw StructuralError(where + "rotation symbol in a table");
      if (f.kind != FactorKind::Named) continue;
      const TensorDecl* decl = spec.find_tensor(f.name);
      if (!decl) throw StructuralError(where + "undeclared tensor '" + f.name + "'");
      if (decl->symmetry != f.symmetry || static_cast<std::size_t>(decl->rank) != f.indices.size()) {
        throw StructuralError(where + "tensor '" + f.name + "' used with the wrong shape");
      }
    }
  }
}

}  // namespace

void validate_spec(const AlgebraSpec& spec) {
  if (spec.dim != 3) throw StructuralError("dimension must be 3");
  validate_template(spec, spec.comm_xp, 0);
  validate_template(spec, spec.comm_xx, 1);
  validate_template(spec, spec.comm_pp, 2);
  const std::map<std::string, Index> swap{{"i", Index("j")}, {"j", Index("i")}};
  for (int which : {1, 2}) {
    const TensorExpr& e = which == 1 ? spec.comm_xx : spec.comm_pp;
    if (!expr_equiv(relabel(e, swap), -e)) {
      throw StructuralError(std::string("comm ") + table_name(which) +
                            " is not antisymmetric under i <-> j");
    }
  }
}

TensorExpr basic_commutator(const Atom& a, const Atom& b, const AlgebraSpec& spec) {
  if (a.kind == AtomKind::Id || b.kind == AtomKind::Id || a == b) return {};
  if (a.index.is_label() && a.index == b.index) {
    throw StructuralError("atoms " + render(a) + " and " + render(b) + " share the label '" +
                          a.index.name() + "'");
  }

  const TensorExpr* table = nullptr;
  bool swapped = false;
  if (a.kind == AtomKind::X && b.kind == AtomKind::P) {
    table = &spec.comm_xp;
  } else if (a.kind == AtomKind::P && b.kind == AtomKind::X) {
    table = &spec.comm_xp;
    swapped = true;
  } else if (a.kind == AtomKind::X) {
    table = &spec.comm_xx;
  } else {
    table = &spec.comm_pp;
  }

  FreshLabels fresh("_b");
  const TensorExpr body = freshen_dummies(*table, fresh);
  const Index& first = swapped ? b.index : a.index;
  const Index& second = swapped ? a.index : b.index;
  TensorExpr out = relabel(body, {{"i", first}, {"j", second}});
  return swapped ? -out : out;
}

TensorExpr linear_commutator(const TensorExpr& a, const TensorExpr& b, const AlgebraSpec& spec) {
  const auto free_a = free_labels(a);
  for (const auto& l : free_labels(b)) {
    if (std::find(free_a.begin(), free_a.end(), l) != free_a.end()) {
      throw StructuralError("commutator arguments share the free label '" + l + "'");
    }
  }
  FreshLabels fresh("_c");
  const TensorExpr fa = freshen_dummies(a, fresh);
  const TensorExpr fb = freshen_dummies(b, fresh);

  TensorExpr out;
  for (const auto& ta : fa.terms()) {
    if (ta.atom.kind == AtomKind::Id) continue;
    for (const auto& tb : fb.terms()) {
      if (tb.atom.kind == AtomKind::Id) continue;
      Term outer{ta.coeff * tb.coeff, ta.factors, Atom::id()};
      outer.factors.insert(outer.factors.end(), tb.factors.begin(), tb.factors.end());
      out += TensorExpr(outer) * basic_commutator(ta.atom, tb.atom, spec);
    }
  }
  return simplify(out);
}

TensorExpr jacobi_residual(const Atom& a, const Atom& b, const Atom& c, const AlgebraSpec& spec) {
  const TensorExpr ea = TensorExpr::of(a);
  const TensorExpr eb = TensorExpr::of(b);
  const TensorExpr ec = TensorExpr::of(c);
  const TensorExpr direct = linear_commutator(ea, linear_commutator(eb, ec, spec), spec);
  const TensorExpr left = linear_commutator(linear_commutator(ea, eb, spec), ec, spec);
  const TensorExpr right = linear_commutator(eb, linear_commutator(ea, ec, spec), spec);
  return simplify(direct - left - right);
}

const std::vector<TripleType>& all_triple_types() {
  static const std::vector<TripleType> all{TripleType::XXP, TripleType::XPP, TripleType::XXX,
                                           TripleType::PPP};
  return all;
}

std::string to_string(TripleType t) {
  switch (t) {
    case TripleType::XXP:
      return "xxp";
    case TripleType::XPP:
      return "xpp";
    case TripleType::XXX:
      return "xxx";
    case TripleType::PPP:
      return "ppp";
  }
  return "?";
}

std::string to_string(Sector s) {
  switch (s) {
    case Sector::Id:
      return "Id";
    case Sector::X:
      return "X_m";
    case Sector::P:
      return "P_m";
  }
  return "?";
}

TripleType parse_triple_type(const std::string& text) {
  std::string lower;
  for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto t : all_triple_types()) {
    if (to_string(t) == lower) return t;
  }
  throw std::invalid_argument("unknown triple type '" + text + "'");
}

std::array<Atom, 3> triple_atoms(TripleType t) {
  switch (t) {
    case TripleType::XXP:
      return {Atom::x("i"), Atom::x("j"), Atom::p("k")};
    case TripleType::XPP:
      return {Atom::x("i"), Atom::p("j"), Atom::p("k")};
    case TripleType::XXX:
      return {Atom::x("i"), Atom::x("j"), Atom::x("k")};
    case TripleType::PPP:
      return {Atom::p("i"), Atom::p("j"), Atom::p("k")};
  }
  throw std::logic_error("triple type");
}

// ---------------------------------------------------------------------------

namespace {

// Components scaled so the first entry has leading coefficient 1: equal tables <=> equal up to a
// nonzero constant factor.
SymbolicComponents scale_free_components(const TensorExpr& e) {
  SymbolicComponents c = symbolic_components(e);
  if (c.empty()) return c;
  const GaussianRational inv = GaussianRational(1) / c.begin()->second.leading().second;
  for (auto& [key, value] : c) value = value.scaled(inv);
  return c;
}

}  // namespace

bool ConstraintSet::add(ConstraintEquation eq) {
  SymbolicComponents key = scale_free_components(eq.lhs);
  return add(std::move(eq), std::move(key));
}

bool ConstraintSet::add(ConstraintEquation eq, SymbolicComponents key) {
  for (std::size_t n = 0; n < equations_.size(); ++n) {
    if (equations_[n].free == eq.free && keys_[n] == key) return false;
  }
  equations_.push_back(std::move(eq));
  keys_.push_back(std::move(key));
  return true;
}

void ConstraintSet::merge(const ConstraintSet& other) {
  for (std::size_t n = 0; n < other.equations_.size(); ++n) add(other.equations_[n], other.keys_[n]);
}

std::vector<ConstraintEquation> split_sectors(const TensorExpr& r, TripleType triple) {
  const TensorExpr s = simplify(r);
  const auto free = free_labels(s);
  if (std::find(free.begin(), free.end(), kSectorLabel) != free.end()) {
    throw StructuralError(std::string("residual already uses the sector label '") + kSectorLabel + "'");
  }
  TensorExpr parts[3];
  for (const auto& t : s.terms()) {
    Term coeff{t.coeff, t.factors, Atom::id()};
    switch (t.atom.kind) {
      case AtomKind::Id:
        parts[0] += TensorExpr(std::move(coeff));
        break;
      case AtomKind::X:
        coeff.factors.push_back(Factor::delta(t.atom.index, Index(kSectorLabel)));
        parts[1] += TensorExpr(std::move(coeff));
        break;
      case AtomKind::P:
        coeff.factors.push_back(Factor::delta(t.atom.index, Index(kSectorLabel)));
        parts[2] += TensorExpr(std::move(coeff));
        break;
    }
  }
  std::vector<ConstraintEquation> out;
  const Sector sectors[] = {Sector::Id, Sector::X, Sector::P};
  for (int n = 0; n < 3; ++n) {
    TensorExpr lhs = simplify(parts[n]);
    if (lhs.is_zero()) continue;
    bool vanishes = true;
    for (const auto& [key, value] : symbolic_components(lhs)) {
      if (!value.is_zero()) {
        vanishes = false;
        break;
      }
    }
    if (vanishes) continue;
    auto labels = free_labels(lhs);
    out.push_back({std::move(lhs), std::move(labels), {triple, sectors[n]}});
  }
  return out;
}

TensorExpr reassemble(const std::vector<ConstraintEquation>& sectors) {
  TensorExpr out;
  for (const auto& eq : sectors) {
    switch (eq.provenance.sector) {
      case Sector::Id:
        out += eq.lhs;
        break;
      case Sector::X:
        out += eq.lhs * TensorExpr::of(Atom::x(kSectorLabel));
        break;
      case Sector::P:
        out += eq.lhs * TensorExpr::of(Atom::p(kSectorLabel));
        break;
    }
  }
  return simplify(out);
}

ConstraintSet extract_constraints(const TensorExpr& r, TripleType triple) {
  ConstraintSet out;
  for (auto& eq : split_sectors(r, triple)) out.add(std::move(eq));
  return out;
}

ConstraintSet full_constraint_set(const AlgebraSpec& spec, const std::vector<TripleType>& triples) {
  ConstraintSet out;
  for (auto t : triples) {
    const auto atoms = triple_atoms(t);
    out.merge(extract_constraints(jacobi_residual(atoms[0], atoms[1], atoms[2], spec), t));
  }
  return out;
}

std::string render(const ConstraintEquation& eq) {
  return "[" + to_string(eq.provenance.triple) + " " + to_string(eq.provenance.sector) + "] " +
         render(eq.lhs) + " = 0";
}

}  // namespace phasealg
