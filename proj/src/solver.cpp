#include "phasealg/solver.hpp"

#include <algorithm>

#include "phasealg/components.hpp"
#include "phasealg/error.hpp"

namespace phasealg {

// ---------------------------------------------------------------------------
// Isotropy

namespace {

TensorExpr isotropic_form(const TensorExpr& e, const AlgebraSpec& spec) {
  TensorExpr out;
  for (const auto& t : e.terms()) {
    Term r{t.coeff, {}, t.atom};
    bool vanishes = false;
    for (const auto& f : t.factors) {
      if (f.kind != FactorKind::Named) {
        r.factors.push_back(f);
        continue;
      }
      const TensorDecl* decl = spec.find_tensor(f.name);
      const int rank = decl ? decl->rank : static_cast<int>(f.indices.size());
      if (rank == 3) {
        r.coeff *= ScalarPoly::variable(f.name);
        r.factors.push_back(Factor::eps(f.indices[0], f.indices[1], f.indices[2]));
      } else if (rank == 2 && f.symmetry == Symmetry::Antisym2) {
        vanishes = true;
      } else {
        throw StructuralError("tensor '" + f.name + "' has no isotropic reduction (rank " +
                              std::to_string(rank) + " without an antisymmetry tag)");
      }
    }
    if (!vanishes) out += TensorExpr(std::move(r));
  }
  return simplify(out);
}

}  // namespace

IsotropyResult apply_isotropy_traced(const AlgebraSpec& spec) {
  IsotropyResult out;
  out.spec.dim = spec.dim;
  out.spec.params = spec.params;
  for (const auto& decl : spec.tensors) {
    if (decl.rank == 3) {
      if (!out.spec.has_param(decl.name)) out.spec.params.push_back(decl.name);
      out.notes.push_back(decl.name + "(i,j,k) -> " + decl.name + "*eps(i,j,k)");
    } else if (decl.rank == 2 && decl.symmetry == Symmetry::Antisym2) {
      out.notes.push_back(decl.name +
                          "(i,j) -> 0 (an isotropic antisymmetric 2-tensor must vanish)");
    } else {
      throw StructuralError("tensor '" + decl.name + "' has no isotropic reduction (rank " +
                            std::to_string(decl.rank) + " without an antisymmetry tag)");
    }
  }
  out.spec.comm_xp = isotropic_form(spec.comm_xp, spec);
  out.spec.comm_xx = isotropic_form(spec.comm_xx, spec);
  out.spec.comm_pp = isotropic_form(spec.comm_pp, spec);
  return out;
}

AlgebraSpec apply_isotropy(const AlgebraSpec& spec) { return apply_isotropy_traced(spec).spec; }

// ---------------------------------------------------------------------------
// Scalarization

PolynomialSystem::PolynomialSystem(std::initializer_list<ScalarPoly> eqs) {
  for (const auto& e : eqs) add(e);
}

bool PolynomialSystem::add(const ScalarPoly& p) {
  if (p.is_zero()) return false;
  ScalarPoly n = p.normalized();
  if (std::find(equations_.begin(), equations_.end(), n) != equations_.end()) return false;
  equations_.push_back(std::move(n));
  return true;
}

bool PolynomialSystem::contains(const ScalarPoly& p) const {
  if (p.is_zero()) return true;
  return std::find(equations_.begin(), equations_.end(), p.normalized()) != equations_.end();
}

PolynomialSystem scalarize(const ConstraintEquation& eq) {
  for (const auto& t : eq.lhs.terms()) {
    for (const auto& f : t.factors) {
      if (f.kind == FactorKind::Named || f.kind == FactorKind::Rotation) {
        throw StructuralError("cannot scalarize " + render(f) + ": apply isotropy first");
      }
    }
  }
  PolynomialSystem out;
  for (const auto& [key, value] : symbolic_components(eq.lhs)) out.add(value);
  return out;
}

PolynomialSystem scalarize(const ConstraintSet& cs) {
  PolynomialSystem out;
  for (const auto& eq : cs.equations()) {
    const PolynomialSystem part = scalarize(eq);
    for (const auto& p : part.equations()) out.add(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Branching solver

namespace {

struct State {
  std::map<std::string, ScalarPoly> assignments;
  std::vector<ScalarPoly> equations;
  std::vector<std::string> lineage;
};

std::vector<std::string> ordered_params(const PolynomialSystem& ps,
                                        const std::vector<std::string>& declared) {
  std::vector<std::string> out = declared;
  std::set<std::string> extra;
  for (const auto& e : ps.equations()) {
    for (const auto& v : e.variables()) {
      if (std::find(out.begin(), out.end(), v) == out.end()) extra.insert(v);
    }
  }
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

std::string latest_declared(const std::set<std::string>& vars, const std::vector<std::string>& order) {
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (vars.count(*it)) return *it;
  }
  return *vars.rbegin();
}

ScalarPoly divide_by(const ScalarPoly& p, const std::string& var) {
  ScalarPoly out;
  for (const auto& [m, c] : p.terms()) out += ScalarPoly::monomial(m.divided_by(var), c);
  return out;
}

std::set<std::string> common_variables(const ScalarPoly& p) {
  std::set<std::string> common;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::set<std::string> here;
    for (const auto& [name, e] : m.powers()) here.insert(name);
    if (first) {
      common = here;
      first = false;
    } else {
      std::set<std::string> kept;
      std::set_intersection(common.begin(), common.end(), here.begin(), here.end(),
                            std::inserter(kept, kept.begin()));
      common = std::move(kept);
    }
  }
  return common;
}

void assign(State& s, const std::string& var, const ScalarPoly& value) {
  const std::map<std::string, ScalarPoly> sub{{var, value}};
  for (auto& [name, v] : s.assignments) v = v.substitute(sub);
  s.assignments[var] = value;
}

std::string equation_text(const std::string& var, const ScalarPoly& value) {
  return var + " = " + value.to_string();
}

}  // namespace

std::vector<std::string> SolutionBranch::free_params() const {
  std::vector<std::string> out;
  for (const auto& p : params) {
    if (!assignments.count(p)) out.push_back(p);
  }
  return out;
}

SolveResult solve_branches_traced(const PolynomialSystem& ps, const std::vector<std::string>& declared) {
  const auto order = ordered_params(ps, declared);
  SolveResult result;
  std::vector<State> stack;
  stack.push_back({{}, ps.equations(), {}});

  while (!stack.empty()) {
    State s = std::move(stack.back());
    stack.pop_back();
    const std::string lineage = render_lineage(s.lineage);
    auto event = [&](std::string kind, std::string relation, std::string detail) {
      result.events.push_back({lineage, std::move(kind), std::move(relation), std::move(detail)});
    };

    bool done = false;
    while (!done) {
      PolynomialSystem reduced;
      bool infeasible = false;
      for (const auto& e : s.equations) {
        const ScalarPoly q = e.substitute(s.assignments);
        if (q.is_zero()) continue;
        if (q.is_constant()) {
          event("infeasible", e.to_string(), "reduces to the nonzero constant " + q.to_string());
          infeasible = true;
          break;
        }
        reduced.add(q);
      }
      if (infeasible) break;
      s.equations = reduced.equations();

      if (s.equations.empty()) {
        SolutionBranch b;
        b.params = order;
        b.assignments = s.assignments;
        b.lineage = s.lineage;
        event("solved", "", "");
        result.branches.push_back(classify_family(std::move(b)));
        break;
      }
      for (const auto& e : s.equations) {
        if (e.degree() > 2) {
          throw UnsupportedSystemError("relation of degree " + std::to_string(e.degree()) +
                                       " is outside the supported class: " + e.to_string() + " = 0");
        }
      }

      // Linear relation: eliminate its latest-declared parameter.
      auto linear = std::find_if(s.equations.begin(), s.equations.end(),
                                 [](const ScalarPoly& e) { return e.degree() == 1; });
      if (linear != s.equations.end()) {
        const std::string var = latest_declared(linear->variables(), order);
        const GaussianRational c = linear->coefficient_of(var, 1).constant_term();
        const ScalarPoly rest = *linear - ScalarPoly::variable(var).scaled(c);
        const ScalarPoly value = rest.scaled(GaussianRational(-1) / c);
        event("substitute", linear->to_string(), equation_text(var, value));
        assign(s, var, value);
        continue;
      }

      // c * p^k = 0 has the single real root p = 0.
      auto power = std::find_if(s.equations.begin(), s.equations.end(), [](const ScalarPoly& e) {
        return e.terms().size() == 1 && e.terms().begin()->first.powers().size() == 1;
      });
      if (power != s.equations.end()) {
        const std::string var = *power->variables().begin();
        event("root", power->to_string(), var + " = 0");
        assign(s, var, ScalarPoly());
        continue;
      }

      // p * R = 0: branch on p = 0, then R = 0.
      auto product = std::find_if(s.equations.begin(), s.equations.end(),
                                  [](const ScalarPoly& e) { return !common_variables(e).empty(); });
      if (product != s.equations.end()) {
        const std::string var = latest_declared(common_variables(*product), order);
        const ScalarPoly rest = divide_by(*product, var).normalized();
        const std::string zero = var + " = 0";
        const std::string other = rest.to_string() + " = 0";
        event("split", product->to_string(), zero + " | " + other);

        State second = s;
        second.equations.push_back(rest);
        second.lineage.push_back(other);
        State first = std::move(s);
        assign(first, var, ScalarPoly());
        first.lineage.push_back(zero);
        stack.push_back(std::move(second));
        stack.push_back(std::move(first));
        done = true;
        continue;
      }

      std::string listing;
      for (const auto& e : s.equations) listing += (listing.empty() ? "" : ", ") + e.to_string() + " = 0";
      event("residual", listing, "no substitution, root or factor split applies");
      SolutionBranch b;
      b.params = order;
      b.assignments = s.assignments;
      b.residual = s.equations;
      b.lineage = s.lineage;
      result.branches.push_back(classify_family(std::move(b)));
      done = true;
    }
  }
  return result;
}

std::vector<SolutionBranch> solve_branches(const PolynomialSystem& ps,
                                           const std::vector<std::string>& params) {
  return solve_branches_traced(ps, params).branches;
}

SolutionBranch classify_family(SolutionBranch b) {
  b.family = Family::Other;
  b.length_scale.reset();
  const auto free = b.free_params();
  bool all_zero = b.residual.empty();
  for (const auto& [name, value] : b.assignments) {
    if (!value.is_zero()) all_zero = false;
  }
  if (!all_zero) {
    b.family_label = b.residual.empty() ? "Other(nonzero assignment)" : "Other(residual relations)";
    return b;
  }
  if (free.empty()) {
    b.family = Family::Heisenberg;
  } else if (free == std::vector<std::string>{"g"}) {
    b.family = Family::RC1;
    b.length_scale = "g^(1/3)";
  } else if (free == std::vector<std::string>{"l"}) {
    b.family = Family::RC2;
    b.length_scale = "l^(-1/3)";
  }
  if (b.family == Family::Other) {
    std::string names;
    for (const auto& f : free) names += (names.empty() ? "" : ",") + f;
    b.family_label = "Other(free " + names + ")";
  } else {
    b.family_label = to_string(b.family);
  }
  return b;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Heisenberg:
      return "Heisenberg";
    case Family::RC1:
      return "RC1";
    case Family::RC2:
      return "RC2";
    case Family::Other:
      return "Other";
  }
  return "Other";
}

std::string render_lineage(const std::vector<std::string>& lineage) {
  if (lineage.empty()) return "root";
  std::string out = "root";
  for (const auto& step : lineage) out += " / " + step;
  return out;
}

std::string render(const SolutionBranch& b) {
  std::string out = "[" + render_lineage(b.lineage) + "] " + b.family_label;
  if (b.length_scale) out += " (length scale " + *b.length_scale + ")";
  out += ":";
  bool first = true;
  for (const auto& p : b.params) {
    out += first ? " " : ", ";
    first = false;
    auto it = b.assignments.find(p);
    out += it == b.assignments.end() ? p + " free" : p + " = " + it->second.to_string();
  }
  if (!b.residual.empty()) {
    out += "; residual:";
    for (std::size_t n = 0; n < b.residual.size(); ++n) {
      out += (n ? ", " : " ") + b.residual[n].to_string() + " = 0";
    }
  }
  return out;
}

}  // namespace phasealg
