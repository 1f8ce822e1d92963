#include "phasealg/invariance.hpp"

#include <algorithm>

#include "phasealg/error.hpp"

namespace phasealg {

namespace {

const std::map<std::string, Index> kSwapIJ{{"i", Index("j")}, {"j", Index("i")}};

AlgebraSpec with_tables(const AlgebraSpec& spec, TensorExpr xp, TensorExpr xx, TensorExpr pp) {
  AlgebraSpec out = spec;
  out.comm_xp = simplify(xp);
  out.comm_xx = simplify(xx);
  out.comm_pp = simplify(pp);
  return out;
}

int permutation_parity(const std::vector<int>& perm) {
  int sign = 1;
  for (std::size_t a = 0; a < perm.size(); ++a) {
    for (std::size_t b = a + 1; b < perm.size(); ++b) {
      if (perm[a] > perm[b]) sign = -sign;
    }
  }
  return sign;
}

}  // namespace

AlgebraSpec duality_transform(const AlgebraSpec& spec) {
  // X = -P', P = X'.
  auto primed = [](const TensorExpr& e) {
    return map_atoms(e, AtomKind::P, -1, AtomKind::X, +1);
  };
  // [X'_i, P'_j] = [P_i, -X_j] = [X_j, P_i];  [X'_i, X'_j] = [P_i, P_j];  [P'_i, P'_j] = [X_i, X_j].
  return with_tables(spec, primed(relabel(spec.comm_xp, kSwapIJ)), primed(spec.comm_pp),
                     primed(spec.comm_xx));
}

AlgebraSpec parity_transform(const AlgebraSpec& spec) {
  auto primed = [](const TensorExpr& e) {
    return map_atoms(e, AtomKind::X, -1, AtomKind::P, -1);
  };
  return with_tables(spec, primed(spec.comm_xp), primed(spec.comm_xx), primed(spec.comm_pp));
}

// ---------------------------------------------------------------------------

DualityMap DualityMap::standard() {
  DualityMap m;
  m.entries_ = {
      {"u", {"v", {1, 0, 2}, +1}},   {"v", {"u", {1, 0, 2}, -1}}, {"alpha", {"beta", {0, 1}, +1}},
      {"beta", {"alpha", {0, 1}, +1}}, {"f", {"m", {0, 1, 2}, +1}}, {"m", {"f", {0, 1, 2}, -1}},
      {"g", {"l", {0, 1, 2}, -1}},   {"l", {"g", {0, 1, 2}, +1}},
  };
  return m;
}

DualityMap DualityMap::as_printed() {
  DualityMap m = standard();
  m.entries_["v"].sign = +1;  // printed as v -> u^t = -u in scalar form
  return m;
}

std::map<std::string, ScalarPoly> DualityMap::scalar_map() const {
  std::map<std::string, ScalarPoly> out;
  for (const auto& [name, e] : entries_) {
    const int sign = e.sign * (e.perm.size() == 3 ? permutation_parity(e.perm) : 1);
    out[name] = ScalarPoly::variable(e.target).scaled(GaussianRational(sign));
  }
  return out;
}

TensorExpr DualityMap::apply(const TensorExpr& e) const {
  const auto scalars = scalar_map();
  TensorExpr out;
  for (const auto& input : e.terms()) {
    Term t{input.coeff.substitute(scalars), {}, input.atom};
    for (const auto& f : input.factors) {
      auto it = f.kind == FactorKind::Named ? entries_.find(f.name) : entries_.end();
      if (it == entries_.end()) {
        t.factors.push_back(f);
        continue;
      }
      const DualityEntry& entry = it->second;
      if (entry.perm.size() != f.indices.size()) {
        throw StructuralError("duality entry for '" + f.name + "' has the wrong rank");
      }
      Factor g = f;
      g.name = entry.target;
      for (std::size_t n = 0; n < entry.perm.size(); ++n) g.indices[n] = f.indices[entry.perm[n]];
      t.factors.push_back(std::move(g));
      t.coeff = t.coeff.scaled(GaussianRational(entry.sign));
    }
    out += TensorExpr(std::move(t));
  }
  return simplify(out);
}

AlgebraSpec DualityMap::apply(const AlgebraSpec& spec) const {
  return with_tables(spec, apply(spec.comm_xp), apply(spec.comm_xx), apply(spec.comm_pp));
}

ConstraintSet DualityMap::apply(const ConstraintSet& cs) const {
  ConstraintSet out;
  for (const auto& eq : cs.equations()) {
    ConstraintEquation image = eq;
    image.lhs = apply(eq.lhs);
    image.free = free_labels(image.lhs);
    out.add(std::move(image));
  }
  return out;
}

bool specs_equivalent(const AlgebraSpec& a, const AlgebraSpec& b) {
  return expr_equiv(a.comm_xp, b.comm_xp) && expr_equiv(a.comm_xx, b.comm_xx) &&
         expr_equiv(a.comm_pp, b.comm_pp);
}

namespace {

// Component table scaled so its first entry has leading coefficient 1; two tensors agree up to a
// constant factor exactly when these tables are equal.
SymbolicComponents normalized(SymbolicComponents c) {
  if (c.empty()) return c;
  const GaussianRational inv = GaussianRational(1) / c.begin()->second.leading().second;
  for (auto& [key, value] : c) value = value.scaled(inv);
  return c;
}

struct Entry {
  std::vector<std::string> free;
  SymbolicComponents components;  // unnormalized
};

std::vector<Entry> entries_of(const ConstraintSet& set) {
  std::vector<Entry> out;
  for (const auto& eq : set.equations()) out.push_back({eq.free, symbolic_components(eq.lhs)});
  return out;
}

bool has_partner(const Entry& eq, const std::vector<Entry>& others) {
  std::vector<std::string> labels{"i", "j", "k"};
  std::vector<std::string> perm = labels;
  do {
    std::map<std::string, std::string> mapping;
    for (std::size_t n = 0; n < labels.size(); ++n) mapping.emplace(labels[n], perm[n]);
    auto rename = [&](const std::string& l) {
      auto it = mapping.find(l);
      return it == mapping.end() ? l : it->second;
    };
    std::vector<std::string> free;
    for (const auto& l : eq.free) free.push_back(rename(l));
    std::sort(free.begin(), free.end());

    SymbolicComponents moved;
    for (const auto& [key, value] : eq.components) {
      ComponentKey k = key;
      for (auto& [label, v] : k.free_values) label = rename(label);
      std::sort(k.free_values.begin(), k.free_values.end());
      moved.emplace(std::move(k), value);
    }
    moved = normalized(std::move(moved));
    for (const auto& other : others) {
      if (other.free == free && normalized(other.components) == moved) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

bool constraint_sets_match(const ConstraintSet& a, const ConstraintSet& b) {
  const auto ea = entries_of(a), eb = entries_of(b);
  for (const auto& eq : ea) {
    if (!has_partner(eq, eb)) return false;
  }
  for (const auto& eq : eb) {
    if (!has_partner(eq, ea)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rotations

std::string to_string(Table t) {
  switch (t) {
    case Table::XP:
      return "[X,P]";
    case Table::XX:
      return "[X,X]";
    case Table::PP:
      return "[P,P]";
  }
  return "?";
}

namespace {

const TensorExpr& table_of(const AlgebraSpec& spec, Table t) {
  switch (t) {
    case Table::XP:
      return spec.comm_xp;
    case Table::XX:
      return spec.comm_xx;
    case Table::PP:
      return spec.comm_pp;
  }
  return spec.comm_xp;
}

// X(k) = a(n,k) X'(n), likewise for P.
TensorExpr to_primed_atoms(const TensorExpr& e, FreshLabels& fresh) {
  TensorExpr out;
  for (const auto& input : e.terms()) {
    Term t = input;
    if (t.atom.kind != AtomKind::Id) {
      const Index n = fresh.next();
      t.factors.push_back(Factor::rotation(n, t.atom.index));
      t.atom.index = n;
    }
    out += TensorExpr(std::move(t));
  }
  return out;
}

bool is_dummy(const Index& i, const std::map<std::string, int>& counts) {
  return i.is_label() && counts.at(i.name()) == 2;
}

// One axiom application on a term; returns false when nothing matched.
bool rotation_step(Term& t) {
  const auto counts = label_counts(t);
  std::vector<std::size_t> rots;
  for (std::size_t n = 0; n < t.factors.size(); ++n) {
    if (t.factors[n].kind == FactorKind::Rotation) rots.push_back(n);
  }

  auto erase = [&](std::vector<std::size_t> which) {
    std::sort(which.rbegin(), which.rend());
    for (auto n : which) t.factors.erase(t.factors.begin() + static_cast<long>(n));
  };

  // Orthogonality, second or first slot summed.
  for (std::size_t a = 0; a < rots.size(); ++a) {
    for (std::size_t b = a + 1; b < rots.size(); ++b) {
      const Factor& ra = t.factors[rots[a]];
      const Factor& rb = t.factors[rots[b]];
      for (int slot : {1, 0}) {
        if (ra.indices[slot] == rb.indices[slot] && is_dummy(ra.indices[slot], counts)) {
          const Factor d = Factor::delta(ra.indices[1 - slot], rb.indices[1 - slot]);
          erase({rots[a], rots[b]});
          t.factors.push_back(d);
          return true;
        }
      }
    }
  }

  // Unit determinant: a(p,x) a(q,y) a(r,z) eps(x,y,z) = eps(p,q,r).
  for (std::size_t e = 0; e < t.factors.size(); ++e) {
    if (t.factors[e].kind != FactorKind::Eps) continue;
    const Factor eps = t.factors[e];
    for (int slot : {1, 0}) {
      std::vector<std::size_t> used;
      std::vector<Index> image;
      bool matched = true;
      for (const auto& x : eps.indices) {
        bool found = false;
        if (is_dummy(x, counts)) {
          for (auto r : rots) {
            if (t.factors[r].indices[slot] == x &&
                std::find(used.begin(), used.end(), r) == used.end()) {
              used.push_back(r);
              image.push_back(t.factors[r].indices[1 - slot]);
              found = true;
              break;
            }
          }
        }
        if (!found) {
          matched = false;
          break;
        }
      }
      if (matched) {
        used.push_back(e);
        erase(used);
        t.factors.push_back(Factor::eps(image[0], image[1], image[2]));
        return true;
      }
    }
  }
  return false;
}

}  // namespace

TensorExpr rotated_table(const AlgebraSpec& spec, Table t) {
  FreshLabels fresh("_r");
  const Index p = fresh.next();
  const Index q = fresh.next();
  TensorExpr body = relabel(freshen_dummies(table_of(spec, t), fresh), {{"i", p}, {"j", q}});
  body = to_primed_atoms(body, fresh);
  const TensorExpr frame =
      TensorExpr::of(Factor::rotation("i", p)) * TensorExpr::of(Factor::rotation("j", q));
  return frame * body;
}

TensorExpr reduce_rotations(const TensorExpr& e) {
  TensorExpr cur = simplify(e);
  for (int iter = 0; iter < 64; ++iter) {
    TensorExpr next;
    bool changed = false;
    for (const auto& input : cur.terms()) {
      Term t = input;
      while (rotation_step(t)) changed = true;
      next += TensorExpr(std::move(t));
    }
    next = simplify(next);
    if (!changed) return next;
    cur = std::move(next);
  }
  return cur;
}

RotationCheck check_rotation_invariance(const AlgebraSpec& spec) {
  RotationCheck out;
  for (Table t : {Table::XP, Table::XX, Table::PP}) {
    const TensorExpr residual = reduce_rotations(rotated_table(spec, t) - table_of(spec, t));
    if (residual.is_zero()) continue;
    bool vanishes = true;
    for (const auto& [key, value] : symbolic_components(residual)) {
      if (!value.is_zero()) {
        vanishes = false;
        break;
      }
    }
    if (vanishes) continue;
    out.invariant = false;
    out.witnesses.push_back({t, residual});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Uncertainty bound

void ExpectationAssignment::set(const Atom& atom, Rational value) {
  if (atom.kind == AtomKind::Id) throw StructuralError("the identity expectation is fixed to 1");
  if (!atom.index.is_value()) throw StructuralError("expectation needs a concrete index");
  values_[{atom.kind, atom.index.value()}] = std::move(value);
}

Rational ExpectationAssignment::at(AtomKind kind, int index) const {
  if (kind == AtomKind::Id) return Rational(1);
  auto it = values_.find({kind, index});
  if (it == values_.end()) {
    throw EvaluationError(std::string("no expectation for ") + (kind == AtomKind::X ? "X(" : "P(") +
                          std::to_string(index) + ")");
  }
  return it->second;
}

Rational uncertainty_bound(const TensorExpr& commutator, const ExpectationAssignment& ev,
                           const std::map<std::string, GaussianRational>& params) {
  if (!free_labels(commutator).empty()) {
    throw StructuralError("commutator has free labels: " + render(commutator));
  }
  Rational mean(0);
  for (const auto& [key, value] : enumerate_components(commutator, params)) {
    if (sgn(value.re()) != 0) {
      throw StructuralError("commutator is not i times a real form: component " + render(key) +
                            " is " + value.to_string());
    }
    mean += value.im() * ev.at(key.atom, key.atom_index);
  }
  return abs(mean) / 2;
}

}  // namespace phasealg
