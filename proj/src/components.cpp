#include "phasealg/components.hpp"

#include <functional>

#include "phasealg/error.hpp"

namespace phasealg {

namespace {

int levi_civita(int a, int b, int c) { return (a - b) * (b - c) * (c - a) / 2; }

using Env = std::map<std::string, int>;

int resolve(const Index& i, const Env& env) { return i.is_value() ? i.value() : env.at(i.name()); }

std::vector<int> resolve_all(const std::vector<Index>& idx, const Env& env) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (const auto& i : idx) out.push_back(resolve(i, env));
  return out;
}

// Calls fn(env) for every assignment of `labels` in {1,2,3}^n, extending `base`.
void for_each_assignment(const std::vector<std::string>& labels, Env base,
                         const std::function<void(const Env&)>& fn) {
  std::vector<int> vals(labels.size(), 1);
  while (true) {
    for (std::size_t n = 0; n < labels.size(); ++n) base[labels[n]] = vals[n];
    fn(base);
    std::size_t pos = 0;
    while (pos < vals.size() && vals[pos] == 3) vals[pos++] = 1;
    if (pos == vals.size()) break;
    ++vals[pos];
  }
}

// Generic brute-force driver; `Value` is GaussianRational or ScalarPoly.
template <class Value>
std::map<ComponentKey, Value> enumerate(
    const TensorExpr& e, const std::function<Value(const Term&)>& coefficient,
    const std::function<Value(const Factor&, const std::vector<int>&)>& named_value) {
  std::map<ComponentKey, Value> out;
  const auto free = free_labels(e);
  validate_indices(e);

  for_each_assignment(free, {}, [&](const Env& free_env) {
    ComponentKey base;
    for (const auto& l : free) base.free_values.emplace_back(l, free_env.at(l));

    for (const auto& t : e.terms()) {
      std::vector<std::string> dummies;
      for (const auto& [label, n] : label_counts(t)) {
        if (n == 2) dummies.push_back(label);
      }
      const Value c = coefficient(t);
      for_each_assignment(dummies, free_env, [&](const Env& env) {
        GaussianRational numeric(1);
        Value symbolic(1);
        bool has_symbolic = false;
        for (const auto& f : t.factors) {
          const auto vals = resolve_all(f.indices, env);
          if (f.kind == FactorKind::Delta) {
            if (vals[0] != vals[1]) return;
          } else if (f.kind == FactorKind::Eps) {
            const int s = levi_civita(vals[0], vals[1], vals[2]);
            if (s == 0) return;
            numeric *= GaussianRational(s);
          } else {
            Value nv = named_value(f, vals);
            if (nv.is_zero()) return;
            symbolic = symbolic * nv;
            has_symbolic = true;
          }
        }
        ComponentKey key = base;
        key.atom = t.atom.kind;
        key.atom_index = t.atom.kind == AtomKind::Id ? 0 : resolve(t.atom.index, env);
        Value contribution = c * Value(numeric);
        if (has_symbolic) contribution = contribution * symbolic;
        auto [it, inserted] = out.try_emplace(key, contribution);
        if (!inserted) it->second = it->second + contribution;
      });
    }
  });

  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) {
      it = out.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

}  // namespace

std::string component_variable(const std::string& tensor, const std::vector<int>& values) {
  std::string out = tensor + "[";
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (n) out += ",";
    out += std::to_string(values[n]);
  }
  return out + "]";
}

Components enumerate_components(const TensorExpr& e, const Valuation& v) {
  auto coefficient = [&](const Term& t) { return t.coeff.evaluate(v.params); };
  auto named = [&](const Factor& f, const std::vector<int>& vals) -> GaussianRational {
    if (f.kind == FactorKind::Rotation) {
      if (!v.rotation) throw EvaluationError("no rotation matrix supplied");
      return GaussianRational((*v.rotation)[vals[0] - 1][vals[1] - 1]);
    }
    auto table = v.tensors.find(f.name);
    if (table == v.tensors.end()) throw EvaluationError("unassigned tensor '" + f.name + "'");
    auto entry = table->second.find(vals);
    return entry == table->second.end() ? GaussianRational() : entry->second;
  };
  return enumerate<GaussianRational>(e, coefficient, named);
}

Components enumerate_components(const TensorExpr& e,
                                const std::map<std::string, GaussianRational>& params) {
  Valuation v;
  v.params = params;
  return enumerate_components(e, v);
}

SymbolicComponents symbolic_components(const TensorExpr& e) {
  auto coefficient = [](const Term& t) { return t.coeff; };
  auto named = [](const Factor& f, std::vector<int> vals) -> ScalarPoly {
    if (f.kind == FactorKind::Rotation) return ScalarPoly::variable(component_variable("rot", vals));
    int sign = 1;
    if (f.symmetry == Symmetry::Antisym2 || f.symmetry == Symmetry::Antisym12) {
      if (vals[0] == vals[1]) return ScalarPoly();
      if (vals[1] < vals[0]) {
        std::swap(vals[0], vals[1]);
        sign = -1;
      }
    }
    return ScalarPoly::variable(component_variable(f.name, vals)).scaled(GaussianRational(sign));
  };
  return enumerate<ScalarPoly>(e, coefficient, named);
}

GaussianRational component(const Components& c, const ComponentKey& key) {
  auto it = c.find(key);
  return it == c.end() ? GaussianRational() : it->second;
}

std::string render(const ComponentKey& key) {
  std::string out = "{";
  for (std::size_t n = 0; n < key.free_values.size(); ++n) {
    if (n) out += ",";
    out += key.free_values[n].first + "=" + std::to_string(key.free_values[n].second);
  }
  out += "}";
  switch (key.atom) {
    case AtomKind::Id:
      return out + " Id";
    case AtomKind::X:
      return out + " X(" + std::to_string(key.atom_index) + ")";
    case AtomKind::P:
      return out + " P(" + std::to_string(key.atom_index) + ")";
  }
  return out;
}

}  // namespace phasealg
