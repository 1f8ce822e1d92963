#include "phasealg/cli.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "phasealg/error.hpp"

namespace phasealg {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Manifest

Manifest Manifest::parse(std::string_view json_text) {
  Manifest m;
  const json doc = json::parse(json_text);
  for (const auto& e : doc.at("entries")) {
    Entry entry{e.at("op").get<std::string>(), e.at("key").get<std::string>(),
                e.at("label").get<std::string>(), std::nullopt};
    if (e.contains("isotropic")) entry.isotropic = e.at("isotropic").get<bool>();
    m.entries_.push_back(std::move(entry));
  }
  return m;
}

Manifest Manifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {};
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Manifest::lookup(const std::string& op, const std::string& key, bool isotropic) const {
  for (const auto& e : entries_) {
    if (e.op == op && e.key == key && (!e.isotropic || *e.isotropic == isotropic)) return e.label;
  }
  return "";
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

std::string triple_text(TripleType t) {
  const auto atoms = triple_atoms(t);
  const std::string a = render(atoms[0]), b = render(atoms[1]), c = render(atoms[2]);
  return "[" + a + ",[" + b + "," + c + "]] - [[" + a + "," + b + "]," + c + "] - [" + b + ",[" +
         a + "," + c + "]]";
}

std::string provenance_key(const ConstraintEquation& eq) {
  return to_string(eq.provenance.triple) + " " + to_string(eq.provenance.sector);
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t n = 0; n < items.size(); ++n) out += (n ? sep : "") + items[n];
  return out;
}

}  // namespace

Pipeline run_pipeline(const SpecDocument& doc, const std::vector<TripleType>& triples,
                      bool isotropic, bool solve) {
  Pipeline p;
  p.triples = triples;
  p.spec = doc.spec();
  if (isotropic && !doc.tensors.empty()) {
    p.isotropy = apply_isotropy_traced(p.spec);
    p.spec = p.isotropy->spec;
  }
  for (auto t : triples) {
    const auto atoms = triple_atoms(t);
    TensorExpr r = jacobi_residual(atoms[0], atoms[1], atoms[2], p.spec);
    p.constraints.merge(extract_constraints(r, t));
    p.residuals.emplace_back(t, std::move(r));
  }
  if (!isotropic) return p;
  for (std::size_t n = 0; n < p.constraints.size(); ++n) {
    const PolynomialSystem part = scalarize(p.constraints.equations()[n]);
    for (const auto& rel : part.equations()) {
      if (p.system.add(rel)) p.relations.emplace_back(n, rel);
    }
  }
  if (solve) p.solved = solve_branches_traced(p.system, p.spec.params);
  return p;
}

// ---------------------------------------------------------------------------
// Trace

TraceReport build_trace(std::string_view source, const std::vector<TripleType>& triples,
                        const Manifest& manifest) {
  const SpecDocument doc = parse_spec(source);
  const Pipeline p = run_pipeline(doc, triples, true);

  TraceReport r;
  r.source = std::string(source);
  r.triples = triples;
  r.isotropic = p.spec.tensors.empty();
  r.params = p.spec.params;
  for (const auto& e : p.system.equations()) r.system.push_back(e.to_string());
  r.branches = p.solved.branches;

  auto step = [&](std::string op, std::string key, std::string input, std::string output,
                  std::string lineage = "") {
    TraceStep s;
    s.index = static_cast<int>(r.steps.size()) + 1;
    s.label = manifest.lookup(op, key, r.isotropic);
    s.op = std::move(op);
    s.key = std::move(key);
    s.input = std::move(input);
    s.output = std::move(output);
    s.lineage = std::move(lineage);
    r.steps.push_back(std::move(s));
  };

  if (p.constraints.empty()) {
    step("check", "no constraints", "", "no constraints");
    return r;
  }
  if (p.isotropy) {
    for (const auto& note : p.isotropy->notes) {
      step("apply_isotropy", note.substr(0, note.find(' ')), "", note);
    }
  }
  for (const auto& [t, residual] : p.residuals) {
    if (residual.is_zero()) continue;
    step("jacobi_residual", to_string(t), triple_text(t), render(residual));
  }
  for (const auto& eq : p.constraints.equations()) {
    step("extract_constraints", provenance_key(eq), "", render(eq.lhs) + " = 0");
  }
  for (const auto& [n, rel] : p.relations) {
    step("scalarize", rel.to_string(), provenance_key(p.constraints.equations()[n]),
         rel.to_string() + " = 0");
  }
  for (const auto& ev : p.solved.events) {
    const std::string key = ev.kind == "split" || ev.kind == "residual" ? ev.relation : ev.detail;
    step(ev.kind, key, ev.relation, ev.detail, ev.lineage);
  }
  for (const auto& b : p.solved.branches) {
    step("classify_family", b.family_label, "", render(b), render_lineage(b.lineage));
  }
  return r;
}

std::string trace_text(const TraceReport& report) {
  std::string out = "trace (" + std::string(kTraceSchema) + " v" + std::to_string(kTraceVersion) + ")\n";
  std::vector<std::string> triples;
  for (auto t : report.triples) triples.push_back(to_string(t));
  out += "triples: " + join(triples, ",") + "\n";
  for (const auto& s : report.steps) {
    out += std::to_string(s.index) + ". " + s.op;
    if (!s.lineage.empty() && s.lineage != "root") out += " {" + s.lineage + "}";
    if (!s.input.empty()) out += "  <" + s.input + ">";
    out += "  " + s.output;
    if (!s.label.empty()) out += "  [" + s.label + "]";
    out += "\n";
  }
  out += "branches: " + std::to_string(report.branches.size()) + "\n";
  for (const auto& b : report.branches) out += "  " + render(b) + "\n";
  return out;
}

namespace {

json branch_json(const SolutionBranch& b) {
  json assignments = json::object();
  for (const auto& [name, value] : b.assignments) assignments[name] = value.to_string();
  json residual = json::array();
  for (const auto& e : b.residual) residual.push_back(e.to_string());
  return {
      {"lineage", b.lineage},
      {"family", b.family_label},
      {"length_scale", b.length_scale ? json(*b.length_scale) : json(nullptr)},
      {"assignments", assignments},
      {"free", b.free_params()},
      {"residual", residual},
      {"text", render(b)},
  };
}

json report_json(const TraceReport& report) {
  json triples = json::array();
  for (auto t : report.triples) triples.push_back(to_string(t));
  json steps = json::array();
  for (const auto& s : report.steps) {
    steps.push_back({{"index", s.index},
                     {"op", s.op},
                     {"key", s.key},
                     {"input", s.input},
                     {"output", s.output},
                     {"label", s.label.empty() ? json(nullptr) : json(s.label)},
                     {"lineage", s.lineage}});
  }
  json branches = json::array();
  for (const auto& b : report.branches) branches.push_back(branch_json(b));
  return {{"schema", kTraceSchema},
          {"version", kTraceVersion},
          {"source", report.source},
          {"triples", triples},
          {"isotropic", report.isotropic},
          {"params", report.params},
          {"system", report.system},
          {"steps", steps},
          {"branches", branches}};
}

}  // namespace

std::string trace_structured(const TraceReport& report) { return report_json(report).dump(2) + "\n"; }

std::vector<TripleType> parse_triples(const std::string& list) {
  std::vector<TripleType> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const TripleType t = parse_triple_type(item);
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  if (out.empty()) throw std::invalid_argument("empty triple list");
  // Keep the canonical processing order regardless of how the list was written.
  std::vector<TripleType> ordered;
  for (auto t : all_triple_types()) {
    if (std::find(out.begin(), out.end(), t) != out.end()) ordered.push_back(t);
  }
  return ordered;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

template <class Fn>
CommandResult guarded(Fn&& fn) {
  CommandResult r;
  try {
    fn(r);
  } catch (const ParseError& e) {
    r.exit_code = exit_code::kParse;
    r.err += std::string(e.what()) + "\n";
  } catch (const UnsupportedSystemError& e) {
    r.exit_code = exit_code::kUnsupported;
    r.err += std::string("unsupported system: ") + e.what() + "\n";
  } catch (const StructuralError& e) {
    r.exit_code = exit_code::kParse;
    r.err += std::string("invalid spec: ") + e.what() + "\n";
  } catch (const json::exception& e) {
    r.exit_code = exit_code::kParse;
    r.err += std::string("malformed trace: ") + e.what() + "\n";
  } catch (const std::invalid_argument& e) {
    r.exit_code = exit_code::kParse;
    r.err += std::string("invalid input: ") + e.what() + "\n";
  }
  return r;
}

}  // namespace

CommandResult run_check(std::string_view source) {
  return guarded([&](CommandResult& r) {
    const SpecDocument doc = parse_spec(source);
    const ConstraintSet cs = full_constraint_set(doc.spec());
    if (cs.empty()) {
      r.out = "CONSISTENT\n";
      return;
    }
    r.exit_code = exit_code::kInconsistent;
    r.out = "INCONSISTENT: " + std::to_string(cs.size()) + " violated equation" +
            (cs.size() == 1 ? "" : "s") + "\n";
    for (const auto& eq : cs.equations()) r.out += render(eq) + "\n";
  });
}

CommandResult run_derive(std::string_view source, bool isotropic) {
  return guarded([&](CommandResult& r) {
    const SpecDocument doc = parse_spec(source);
    const Pipeline p = run_pipeline(doc, all_triple_types(), isotropic, false);
    if (p.isotropy) {
      r.out += "isotropy:\n";
      for (const auto& note : p.isotropy->notes) r.out += "  " + note + "\n";
    }
    if (p.constraints.empty()) {
      r.out += "no constraints\n";
      return;
    }
    r.out += "constraints: " + std::to_string(p.constraints.size()) + "\n";
    for (const auto& eq : p.constraints.equations()) r.out += "  " + render(eq) + "\n";
    if (isotropic) {
      r.out += "polynomial system: " + std::to_string(p.system.size()) + "\n";
      for (const auto& e : p.system.equations()) r.out += "  " + e.to_string() + " = 0\n";
    }
  });
}

CommandResult run_solve(std::string_view source, const std::vector<TripleType>& triples) {
  return guarded([&](CommandResult& r) {
    const SpecDocument doc = parse_spec(source);
    const Pipeline p = run_pipeline(doc, triples, true);
    r.out = "branches: " + std::to_string(p.solved.branches.size()) + "\n";
    for (const auto& b : p.solved.branches) r.out += "  " + render(b) + "\n";
  });
}

CommandResult run_trace(std::string_view source, const std::string& format,
                        const std::vector<TripleType>& triples, const Manifest& manifest) {
  return guarded([&](CommandResult& r) {
    const TraceReport report = build_trace(source, triples, manifest);
    r.out = format == "structured" ? trace_structured(report) : trace_text(report);
  });
}

CommandResult run_replay(std::string_view trace_json, const Manifest& manifest) {
  return guarded([&](CommandResult& r) {
    json recorded;
    try {
      recorded = json::parse(trace_json);
    } catch (const json::exception& e) {
      throw ParseError(diag::kSyntax, 1, 1, std::string("trace is not JSON: ") + e.what());
    }
    if (recorded.value("schema", "") != kTraceSchema || recorded.value("version", 0) != kTraceVersion) {
      throw ParseError(diag::kSyntax, 1, 1, "not a phasealg.trace v1 document");
    }
    std::vector<TripleType> triples;
    for (const auto& t : recorded.at("triples")) triples.push_back(parse_triple_type(t.get<std::string>()));

    const json fresh = report_json(build_trace(recorded.at("source").get<std::string>(), triples, manifest));
    const auto& old_steps = recorded.at("steps");
    const auto& new_steps = fresh.at("steps");
    for (std::size_t n = 0; n < std::max(old_steps.size(), new_steps.size()); ++n) {
      if (n >= old_steps.size() || n >= new_steps.size() || old_steps[n] != new_steps[n]) {
        r.exit_code = exit_code::kInconsistent;
        r.out = "REPLAY MISMATCH at step " + std::to_string(n + 1) + "\n";
        return;
      }
    }

    // Independent route: solve the recorded relations directly.
    PolynomialSystem system;
    for (const auto& e : recorded.at("system")) system.add(parse_polynomial(e.get<std::string>()));
    const auto params = recorded.at("params").get<std::vector<std::string>>();
    json branches = json::array();
    for (const auto& b : solve_branches(system, params)) branches.push_back(branch_json(b));

    if (fresh.at("branches") != recorded.at("branches") || branches != recorded.at("branches")) {
      r.exit_code = exit_code::kInconsistent;
      r.out = "REPLAY MISMATCH in branches\n";
      return;
    }
    r.out = "REPLAY OK: " + std::to_string(new_steps.size()) + " steps, " +
            std::to_string(branches.size()) + " branch" + (branches.size() == 1 ? "" : "es") + "\n";
  });
}

}  // namespace phasealg
