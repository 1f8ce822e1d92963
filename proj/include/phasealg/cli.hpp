#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phasealg/solver.hpp"
#include "phasealg/spec_parser.hpp"

namespace phasealg {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInconsistent = 1;
inline constexpr int kParse = 2;
inline constexpr int kUnsupported = 3;
}  // namespace exit_code

struct CommandResult {
  int exit_code = exit_code::kOk;
  std::string out;
  std::string err;
};

/// Step labels keyed by (operation, key); loaded from a JSON data file.
class Manifest {
 public:
  struct Entry {
    std::string op;
    std::string key;
    std::string label;
    std::optional<bool> isotropic;
  };

  static Manifest parse(std::string_view json_text);
  /// Missing or unreadable file yields an empty manifest.
  static Manifest load(const std::string& path);

  std::string lookup(const std::string& op, const std::string& key, bool isotropic) const;
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Everything computed between parsing and the final branch list.
struct Pipeline {
  AlgebraSpec spec;  // after isotropy when tensors were declared
  std::optional<IsotropyResult> isotropy;
  std::vector<TripleType> triples;
  std::vector<std::pair<TripleType, TensorExpr>> residuals;
  ConstraintSet constraints;
  std::vector<std::pair<std::size_t, ScalarPoly>> relations;  // (equation index, relation)
  PolynomialSystem system;
  SolveResult solved;
};

/// Isotropy (if tensors are declared), constraints over `triples`, scalarization, branching.
/// Without `isotropic` the pipeline stops after the tensor constraints.
Pipeline run_pipeline(const SpecDocument& doc, const std::vector<TripleType>& triples,
                      bool isotropic = true, bool solve = true);

struct TraceStep {
  int index = 0;
  std::string op;
  std::string key;
  std::string input;
  std::string output;
  std::string label;
  std::string lineage;
};

struct TraceReport {
  std::string source;
  std::vector<TripleType> triples;
  bool isotropic = false;
  std::vector<std::string> params;
  std::vector<std::string> system;
  std::vector<TraceStep> steps;
  std::vector<SolutionBranch> branches;
};

inline constexpr const char* kTraceSchema = "phasealg.trace";
inline constexpr int kTraceVersion = 1;

TraceReport build_trace(std::string_view source, const std::vector<TripleType>& triples,
                        const Manifest& manifest);
std::string trace_text(const TraceReport& report);
/// Stable, versioned JSON (pretty-printed, two-space indent).
std::string trace_structured(const TraceReport& report);

/// `xxp,xpp` -> types; throws std::invalid_argument.
std::vector<TripleType> parse_triples(const std::string& list);

CommandResult run_check(std::string_view source);
CommandResult run_derive(std::string_view source, bool isotropic);
CommandResult run_solve(std::string_view source,
                        const std::vector<TripleType>& triples = all_triple_types());
CommandResult run_trace(std::string_view source, const std::string& format,
                        const std::vector<TripleType>& triples, const Manifest& manifest);
/// Recomputes a structured trace from its embedded source and compares it step by step; also
/// re-solves the recorded polynomial system. Exit 0 on an identical result, 1 otherwise.
CommandResult run_replay(std::string_view trace_json, const Manifest& manifest);

}  // namespace phasealg
