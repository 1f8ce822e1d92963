// phasealg: consistency checks for deformed phase-space commutator algebras.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "phasealg/cli.hpp"

#ifndef PHASEALG_SPEC_DIR
#define PHASEALG_SPEC_DIR "specs"
#endif

namespace {

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path);
  if (!in) return false;
  std::stringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  return true;
}

int emit(const phasealg::CommandResult& r, const std::string& path) {
  std::cout << r.out;
  if (!r.err.empty()) {
    // Parse diagnostics already start with line:column.
    std::cerr << (r.exit_code == phasealg::exit_code::kParse ? path + ":" : "") << r.err;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic consistency engine for deformed Heisenberg algebras"};
  app.require_subcommand(1);

  std::string file;
  bool isotropic = false;
  std::string triples = "xxp,xpp,xxx,ppp";
  std::string format = "text";
  std::string manifest_path = std::string(PHASEALG_SPEC_DIR) + "/trace_manifest.json";

  auto* check = app.add_subcommand("check", "Report whether every Jacobi identity holds");
  check->add_option("file", file, ".alg specification")->required();

  auto* derive = app.add_subcommand("derive", "Print the constraint equations");
  derive->add_option("file", file, ".alg specification")->required();
  derive->add_flag("--isotropic", isotropic, "Apply the isotropy ansatz and scalarize");

  auto* solve = app.add_subcommand("solve", "Solve the isotropic constraint system");
  solve->add_option("file", file, ".alg specification")->required();
  solve->add_option("--triples", triples, "Comma-separated triple types (xxp,xpp,xxx,ppp)");

  auto* trace = app.add_subcommand("trace", "Emit the derivation trace");
  trace->add_option("file", file, ".alg specification")->required();
  trace->add_option("--format", format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  trace->add_option("--triples", triples, "Comma-separated triple types (xxp,xpp,xxx,ppp)");
  trace->add_option("--manifest", manifest_path, "Step label manifest (JSON)");

  auto* replay = app.add_subcommand("replay", "Recompute a structured trace and compare");
  replay->add_option("file", file, "structured trace (JSON)")->required();
  replay->add_option("--manifest", manifest_path, "Step label manifest (JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : phasealg::exit_code::kParse;
  }

  std::string text;
  if (!read_file(file, text)) {
    std::cerr << file << ": cannot read file\n";
    return phasealg::exit_code::kParse;
  }

  std::vector<phasealg::TripleType> selected;
  try {
    selected = phasealg::parse_triples(triples);
  } catch (const std::invalid_argument& e) {
    std::cerr << "--triples: " << e.what() << "\n";
    return phasealg::exit_code::kParse;
  }

  if (*check) return emit(phasealg::run_check(text), file);
  if (*derive) return emit(phasealg::run_derive(text, isotropic), file);
  if (*solve) return emit(phasealg::run_solve(text, selected), file);
  const auto manifest = phasealg::Manifest::load(manifest_path);
  if (*trace) return emit(phasealg::run_trace(text, format, selected, manifest), file);
  return emit(phasealg::run_replay(text, manifest), file);
}
