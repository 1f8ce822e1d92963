#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "json.hpp"
#include "phasealg/cli.hpp"
#include "support/oracles.hpp"

using namespace phasealg;
using nlohmann::json;

namespace {

const char* kCubic =
    "dimension 3\nparam a\n"
    "comm X P : i*delta(i,j) + i*a*eps(i,j,k)*X(k)\n"
    "comm X X : i*a^2*eps(i,j,k)*P(k)\n"
    "comm P P : 0\n";

Manifest manifest() { return Manifest::load(std::string(PHASEALG_SPEC_DIR) + "/trace_manifest.json"); }

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = std::string("/tmp/phasealg_test_") + name;
  std::ofstream(path) << text;
  return path;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(PHASEALG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("check: consistent and inconsistent specs") {
  for (const char* file : {"heisenberg.alg", "heisenberg_minus_delta.alg", "central_theta.alg"}) {
    const CommandResult r = run_check(oracle::read_spec(file));
    CHECK(r.exit_code == exit_code::kOk);
    CHECK(r.out == "CONSISTENT\n");
  }
  const CommandResult rc1 = run_check(oracle::read_spec("rc1.alg"));
  CHECK(rc1.exit_code == exit_code::kInconsistent);
  CHECK(rc1.out == "INCONSISTENT: 1 violated equation\n[xxx Id] -3*g*eps(i,j,k) = 0\n");
  const CommandResult generic = run_check(oracle::read_spec("generic.alg"));
  CHECK(generic.exit_code == exit_code::kInconsistent);
  CHECK(generic.out.rfind("INCONSISTENT: 12 violated equations\n", 0) == 0);
}

TEST_CASE("derive: tensor and isotropic forms") {
  const CommandResult tensor = run_derive(oracle::read_spec("generic.alg"), false);
  CHECK(tensor.exit_code == exit_code::kOk);
  CHECK(tensor.out.find("constraints: 12") != std::string::npos);
  CHECK(tensor.out.find("polynomial system") == std::string::npos);
  const CommandResult iso = run_derive(oracle::read_spec("generic.alg"), true);
  CHECK(iso.out.find("isotropy:\n  u(i,j,k) -> u*eps(i,j,k)") != std::string::npos);
  CHECK(iso.out.find("  m - 2*u = 0\n") != std::string::npos);
  CHECK(iso.out.find("polynomial system: 7") != std::string::npos);
  // derive never solves, so a high-degree system is still printed
  CHECK(run_derive(kCubic, true).exit_code == exit_code::kOk);
}

TEST_CASE("solve: branches and exit codes") {
  const CommandResult all = run_solve(oracle::read_spec("generic.alg"));
  CHECK(all.exit_code == exit_code::kOk);
  CHECK(all.out == "branches: 1\n  [root] Heisenberg: u = 0, v = 0, f = 0, g = 0, l = 0, m = 0\n");
  const CommandResult mixed = run_solve(oracle::read_spec("generic.alg"), parse_triples("xxp,xpp"));
  CHECK(mixed.out.find("Other(residual relations)") != std::string::npos);
  CHECK(run_solve(kCubic).exit_code == exit_code::kUnsupported);
  CHECK(run_solve("comm X P : $").exit_code == exit_code::kParse);
}

TEST_CASE("output is deterministic") {
  const std::string src = oracle::read_spec("generic.alg");
  CHECK(run_derive(src, true).out == run_derive(src, true).out);
  const auto a = run_trace(src, "structured", all_triple_types(), manifest());
  const auto b = run_trace(src, "structured", all_triple_types(), manifest());
  CHECK(a.out == b.out);
}

TEST_CASE("parse_triples") {
  CHECK(parse_triples("xpp,xxp") == std::vector<TripleType>{TripleType::XXP, TripleType::XPP});
  CHECK(parse_triples("PPP") == std::vector<TripleType>{TripleType::PPP});
  CHECK_THROWS_AS(parse_triples("xxp,abc"), std::invalid_argument);
}

TEST_CASE("trace: structured schema and labels") {
  const CommandResult r = run_trace(oracle::read_spec("generic.alg"), "structured", all_triple_types(), manifest());
  REQUIRE(r.exit_code == exit_code::kOk);
  const json j = json::parse(r.out);
  CHECK(j.at("schema") == kTraceSchema);
  CHECK(j.at("version") == kTraceVersion);
  CHECK(j.at("isotropic") == true);
  CHECK(j.at("params") == json({"u", "v", "f", "g", "l", "m"}));
  CHECK(j.at("branches").size() == 1);
  CHECK(j.at("branches")[0].at("family") == "Heisenberg");
  bool labelled = false;
  int index = 0;
  for (const auto& step : j.at("steps")) {
    CHECK(step.at("index") == ++index);
    for (const char* field : {"op", "key", "input", "output", "label", "lineage"}) CHECK(step.contains(field));
    if (step.at("op") == "scalarize" && step.at("key") == "f - 2*v") labelled = step.at("label") == "Eq (1c): f = 2v";
  }
  CHECK(labelled);
}

TEST_CASE("trace: a consistent spec has a single step") {
  const CommandResult r = run_trace(oracle::read_spec("heisenberg.alg"), "text", all_triple_types(), manifest());
  CHECK(r.out.find("1. check  no constraints\n") != std::string::npos);
  CHECK(r.out.find("2. ") == std::string::npos);
}

TEST_CASE("trace: text form and manifest lookup") {
  const CommandResult r = run_trace(oracle::read_spec("generic.alg"), "text", all_triple_types(), manifest());
  CHECK(r.out.rfind("trace (phasealg.trace v1)\n", 0) == 0);
  CHECK(r.out.find("[Eq (1c): f = 2v]") != std::string::npos);
  const Manifest m = Manifest::parse(
      R"({"entries":[{"op":"a","key":"k","label":"iso","isotropic":true},{"op":"a","key":"k","label":"any"}]})");
  CHECK(m.lookup("a", "k", true) == "iso");
  CHECK(m.lookup("a", "k", false) == "any");
  CHECK(m.lookup("a", "missing", false).empty());
  CHECK(Manifest::load("/nonexistent/manifest.json").entries().empty());
}

TEST_CASE("replay: recomputation matches, tampering is detected") {
  const std::string src = oracle::read_spec("generic.alg");
  const std::string trace = run_trace(src, "structured", parse_triples("xxp,xpp"), manifest()).out;
  const CommandResult ok = run_replay(trace, manifest());
  CHECK(ok.exit_code == exit_code::kOk);
  CHECK(ok.out.rfind("REPLAY OK", 0) == 0);

  json tampered = json::parse(trace);
  tampered["steps"][3]["output"] = "0";
  CHECK(run_replay(tampered.dump(), manifest()).exit_code == exit_code::kInconsistent);

  json branches = json::parse(trace);
  branches["branches"][0]["family"] = "RC1";
  CHECK(run_replay(branches.dump(), manifest()).exit_code == exit_code::kInconsistent);

  CHECK(run_replay("not json", manifest()).exit_code == exit_code::kParse);
  CHECK(run_replay(R"({"schema":"other","version":1})", manifest()).exit_code == exit_code::kParse);
  CHECK(run_replay(R"({"schema":"phasealg.trace","version":1})", manifest()).exit_code == exit_code::kParse);
}

TEST_CASE("binary: exit codes") {
  const std::string dir = PHASEALG_SPEC_DIR;
  CHECK(run_binary("check " + dir + "/heisenberg.alg") == 0);
  CHECK(run_binary("check " + dir + "/generic.alg") == 1);
  CHECK(run_binary("solve " + dir + "/generic.alg --triples=xxp,xpp") == 0);
  CHECK(run_binary("solve " + temp_file("cubic.alg", kCubic)) == 3);
  CHECK(run_binary("check " + temp_file("bad.alg", "comm X P : i*delta(i,k)\n")) == 2);
  CHECK(run_binary("check /nonexistent.alg") == 2);
  CHECK(run_binary("frobnicate") == 2);
  CHECK(run_binary("solve " + dir + "/generic.alg --triples=abc") == 2);
  CHECK(run_binary("trace " + dir + "/rc1.alg --format=yaml") == 2);
  const std::string trace = temp_file("trace.json",
                                      run_trace(oracle::read_spec("rc1.alg"), "structured", all_triple_types(),
                                                manifest()).out);
  CHECK(run_binary("replay " + trace) == 0);
}
