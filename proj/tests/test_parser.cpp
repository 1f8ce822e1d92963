#include <doctest.h>

#include "phasealg/error.hpp"
#include "phasealg/spec_parser.hpp"
#include "support/oracles.hpp"

using namespace phasealg;

namespace {

std::string diagnostic(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e.code();
  }
  return "";
}

const char* kTables = "comm X P : i*delta(i,j)\ncomm X X : 0\ncomm P P : 0\n";

}  // namespace

TEST_CASE("parser: every bundled spec parses and round-trips") {
  for (const char* file : {"generic.alg", "isotropic.alg", "heisenberg.alg", "heisenberg_minus_delta.alg",
                           "rc1.alg", "rc2.alg", "central_theta.alg"}) {
    CAPTURE(file);
    const SpecDocument doc = parse_spec(oracle::read_spec(file));
    CHECK(parse_spec(render(doc)) == doc);
  }
}

TEST_CASE("parser: declarations") {
  const SpecDocument doc = parse_spec(oracle::read_spec("generic.alg"));
  CHECK(doc.dimension == 3);
  CHECK(doc.params.empty());
  REQUIRE(doc.tensors.size() == 8);
  CHECK(doc.tensors[0] == TensorDecl{"u", Symmetry::None, 3});
  CHECK(doc.tensors[2] == TensorDecl{"f", Symmetry::Antisym12, 3});
  CHECK(doc.tensors[6] == TensorDecl{"alpha", Symmetry::Antisym2, 2});
  CHECK(doc.spec().find_tensor("beta") != nullptr);
}

TEST_CASE("parser: tables are stored in canonical form") {
  const SpecDocument a = parse_spec(std::string("dimension 3\nparam g\ncomm X P : i*delta(j,i)\n") +
                                    "comm X X : i*g*eps(i,j,k)*P(k)\ncomm P P : 0\n");
  const SpecDocument b = parse_spec(std::string("param g # comment\n\ncomm P P : 0\n") +
                                    "comm X X : -i*g*eps(j,i,q)*P(q)\ncomm X P : i*delta(i,j)\n");
  CHECK(a == b);
  CHECK(render(a.comm_xx) == "i*g*eps(d1,i,j)*P(d1)");
}

TEST_CASE("parser: expressions with parentheses, powers and fractions") {
  SpecDocument doc;
  doc.params = {"a", "b"};
  CHECK(expr_equiv(parse_expression("(a + b)^2*X(i)", doc), parse_expression("a^2*X(i) + 2*a*b*X(i) + b^2*X(i)", doc)));
  CHECK(render(parse_expression("3/6*a", doc)) == "1/2*a");
  CHECK(render(parse_expression("-(X(i) - P(i))", doc)) == "-X(i) + P(i)");
}

TEST_CASE("parser: diagnostic codes") {
  CHECK(diagnostic(std::string("comm X P : i*delta(i,j) + $\ncomm X X : 0\ncomm P P : 0\n")) == diag::kSyntax);
  CHECK(diagnostic(std::string("comm X P : i*delta(i,j) + u*X(j)\ncomm X X : 0\ncomm P P : 0\n")) ==
        diag::kUndeclared);
  CHECK(diagnostic(std::string("comm X P : i*delta(i,j)\ncomm X X : delta(i,j)\ncomm P P : 0\n")) == diag::kAntisym);
  CHECK(diagnostic(std::string("comm X P : i*delta(i,k)\ncomm X X : 0\ncomm P P : 0\n")) == diag::kIndex);
  CHECK(diagnostic(std::string("comm X P : i*delta(i,4)*delta(j,1)\ncomm X X : 0\ncomm P P : 0\n")) == diag::kIndex);
  CHECK(diagnostic(std::string("comm X P : X(i)*P(j)\ncomm X X : 0\ncomm P P : 0\n")) == diag::kNonlinear);
  CHECK(diagnostic(std::string("param a a\n") + kTables) == diag::kDuplicate);
  CHECK(diagnostic(std::string(kTables) + "comm X X : 0\n") == diag::kDuplicate);
  CHECK(diagnostic("comm X P : i*delta(i,j)\ncomm X X : 0\n") == diag::kMissing);
  CHECK(diagnostic(std::string("dimension 2\n") + kTables) == diag::kDimension);
  CHECK(diagnostic(std::string("tensor w none 2\nparam w\n") + kTables) == diag::kDuplicate);
  CHECK(diagnostic(std::string("param eps\n") + kTables) == diag::kSyntax);
  CHECK(diagnostic(std::string("frobnicate\n") + kTables) == diag::kSyntax);
}

TEST_CASE("parser: diagnostics carry positions") {
  try {
    parse_spec("dimension 3\ncomm X P : i*delta(i,j) + $\ncomm X X : 0\ncomm P P : 0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 27);
    CHECK(std::string(e.what()).find("2:27: error[E-SYNTAX]") == 0);
  }
}

TEST_CASE("parser: polynomials") {
  CHECK(parse_polynomial("g*l - u*v") == ScalarPoly::variable("g") * ScalarPoly::variable("l") -
                                             ScalarPoly::variable("u") * ScalarPoly::variable("v"));
  CHECK(parse_polynomial("2*i") == ScalarPoly(GaussianRational(Rational(0), Rational(2))));
  CHECK_THROWS_AS(parse_polynomial("eps(1,2,3)"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("u +"), ParseError);
}
