#include <doctest.h>

#include "phasealg/components.hpp"
#include "phasealg/error.hpp"
#include "phasealg/spec_parser.hpp"
#include "support/oracles.hpp"

using namespace phasealg;

namespace {

SpecDocument declarations() {
  SpecDocument doc;
  doc.params = {"a"};
  doc.tensors = {{"T", Symmetry::None, 3}, {"A", Symmetry::Antisym2, 2}};
  return doc;
}

TensorExpr E(const std::string& text) { return parse_expression(text, declarations()); }

}  // namespace

TEST_CASE("enumerate_components: free labels and atoms form the key") {
  const Components c = enumerate_components(E("a*eps(i,j,k)*X(k)"), {{"a", GaussianRational(2)}});
  CHECK(c.size() == 6);
  const ComponentKey key{{{"i", 1}, {"j", 2}}, AtomKind::X, 3};
  CHECK(component(c, key) == GaussianRational(2));
  CHECK(component(c, {{{"i", 2}, {"j", 1}}, AtomKind::X, 3}) == GaussianRational(-2));
  CHECK(component(c, {{{"i", 1}, {"j", 1}}, AtomKind::X, 3}).is_zero());
  CHECK(render(key) == "{i=1,j=2} X(3)");
}

TEST_CASE("enumerate_components: dummies are summed explicitly") {
  Valuation v;
  oracle::RandomRationals rng(5);
  const auto t = oracle::random_tensor3(rng, false);
  oracle::store(v, "T", t);
  const Components c = enumerate_components(E("T(i,p,p)"), v);
  for (int i = 1; i <= 3; ++i) {
    Rational trace = t[i][1][1] + t[i][2][2] + t[i][3][3];
    CHECK(component(c, {{{"i", i}}, AtomKind::Id, 0}) == GaussianRational(trace));
  }
}

TEST_CASE("enumerate_components: unbound symbols are errors") {
  CHECK_THROWS_AS(enumerate_components(E("a*X(i)"), std::map<std::string, GaussianRational>{}),
                  EvaluationError);
  CHECK_THROWS_AS(enumerate_components(E("T(i,j,1)"), Valuation{}), EvaluationError);
  CHECK_THROWS_AS(enumerate_components(TensorExpr::of(Factor::rotation("i", "j")), Valuation{}),
                  EvaluationError);
}

TEST_CASE("enumerate_components: rotations read the supplied matrix") {
  Valuation v;
  v.rotation = oracle::quaternion_rotation(1, 1, 0, 0);  // quarter turn about axis 1
  const Components c = enumerate_components(TensorExpr::of(Factor::rotation("i", "j")), v);
  CHECK(component(c, {{{"i", 1}, {"j", 1}}, AtomKind::Id, 0}) == GaussianRational(1));
  CHECK(component(c, {{{"i", 2}, {"j", 3}}, AtomKind::Id, 0}) == GaussianRational(-1));
  CHECK(component(c, {{{"i", 3}, {"j", 2}}, AtomKind::Id, 0}) == GaussianRational(1));
}

TEST_CASE("symbolic_components: named entries become oriented variables") {
  const SymbolicComponents s = symbolic_components(E("A(j,i)"));
  const ComponentKey k12{{{"i", 1}, {"j", 2}}, AtomKind::Id, 0};
  CHECK(s.at(k12) == ScalarPoly::variable(component_variable("A", {1, 2})).scaled(-1));
  CHECK(component_variable("T", {1, 2, 3}) == "T[1,2,3]");
  CHECK(symbolic_components(E("A(i,i)")).empty());
}
