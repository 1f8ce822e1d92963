#include <doctest.h>

#include "phasealg/components.hpp"
#include "phasealg/error.hpp"
#include "phasealg/spec_parser.hpp"
#include "phasealg/tensor_expr.hpp"
#include "support/oracles.hpp"

using namespace phasealg;

namespace {

SpecDocument declarations() {
  SpecDocument doc;
  doc.params = {"a", "b"};
  doc.tensors = {{"T", Symmetry::None, 3}, {"F", Symmetry::Antisym12, 3}, {"A", Symmetry::Antisym2, 2}};
  return doc;
}

TensorExpr E(const std::string& text) { return parse_expression(text, declarations()); }

}  // namespace

TEST_CASE("canonicalize: concrete symbols fold to numbers") {
  CHECK(canonicalize(E("delta(1,1)")) == TensorExpr::scalar(1));
  CHECK(canonicalize(E("delta(1,2)")).is_zero());
  CHECK(canonicalize(E("eps(2,1,3)")) == TensorExpr::scalar(-1));
  CHECK(canonicalize(E("eps(1,1,3)")).is_zero());
}

TEST_CASE("canonicalize: antisymmetric slots are sorted with a sign") {
  CHECK(expr_equiv(E("eps(j,i,k)"), E("-eps(i,j,k)")));
  CHECK(expr_equiv(E("A(j,i)"), E("-A(i,j)")));
  CHECK(expr_equiv(E("F(j,i,k)"), E("-F(i,j,k)")));
  CHECK_FALSE(expr_equiv(E("T(j,i,k)"), E("-T(i,j,k)")));
  CHECK(canonicalize(E("A(i,j) + A(j,i)")).is_zero());
  CHECK(canonicalize(E("eps(i,i,k)")).is_zero());
}

TEST_CASE("canonicalize: dummies are renamed deterministically") {
  const TensorExpr a = canonicalize(E("T(i,p,q)*A(p,q)"));
  const TensorExpr b = canonicalize(E("T(i,r,s)*A(r,s)"));
  CHECK(a == b);
  CHECK(render(a).find("d1") != std::string::npos);
  // a term equal to minus itself under a dummy swap vanishes
  CHECK(canonicalize(E("eps(i,p,q)*delta(p,q)")).is_zero());
  CHECK(simplify(E("A(p,q)*delta(p,q)")).is_zero());
}

TEST_CASE("canonicalize: like terms merge") {
  CHECK(canonicalize(E("a*X(i) + 2*a*X(i) - 3*a*X(i)")).is_zero());
  CHECK(render(canonicalize(E("X(i)*a + a*X(i)"))) == "2*a*X(i)");
}

TEST_CASE("contract_delta: dummy deltas are eliminated") {
  CHECK(contract_delta(E("delta(i,p)*X(p)")) == canonicalize(E("X(i)")));
  CHECK(simplify(E("delta(p,p)")) == TensorExpr::scalar(3));
  CHECK(simplify(E("delta(i,p)*delta(p,j)")) == canonicalize(E("delta(i,j)")));
  CHECK(simplify(E("eps(1,2,k)*P(k)")) == canonicalize(E("P(3)")));
}

TEST_CASE("reduce_eps_pair: single, double and full contractions") {
  CHECK(expr_equiv(reduce_eps_pair(E("eps(i,j,p)*eps(p,k,m)")),
                   E("delta(i,k)*delta(j,m) - delta(i,m)*delta(j,k)")));
  CHECK(expr_equiv(simplify(E("eps(i,p,q)*eps(j,p,q)")), E("2*delta(i,j)")));
  CHECK(simplify(E("eps(p,q,r)*eps(p,q,r)")) == TensorExpr::scalar(6));
}

TEST_CASE("reduce_eps_pair: agrees with brute force for every shared-slot placement") {
  const Components want = [] {
    Components c;
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k)
          for (int m = 1; m <= 3; ++m) {
            int s = 0;
            for (int l = 1; l <= 3; ++l) s += oracle::eps(i, j, l) * oracle::eps(l, k, m);
            if (s) c[{{{"i", i}, {"j", j}, {"k", k}, {"m", m}}, AtomKind::Id, 0}] = GaussianRational(s);
          }
    return c;
  }();
  const TensorExpr r = reduce_eps_pair(E("eps(i,j,p)*eps(p,k,m)"));
  CHECK(enumerate_components(r, std::map<std::string, GaussianRational>{}) == want);
}

TEST_CASE("expr_equiv: identities that need more than canonical form") {
  // the cyclic identity eps(i,j,k) X(m) is not reducible term-wise
  CHECK(expr_equiv(E("eps(i,j,k)*delta(m,1) - eps(j,k,m)*delta(i,1) + eps(k,m,i)*delta(j,1) - eps(m,i,j)*delta(k,1)"),
                   TensorExpr()));
  CHECK_THROWS_AS(expr_equiv(E("X(i)"), E("X(j)")), StructuralError);
  CHECK(equiv_up_to_scale(E("3*a*eps(i,j,k)"), E("-a*eps(j,i,k)")));
  CHECK_FALSE(equiv_up_to_scale(E("a*eps(i,j,k)"), E("b*eps(i,j,k)")));
}

TEST_CASE("index structure is validated") {
  CHECK_THROWS_AS(validate_indices(E("delta(p,p)") * TensorExpr::of(Factor::delta("p", "i"))),
                  StructuralError);
  Term bad{ScalarPoly(1), {Factor::delta("d1", "i")}, Atom::id()};
  CHECK_THROWS_AS(canonicalize(TensorExpr(bad)), StructuralError);
  CHECK_THROWS_AS(E("X(i)") * E("P(j)"), StructuralError);
  CHECK(free_labels(E("eps(i,p,q)*T(p,q,j)")) == std::vector<std::string>{"i", "j"});
}

TEST_CASE("relabel, substitution and atom maps") {
  CHECK(relabel(E("A(i,j)"), {{"i", Index("j")}, {"j", Index("i")}}) == E("A(j,i)"));
  CHECK(simplify(substitute_params(E("a*X(i) + b*P(i)"), {{"a", ScalarPoly(0)}})) ==
        canonicalize(E("b*P(i)")));
  const TensorExpr mapped = map_atoms(E("X(i) + 2*P(i) + a"), AtomKind::P, -1, AtomKind::X, +1);
  CHECK(expr_equiv(mapped, E("-P(i) + 2*X(i) + a")));
  FreshLabels fresh("_x");
  const TensorExpr f = freshen_dummies(E("eps(i,p,q)*A(p,q)"), fresh);
  CHECK(render(f).find("_x") != std::string::npos);
  CHECK(expr_equiv(f, E("eps(i,p,q)*A(p,q)")));
}

TEST_CASE("rendering is deterministic and parseable") {
  for (const char* text : {"i*a*eps(i,j,k)*X(k)", "delta(i,j) - 1/2*b*A(i,j)", "T(i,p,p)*P(j)", "0"}) {
    const TensorExpr e = simplify(E(text));
    CHECK(simplify(E(render(e))) == e);
  }
}
