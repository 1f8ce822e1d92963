#include <doctest.h>

#include "phasealg/error.hpp"
#include "phasealg/gaussian_rational.hpp"
#include "phasealg/scalar_poly.hpp"
#include "phasealg/spec_parser.hpp"
#include "support/oracles.hpp"

using namespace phasealg;

TEST_CASE("gaussian rationals: field arithmetic is exact") {
  const GaussianRational a(make_rational(1, 2), make_rational(-3, 4));
  const GaussianRational b(make_rational(2, 3), Rational(1));
  const GaussianRational i = GaussianRational::imaginary_unit();
  CHECK(i * i == GaussianRational(-1));
  CHECK((a * b) / b == a);
  CHECK(a - a == GaussianRational());
  CHECK((a * a.conj()).is_real());
  CHECK((a + b).re() == make_rational(7, 6));
  CHECK_THROWS(a / GaussianRational());
}

TEST_CASE("gaussian rationals: rendering") {
  CHECK(GaussianRational(3).to_string() == "3");
  CHECK(GaussianRational(make_rational(-1, 2)).to_string() == "-1/2");
  CHECK(GaussianRational::imaginary_unit().to_string() == "i");
  CHECK(GaussianRational(Rational(0), Rational(-2)).to_string() == "-2*i");
  CHECK(GaussianRational(Rational(1), Rational(2)).to_string() == "(1+2*i)");
}

TEST_CASE("gaussian rationals: ring axioms on random samples") {
  oracle::RandomRationals rng(3);
  for (int n = 0; n < 200; ++n) {
    const GaussianRational a(rng.next(), rng.next()), b(rng.next(), rng.next()), c(rng.next(), rng.next());
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("polynomials: arithmetic and normal form") {
  const ScalarPoly u = ScalarPoly::variable("u"), v = ScalarPoly::variable("v");
  const ScalarPoly p = (u + v) * (u - v);
  CHECK(p == u * u - v * v);
  CHECK(p.degree() == 2);
  CHECK(p.variables() == std::set<std::string>{"u", "v"});
  CHECK((p - p).is_zero());
  CHECK(ScalarPoly(5).is_constant());
  CHECK(p.to_string() == "u^2 - v^2");
  CHECK((u * v.scaled(3) - ScalarPoly(2)).to_string() == "3*u*v - 2");
  CHECK(p.scaled(-4).normalized() == p);
  CHECK(p.proportional_to(p.scaled(GaussianRational::imaginary_unit())));
  CHECK_FALSE(p.proportional_to(u * u));
}

TEST_CASE("polynomials: substitution and evaluation") {
  const ScalarPoly u = ScalarPoly::variable("u"), g = ScalarPoly::variable("g");
  const ScalarPoly p = g * u - u * u;
  CHECK(p.substitute({{"u", ScalarPoly(0)}}).is_zero());
  CHECK(p.substitute({{"g", u}}).is_zero());
  CHECK(p.evaluate({{"u", GaussianRational(2)}, {"g", GaussianRational(5)}}) == GaussianRational(6));
  CHECK_THROWS_AS(p.evaluate({{"u", GaussianRational(2)}}), EvaluationError);
  CHECK(p.coefficient_of("u", 1) == g);
}

TEST_CASE("polynomials: text round trip through the parser") {
  for (const char* text : {"f - 2*v", "g*l - u*v", "v^2 - 3*g*u", "1/2*m + i*u", "-3*g"}) {
    const ScalarPoly p = parse_polynomial(text);
    CHECK(parse_polynomial(p.to_string()) == p);
  }
  CHECK(parse_polynomial("(u + v)^2") == parse_polynomial("u^2 + 2*u*v + v^2"));
}
