#include <doctest.h>

#include "support.hpp"

using namespace segre;
using namespace segre::test;

TEST_CASE("rational parsing and formatting") {
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(parse_rational("-5")) == "-5/1");
  CHECK(format_rational(parse_rational("0/7")) == "0/1");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("gaussian scalars") {
  const GaussianScalar a = gq(1, 2, -3, 4), b = gq(2, 3, 5, 1);
  CHECK(conj(conj(a)) == a);
  CHECK(conj(a * b) == conj(a) * conj(b));
  CHECK(norm2(a) == Rational(13, 16));
  CHECK((a / b) * b == a);
  CHECK(GaussianScalar::i() * GaussianScalar::i() == gs(-1));
}

TEST_CASE("add examples") {
  CHECK((z() + xi()) + (-z()) == xi());
  CHECK(Poly() + z() == z());
  CHECK(gs(2) * mul(z(), z(), 4) + gs(3) * mul(z(), z(), 4) == gs(5) * mul(z(), z(), 4));
  const Poly a(3), b(5);
  CHECK(*(a + b).trunc() == 3);
}

TEST_CASE("mul examples") {
  CHECK(mul(z(), xi(), 2) == P({{{1, 1, 0}, gs(1)}}));
  CHECK(mul(mul(z(), z(), 9), mul(xi(), xi(), 9), 3).is_zero());
  const Poly one_nu = Poly::constant(gs(1)) + nu();
  CHECK(mul(one_nu, one_nu, 2) == P({{{0, 0, 0}, gs(1)}, {{0, 0, 1}, gs(2)}, {{0, 0, 2}, gs(1)}}));
}

TEST_CASE("substitute examples") {
  const Poly nu2 = mul(nu(), nu(), 9);
  Substitution s;
  s[2] = nu() + pow(z(), 3, 9);
  CHECK(substitute(nu2, s, 4) == P({{{0, 0, 2}, gs(1)}, {{3, 0, 1}, gs(2)}}));
  const Poly L = P({{{2, 1, 0}, gs(1)}, {{1, 2, 0}, gs(1)}});
  CHECK(substitute(L, {z(), xi(), std::nullopt}, 5) == L);
  Substitution s2;
  s2[0] = z() + mul(z(), z(), 9);
  CHECK(substitute(mul(z(), xi(), 9), s2, 3) == P({{{1, 1, 0}, gs(1)}, {{2, 1, 0}, gs(1)}}));
  Substitution bad;
  bad[0] = Poly::constant(gs(1)) + z();
  CHECK_THROWS_AS(substitute(Poly(4) + z(), bad, 4), NonNilpotentSubstitution);
  CHECK_NOTHROW(substitute(z(), bad, 4));
}

TEST_CASE("homogeneous components and derivatives") {
  const Poly a = nu() + P({{{2, 1, 0}, gs(1)}});
  CHECK(homogeneous_component(a, 3).poly() == P({{{2, 1, 0}, gs(1)}}));
  CHECK(homogeneous_component(a, 2).is_zero());
  CHECK(partial_derivative(P({{{2, 1, 0}, gs(1)}}), Var::z) == P({{{1, 1, 0}, gs(2)}}));
  CHECK(partial_derivative(partial_derivative(P({{{2, 1, 0}, gs(1)}}), Var::z), Var::xi) == P({{{1, 0, 0}, gs(2)}}));
  CHECK(partial_derivative(mul(z(), z(), 2), Var::nu).is_zero());
  CHECK_THROWS_AS(HomogeneousPoly(z() + nu() + mul(z(), z(), 2)), std::invalid_argument);
}

TEST_CASE("monomial basis order") {
  const auto b = monomial_basis(2);
  REQUIRE(b.size() == 6);
  CHECK(b[0] == Monomial{2, 0, 0});
  CHECK(b[1] == Monomial{1, 1, 0});
  CHECK(b[5] == Monomial{0, 0, 2});
  for (std::size_t i = 1; i < b.size(); ++i) CHECK(GradedLex{}(b[i - 1], b[i]));
}

TEST_CASE("ring laws and substitution homomorphism on seeded polynomials") {
  std::mt19937_64 rng(7);
  const int D = 5;
  for (int trial = 0; trial < 25; ++trial) {
    const Poly a = random_poly(rng, 0, 3), b = random_poly(rng, 0, 3), c = random_poly(rng, 0, 3);
    CHECK(mul(mul(a, b, D), c, D) == mul(a, mul(b, c, D), D));
    CHECK(mul(a, b, D) == mul(b, a, D));
    CHECK(mul(a, b + c, D) == mul(a, b, D) + mul(a, c, D));
    Substitution s;
    s[0] = random_poly(rng, 1, 2);
    s[2] = random_poly(rng, 1, 2);
    CHECK(substitute(mul(a, b, D), s, D) == mul(substitute(a, s, D), substitute(b, s, D), D));
    Poly sum;
    for (int d = 0; d <= 3; ++d) sum += homogeneous_component(a, d).poly();
    CHECK(sum == a);
  }
}
