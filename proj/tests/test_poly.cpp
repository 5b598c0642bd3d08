#include <random>

#include "charp/errors.hpp"
#include "charp/poly.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace charp;
using charp::testing::DensePoly;
using charp::testing::P;
using charp::testing::random_poly;

TEST_SUITE("poly") {

TEST_CASE("monomial orders") {
  Monomial a{2, 0, 0}, b{1, 1, 1}, c{0, 3, 0};
  CHECK(compare(MonomialOrder::lex, a, b) > 0);
  CHECK(compare(MonomialOrder::grevlex, b, a) > 0);  // higher degree first
  CHECK(compare(MonomialOrder::grevlex, Monomial{1, 1, 0}, Monomial{1, 0, 1}) > 0);
  CHECK(compare(MonomialOrder::lex, c, c) == 0);
  // multiplicative compatibility on random triples
  std::mt19937_64 rng(3);
  for (int k = 0; k < 500; ++k) {
    Monomial x{Exponent(rng() % 5), Exponent(rng() % 5), Exponent(rng() % 5)};
    Monomial y{Exponent(rng() % 5), Exponent(rng() % 5), Exponent(rng() % 5)};
    Monomial z{Exponent(rng() % 5), Exponent(rng() % 5), Exponent(rng() % 5)};
    for (auto order : {MonomialOrder::lex, MonomialOrder::grevlex}) {
      CHECK(compare(order, x, y) == compare(order, x * z, y * z));
      if (!z.is_one()) CHECK(compare(order, x * z, x) > 0);
    }
  }
}

TEST_CASE("characteristic-p binomial expansion") {
  auto ring = make_ring(3, {"x", "y"});
  CHECK(pow(P(ring, "x+y"), 3) == P(ring, "x^3+y^3"));
  CHECK(pow_naive(P(ring, "x+y"), 3) == P(ring, "x^3+y^3"));
  CHECK(P(ring, "x+y") * Polynomial(ring) == Polynomial(ring));
  CHECK(pow(P(ring, "x+2*y"), 0) == P(ring, "1"));
}

TEST_CASE("squaring in characteristic 2 is termwise") {
  auto ring = make_ring(2, {"X", "Y", "Z", "W"});
  auto f = P(ring, "X^2+X*Y*Z*W+Y^3+Z^3+W^3");
  auto expected = P(ring, "X^4+X^2*Y^2*Z^2*W^2+Y^6+Z^6+W^6");
  CHECK(f * f == expected);
  CHECK(pow(f, 2) == expected);
  CHECK(frobenius_power(f, 2) == expected);
  CHECK_THROWS_AS(frobenius_power(f, 6), InputError);
}

TEST_CASE("ring laws against dense arithmetic") {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      std::vector<std::string> names{"a", "b", "c"};
      names.resize(n);
      auto ring = make_ring(p, names, rng() % 2 ? MonomialOrder::lex : MonomialOrder::grevlex);
      for (int k = 0; k < 15; ++k) {
        auto f = random_poly(ring, rng, 5, 2), g = random_poly(ring, rng, 5, 2), h = random_poly(ring, rng, 5, 2);
        const std::uint32_t side = 7;
        CHECK(DensePoly::from(f * g, side) == DensePoly::from(f, side) * DensePoly::from(g, side));
        CHECK(DensePoly::from(f + g, side) == DensePoly::from(f, side) + DensePoly::from(g, side));
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK(f * g == g * f);
        CHECK(f - f == Polynomial(ring));
        CHECK(DensePoly::from(f * g * h, side) ==
              DensePoly::from(f, side) * DensePoly::from(g, side) * DensePoly::from(h, side));
      }
    }
  }
}

TEST_CASE("frobenius fast path equals repeated multiplication") {
  std::mt19937_64 rng(23);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto ring = make_ring(p, {"x", "y", "z"});
    for (int k = 0; k < 20; ++k) {
      auto f = random_poly(ring, rng, 4, 4);
      CHECK(pow(f, p) == pow_naive(f, p));
      CHECK(frobenius_power(f, p) == pow_naive(f, p));
      std::uint64_t n = rng() % 12;
      CHECK(pow(f, n) == pow_naive(f, n));
    }
  }
}

TEST_CASE("order and initial form") {
  auto ring = make_ring(7, {"X0", "X1", "X2"});
  CHECK(ord(P(ring, "X0^2+X1^3")) == 2);
  CHECK(ord(P(ring, "X1*X2+X1^5")) == 2);
  CHECK_THROWS_AS(ord(Polynomial(ring)), PreconditionError);
  CHECK(initial_form(P(ring, "X0^2+X1^3")) == P(ring, "X0^2"));
  CHECK(initial_form(P(ring, "X0^2+X1*X2+X1^4")) == P(ring, "X0^2+X1*X2"));
  CHECK_THROWS_AS(initial_form(Polynomial(ring)), PreconditionError);

  auto r2 = make_ring(2, {"X", "Y", "Z", "W"});
  auto f = P(r2, "X^2+X*Y*Z*W+Y^3+Z^3+W^3");
  CHECK(ord(f) == 2);
  CHECK(initial_form(f) == P(r2, "X^2"));
}

TEST_CASE("partial derivatives") {
  auto r7 = make_ring(7, {"X0", "X1"});
  CHECK(derivative(P(r7, "X0^2"), 0) == P(r7, "2*X0"));
  CHECK(derivative(P(r7, "X0^7+X1"), 0).is_zero());
  auto r2 = make_ring(2, {"X", "Y"});
  CHECK(derivative(P(r2, "X^2"), 0).is_zero());

  auto r = make_ring(2, {"X", "Y", "Z", "W"});
  auto parts = partials(P(r, "X^2+X*Y*Z*W+Y^3+Z^3+W^3"));
  REQUIRE(parts.size() == 4);
  // d/dX (X^2 + XYZW) = 2X + YZW = YZW in characteristic 2
  CHECK(parts[0] == P(r, "Y*Z*W"));
  CHECK(parts[1] == P(r, "X*Z*W+Y^2"));
  CHECK(parts[2] == P(r, "X*Y*W+Z^2"));
  CHECK(parts[3] == P(r, "X*Y*Z+W^2"));
}

TEST_CASE("mixed contexts are rejected") {
  auto a = make_ring(5, {"x", "y"});
  auto b = make_ring(7, {"x", "y"});
  auto c = make_ring(5, {"x", "y"}, MonomialOrder::lex);
  CHECK_THROWS_AS(P(a, "x") + P(b, "x"), InputError);
  CHECK_THROWS_AS(P(a, "x") * P(c, "x"), InputError);
  // structurally equal rings interoperate
  CHECK_NOTHROW(P(a, "x") + P(make_ring(5, {"x", "y"}), "y"));
  CHECK(P(a, "x+y").in_order(MonomialOrder::lex) == P(c, "x+y"));
}

TEST_CASE("substitution and truncation") {
  auto ring = make_ring(5, {"x", "y"});
  std::vector<Polynomial> imgs{P(ring, "x+y"), P(ring, "y")};
  CHECK(substitute(P(ring, "x*y"), imgs) == P(ring, "x*y+y^2"));
  CHECK(substitute(P(ring, "x^3"), imgs, 3).is_zero());
  CHECK(P(ring, "1+x+x^2+x^3").truncated(2) == P(ring, "1+x"));
  CHECK(mul_truncated(P(ring, "1+x"), P(ring, "1+y"), 2) == P(ring, "1+x+y"));
}

TEST_CASE("variable limits") {
  std::vector<std::string> many;
  for (std::size_t i = 0; i <= kMaxVars; ++i) many.push_back("v" + std::to_string(i));
  CHECK_THROWS_AS(make_ring(5, many), InputError);
  CHECK_THROWS_AS(make_ring(5, {"x", "x"}), InputError);
  CHECK_THROWS_AS(make_ring(5, {"1x"}), InputError);
  CHECK_THROWS_AS(make_ring(4, {"x"}), InputError);
}

}  // TEST_SUITE
