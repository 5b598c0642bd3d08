#include <random>

#include "charp/errors.hpp"
#include "charp/jet.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace charp;
using charp::testing::P;
using charp::testing::random_poly;

namespace {

LinearChange random_invertible(const RingPtr& ring, std::mt19937_64& rng) {
  const auto n = ring->nvars();
  for (;;) {
    std::vector<std::vector<Residue>> m(n, std::vector<Residue>(n));
    for (auto& row : m) {
      for (auto& x : row) x = static_cast<Residue>(rng() % ring->modulus.value());
    }
    if (matrix_rank(m, ring->modulus) == n) return LinearChange(ring, m);
  }
}

}  // namespace

TEST_SUITE("jet") {

TEST_CASE("linear changes") {
  auto ring = make_ring(5, {"X0", "X1"});
  JetPrecision D(12);
  auto f = P(ring, "X0^2+3*X0*X1^4+X1");
  CHECK(apply_linear_change(f, LinearChange(ring), D) == f);

  LinearChange swap(ring, {{0, 1}, {1, 0}});
  CHECK(apply_linear_change(P(ring, "X0^2"), swap, D) == P(ring, "X1^2"));

  // X1 -> X0 + X1
  LinearChange shear(ring, {{1, 0}, {1, 1}});
  CHECK(apply_linear_change(P(ring, "X0*X1"), shear, D) == P(ring, "X0^2+X0*X1"));

  CHECK_THROWS_AS(LinearChange(ring, {{1, 2}, {2, 4}}), InputError);
  CHECK_THROWS_AS(LinearChange(ring, {{1, 0}}), InputError);
  CHECK_THROWS_AS(LinearChange::from_images(ring, {P(ring, "X0+1"), P(ring, "X1")}), InputError);

  // degree-one parts of images land in the matrix
  auto c = LinearChange::from_images(ring, {P(ring, "X0+X1^2"), P(ring, "2*X1")});
  CHECK(c.matrix() == std::vector<std::vector<Residue>>{{1, 0}, {0, 2}});
  CHECK(c.shifts()[0] == P(ring, "X1^2"));
  CHECK_FALSE(c.is_linear());
}

TEST_CASE("pure linear changes preserve order") {
  std::mt19937_64 rng(31);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    auto ring = make_ring(p, {"a", "b", "c"});
    for (int k = 0; k < 40; ++k) {
      auto f = random_poly(ring, rng, 6, 5);
      if (f.is_zero()) continue;
      auto change = random_invertible(ring, rng);
      CHECK(ord(apply_linear_change(f, change, JetPrecision(64))) == ord(f));
    }
  }
}

TEST_CASE("composition of changes") {
  std::mt19937_64 rng(8);
  auto ring = make_ring(7, {"a", "b", "c"});
  for (int k = 0; k < 10; ++k) {
    auto f = random_poly(ring, rng, 5, 4);
    auto c1 = random_invertible(ring, rng), c2 = random_invertible(ring, rng);
    JetPrecision D(30);
    CHECK(apply_linear_change(apply_linear_change(f, c1, D), c2, D) ==
          apply_linear_change(f, c1.then(c2, D.D), D));
  }
}

TEST_CASE("inverse jets") {
  auto ring = make_ring(7, {"x", "y"});
  auto u = P(ring, "3+x+2*x*y+y^3");
  auto inv = inverse_jet(u, 10);
  CHECK(mul_truncated(u, inv, 10) == P(ring, "1"));
  CHECK_THROWS_AS(inverse_jet(P(ring, "x"), 5), PreconditionError);
}

TEST_CASE("quadratic normalization examples") {
  auto ring = make_ring(5, {"X0", "X1"});
  JetPrecision D(8);

  auto sq = weierstrass_normalize_quadratic(P(ring, "X0^2"), D);
  CHECK(sq.g_rest.is_zero());
  CHECK(sq.change.is_identity());
  CHECK(sq.case_tag == JetCase::ord_ge4);

  auto cusp = weierstrass_normalize_quadratic(P(ring, "X0^2+X1^3"), D);
  CHECK(cusp.g_rest == P(ring, "X1^3"));
  CHECK(cusp.change.is_identity());
  CHECK(cusp.unit == P(ring, "1"));
  CHECK(cusp.case_tag == JetCase::ord3);

  auto node = weierstrass_normalize_quadratic(P(ring, "X0*X1"), D, 42);
  CHECK(node.attempts > 0);
  CHECK(normalization_defect_degree(node) >= 8);
  CHECK(node.case_tag == JetCase::ord2);
  for (const auto& t : node.g_rest.terms()) CHECK(t.mono[0] == 0);

  // deterministic for a fixed seed
  auto again = weierstrass_normalize_quadratic(P(ring, "X0*X1"), D, 42);
  CHECK(again.g_rest == node.g_rest);
  CHECK(again.change.matrix() == node.change.matrix());

  CHECK_THROWS_AS(weierstrass_normalize_quadratic(P(make_ring(2, {"X0", "X1"}), "X0^2"), D),
                  UnsupportedCharacteristic);
  CHECK_THROWS_AS(weierstrass_normalize_quadratic(P(ring, "X0^3+X1^3"), D), PreconditionError);
  CHECK_THROWS_AS(weierstrass_normalize_quadratic(Polynomial(ring), D), PreconditionError);
}

TEST_CASE("normalization soundness on random order-two jets") {
  std::mt19937_64 rng(101);
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    auto ring = make_ring(p, {"X0", "X1", "X2"});
    for (int k = 0; k < 25; ++k) {
      auto f = random_poly(ring, rng, 4, 2).homogeneous_part(2) + random_poly(ring, rng, 6, 6);
      f = f - f.truncated(2);  // remove constant and linear terms
      if (f.is_zero() || ord(f) != 2) continue;
      JetPrecision D(4 + static_cast<std::uint32_t>(rng() % 6));
      auto form = weierstrass_normalize_quadratic(f, D, rng());
      CHECK(normalization_defect_degree(form) >= D.D);
      CHECK(form.unit.constant_term() != 0);
      for (const auto& t : form.g_rest.terms()) {
        CHECK(t.mono[0] == 0);
        CHECK(t.mono.degree() < D.D);
      }
    }
  }
}

TEST_CASE("cubic depression") {
  auto ring = make_ring(7, {"X0", "X1", "X2"});
  JetPrecision D(8);

  auto plain = depress_cubic(P(ring, "X1^3"), D);
  CHECK(plain.unit == P(ring, "1"));
  CHECK(plain.h1.is_zero());
  CHECK(plain.h2.is_zero());

  auto depressed = depress_cubic(P(ring, "X1^3+X1*X2^2"), D);
  CHECK(depressed.h1 == P(ring, "X2^2"));
  CHECK(depressed.h2.is_zero());
  CHECK(depressed.change.is_identity());

  auto g = P(ring, "X1^3+3*X1^2*X2");
  auto shifted = depress_cubic(g, D);
  // X1 -> X1 - X2 gives X1^3 - 3 X1 X2^2 + 2 X2^3
  CHECK(shifted.change.matrix()[1] == std::vector<Residue>{0, 1, 6});
  CHECK(shifted.h1 == P(ring, "4*X2^2"));
  CHECK(shifted.h2 == P(ring, "2*X2^3"));
  CHECK(cubic_defect_degree(g, shifted) >= 8);

  CHECK_THROWS_AS(depress_cubic(P(make_ring(3, {"X0", "X1"}), "X1^3"), D), UnsupportedCharacteristic);
  CHECK_THROWS_AS(depress_cubic(P(ring, "X1^2"), D), PreconditionError);
  CHECK_THROWS_AS(depress_cubic(P(ring, "X0*X1^2+X1^3"), D), PreconditionError);
}

TEST_CASE("cubic depression soundness on random jets") {
  std::mt19937_64 rng(77);
  for (std::uint32_t p : {5u, 7u, 13u}) {
    auto ring = make_ring(p, {"X0", "X1", "X2", "X3"});
    for (int k = 0; k < 15; ++k) {
      std::vector<Term> terms;
      for (const auto& t : (random_poly(ring, rng, 4, 3).homogeneous_part(3) + random_poly(ring, rng, 5, 7)).terms()) {
        if (t.mono[0] == 0 && t.mono.degree() >= 3) terms.push_back(t);
      }
      auto g = Polynomial::from_terms(ring, terms);
      if (g.is_zero() || ord(g) != 3) continue;
      auto form = depress_cubic(g, JetPrecision(9), rng());
      CHECK(cubic_defect_degree(g, form) >= 9);
      for (const auto& t : form.h1.terms()) CHECK((t.mono[0] == 0 && t.mono[1] == 0));
      for (const auto& t : form.h2.terms()) CHECK((t.mono[0] == 0 && t.mono[1] == 0));
      if (!form.h1.is_zero()) CHECK(ord(form.h1) >= 2);
      if (!form.h2.is_zero()) CHECK(ord(form.h2) >= 3);
    }
  }
}

}  // TEST_SUITE
