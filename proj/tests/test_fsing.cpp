#include <random>

#include "charp/errors.hpp"
#include "charp/fsing.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace charp;
using charp::testing::P;
using charp::testing::random_poly;

namespace {

RingPtr surface_ring() { return make_ring(2, {"X", "Y", "Z", "W"}); }
const char* kSurface = "X^2+X*Y*Z*W+Y^3+Z^3+W^3";

// c * f^(q-1) by plain repeated multiplication, terms in the bracket power dropped.
Polynomial survivors_oracle(const Polynomial& f, const Polynomial& c, std::uint64_t q) {
  Polynomial full = c * pow_naive(f, q - 1);
  std::vector<Term> kept;
  for (const auto& t : full.terms()) {
    bool inside = true;
    for (std::size_t i = 0; i < f.ring().nvars(); ++i) inside = inside && t.mono[i] < q;
    if (inside) kept.push_back(t);
  }
  return Polynomial::from_terms(f.ring_ptr(), std::move(kept));
}

LinearChange random_change(const RingPtr& ring, std::mt19937_64& rng) {
  const std::size_t n = ring->nvars();
  for (;;) {
    std::vector<std::vector<Residue>> m(n, std::vector<Residue>(n));
    for (auto& row : m)
      for (auto& x : row) x = static_cast<Residue>(rng() % ring->modulus.value());
    if (matrix_rank(m, ring->modulus) == n) return LinearChange(ring, m);
  }
}

}  // namespace

TEST_SUITE("fsing") {

TEST_CASE("Fedder criterion examples") {
  auto ring = surface_ring();
  auto cert = fedder_certificate(P(ring, kSurface));
  REQUIRE(cert.has_value());
  CHECK(cert->witness == Monomial{1, 1, 1, 1});
  CHECK(verify_split_certificate(*cert));
  CHECK_FALSE(fedder_fpure(P(make_ring(2, {"X"}), "X^2")));
  CHECK(fedder_fpure(P(make_ring(3, {"X", "Y"}), "X^2+Y^2")));
  CHECK_FALSE(fedder_fpure(P(make_ring(3, {"X", "Y"}), "X^3+Y^3")));
  CHECK_FALSE(fedder_fpure(P(make_ring(5, {"X", "Y", "Z"}), "X^2+Y^3+Z^7")));
  CHECK(fedder_fpure(P(make_ring(7, {"X", "Y", "Z"}), "X^2+Y^3+Z^5")));
}

TEST_CASE("Fedder criterion is invariant under linear changes") {
  std::mt19937_64 rng(71);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto ring = make_ring(p, {"x", "y", "z"});
    for (int k = 0; k < 12; ++k) {
      Polynomial f = random_poly(ring, rng, 3, 3);
      f -= Polynomial::constant(ring, f.constant_term());
      if (f.is_zero()) continue;
      auto g = apply_linear_change(f, random_change(ring, rng), JetPrecision(f.max_degree() + 1));
      CHECK(fedder_fpure(f) == fedder_fpure(g));
    }
  }
}

TEST_CASE("pruned expansion agrees with full expansion") {
  std::mt19937_64 rng(72);
  for (std::uint32_t p : {2u, 3u}) {
    auto ring = make_ring(p, {"x", "y", "z"});
    for (unsigned e = 1; e <= 3; ++e) {
      FrobeniusExponent fe(ring->modulus, e);
      for (int k = 0; k < 6; ++k) {
        auto f = random_poly(ring, rng, 3, 3);
        auto c = random_poly(ring, rng, 2, 2);
        auto incremental = split_survivors(f, c, fe);
        auto full = split_survivors(f, c, fe, SplitOptions{false});
        CHECK(incremental == full);
        if (fe.q() <= 9) CHECK(incremental == survivors_oracle(f, c, fe.q()));
      }
    }
  }
}

TEST_CASE("splitting test examples") {
  auto ring = surface_ring();
  auto f = P(ring, kSurface);
  for (unsigned e = 1; e <= 4; ++e) {
    CHECK_FALSE(glassbrenner_split_test(f, P(ring, "X"), FrobeniusExponent(ring->modulus, e)).has_value());
  }
  auto r3 = make_ring(3, {"X0", "X1", "X2"});
  auto cone = P(r3, "X0^2+X1^2+X2^2");
  auto cert = glassbrenner_split_test(cone, P(r3, "X0"), FrobeniusExponent(r3->modulus, 3));
  REQUIRE(cert.has_value());
  CHECK(cert->witness == Monomial{25, 26, 2});
  CHECK(cert->coefficient == 2);
  CHECK(cert->regular_locus_basis == "unverified");
  CHECK(verify_split_certificate(*cert));
  auto forged = *cert;
  forged.coefficient = 1;
  CHECK_FALSE(verify_split_certificate(forged));

  auto power = P(make_ring(5, {"X0"}), "X0^5");
  CHECK_FALSE(glassbrenner_split_test(power, P(power.ring_ptr(), "1"), FrobeniusExponent(power.modulus(), 2)));
  CHECK_THROWS_AS(glassbrenner_split_test(cone, P(r3, "X0"), FrobeniusExponent(r3->modulus, 3), SplitOptions{true, 5}),
                  BudgetExceeded);
  CHECK_THROWS_AS(split_survivors(cone, P(r3, "1"), FrobeniusExponent(PrimeModulus(5), 1)), InputError);
}

TEST_CASE("power coefficients agree with expansion") {
  std::mt19937_64 rng(73);
  for (std::uint32_t p : {3u, 5u}) {
    auto ring = make_ring(p, {"x", "y", "z"});
    for (int k = 0; k < 10; ++k) {
      auto f = random_poly(ring, rng, 3, 2);
      auto c = random_poly(ring, rng, 2, 1);
      unsigned n = 1 + static_cast<unsigned>(rng() % 5);
      auto expanded = c * pow_naive(f, n);
      for (const auto& t : expanded.terms()) CHECK(power_coefficient(f, c, n, t.mono).first == t.coef);
      CHECK(power_coefficient(f, c, n, Monomial{9, 9, 9}).first == 0);
    }
  }
}

TEST_CASE("witness coefficient examples") {
  auto r3 = make_ring(3, {"X0", "X1", "X2"});
  auto spec = make_witness_spec(WitnessCase::quadratic, r3->modulus, 3, 2);
  CHECK(spec.target == Monomial{25, 26, 2});
  auto w = witness_coefficient(spec, witness_shape(r3, WitnessCase::quadratic, 2), P(r3, "X0"),
                               FrobeniusExponent(r3->modulus, 3));
  CHECK(w.enumerated == Residue{2});
  CHECK(w.closed_form == Residue{2});
  CHECK(w.assignments == 1);

  WitnessSpec single;
  single.target = Monomial{2, 2, 2};
  auto one = witness_coefficient(single, P(r3, "X0*X1*X2"), P(r3, "1"), FrobeniusExponent(r3->modulus, 1));
  CHECK(one.value() == 1);
  CHECK_FALSE(one.closed_form.has_value());

  auto r7 = make_ring(7, {"X0", "X1", "X2"});
  auto cs = make_witness_spec(WitnessCase::cubic_mixed, r7->modulus, 2, 2);
  CHECK(cs.alpha == 16);
  CHECK(cs.alpha + cs.beta == 25);
  auto cw = witness_coefficient(cs, witness_shape(r7, WitnessCase::cubic_mixed, 2), P(r7, "X0"),
                                FrobeniusExponent(r7->modulus, 2));
  CHECK(cw.value() != 0);
  CHECK(cw.agree());

  CHECK_THROWS_AS(make_witness_spec(WitnessCase::cubic_pure, r7->modulus, 3, 2), InputError);
  CHECK_THROWS_AS(make_witness_spec(WitnessCase::quadratic, PrimeModulus(2), 2, 2), PreconditionError);
  auto inside = make_witness_spec(WitnessCase::quadratic, r3->modulus, 1, 3);
  CHECK_THROWS_AS(witness_coefficient(inside, witness_shape(r3, WitnessCase::quadratic, 3), P(r3, "X0"),
                                      FrobeniusExponent(r3->modulus, 1)),
                  InputError);
}

TEST_CASE("closed forms agree with enumeration") {
  int compared = 0;
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto ring = make_ring(p, {"X0", "X1", "X2"});
    FrobeniusExponent fe1(ring->modulus, 1);
    for (unsigned e = 1; e <= 3; ++e) {
      FrobeniusExponent fe(ring->modulus, e);
      if (fe.q() > 343) continue;
      for (std::uint32_t m = 2; m < fe.q() && m <= 12; ++m) {
        auto spec = make_witness_spec(WitnessCase::quadratic, ring->modulus, e, m);
        auto w = witness_coefficient(spec, witness_shape(ring, WitnessCase::quadratic, m), P(ring, "X0"), fe);
        REQUIRE(w.enumerated.has_value());
        REQUIRE(w.closed_form.has_value());
        CHECK(*w.enumerated == *w.closed_form);
        ++compared;
      }
    }
    if (p <= 3) continue;
    FrobeniusExponent fe2(ring->modulus, 2);
    for (auto c : {WitnessCase::cubic_mixed, WitnessCase::cubic_pure}) {
      for (std::uint32_t m = 1; m <= 6; ++m) {
        auto spec = make_witness_spec(c, ring->modulus, 2, m);
        WitnessCoefficient w;
        try {
          w = witness_coefficient(spec, witness_shape(ring, c, m), P(ring, "X0"), fe2);
        } catch (const InputError&) {
          continue;  // target inside the bracket power
        }
        REQUIRE(w.closed_form.has_value());
        CHECK(w.enumerated == w.closed_form);
        CHECK(w.value() != 0);
        ++compared;
      }
    }
  }
  CHECK(compared > 30);
}

TEST_CASE("tight closure certificates") {
  auto r = make_ring(3, {"X", "Y"});
  auto one = P(r, "1");
  auto cert = tc_certificate(P(r, "Y"), IdealGens(r, {P(r, "Y^2")}), one, QuotientCtx::trivial(r), {3, 9}, true);
  CHECK(cert.verdict == TcVerdict::not_in_star);
  CHECK(cert.failing_q == std::uint64_t{3});
  CHECK(cert.checks.size() == 1);
  auto soft = tc_certificate(P(r, "Y"), IdealGens(r, {P(r, "Y^2")}), one, QuotientCtx::trivial(r), {3}, false);
  CHECK(soft.verdict == TcVerdict::inconclusive);
  CHECK_THROWS_AS(tc_certificate(P(r, "Y"), IdealGens(r), one, QuotientCtx::trivial(r), {}, true), InputError);
  CHECK_THROWS_AS(tc_certificate(P(r, "Y"), IdealGens(r), one, QuotientCtx::trivial(r), {6}, true), InputError);

  auto ring = surface_ring();
  auto ctx = QuotientCtx::hypersurface(P(ring, kSurface));
  IdealGens I(ring, {P(ring, "Y"), P(ring, "Z"), P(ring, "W")});
  auto in = tc_certificate(P(ring, "Y*Z+W"), I, P(ring, "X"), ctx, {2, 4, 8}, false);
  CHECK(in.verdict == TcVerdict::evidence_in_star);
  CHECK(in.q_checked == std::vector<std::uint64_t>{2, 4, 8});
}

TEST_CASE("tight closure in a polynomial ring is the ideal itself") {
  std::mt19937_64 rng(74);
  auto r = make_ring(3, {"x", "y"});
  for (int k = 0; k < 30; ++k) {
    std::vector<Monomial> gens;
    for (int i = 0; i < 2; ++i) gens.push_back(Monomial{static_cast<Exponent>(rng() % 4), static_cast<Exponent>(rng() % 4)});
    MonomialIdeal M(2, gens);
    Monomial z{static_cast<Exponent>(rng() % 4), static_cast<Exponent>(rng() % 4)};
    auto cert = tc_certificate(Polynomial::monomial(r, z), IdealGens::from_monomial(r, M), P(r, "1"),
                               QuotientCtx::trivial(r), {3, 9}, true);
    CHECK((cert.verdict == TcVerdict::evidence_in_star) == M.contains(z));
  }
}

TEST_CASE("Jacobian criterion examples") {
  auto ring = surface_ring();
  auto rep = jacobian_report(P(ring, kSurface), 8);
  CHECK(rep.isolated);
  CHECK(rep.min_power.size() == 4);
  CHECK(jacobian_isolated_singularity(P(make_ring(5, {"X", "Y"}), "X*Y"), 4));
  CHECK_FALSE(jacobian_isolated_singularity(P(make_ring(3, {"X", "Y"}), "X^3+Y^3"), 8));
  CHECK_FALSE(jacobian_isolated_singularity(P(make_ring(3, {"X", "Y"}), "X^2"), 8));
  auto smooth = jacobian_report(P(make_ring(7, {"X", "Y"}), "X+Y^2"), 2);
  CHECK(smooth.min_power[0] == std::uint64_t{1});
}

TEST_CASE("superficial element checks") {
  auto ring = make_ring(7, {"X0", "X1", "X2", "X3"});
  auto form = weierstrass_normalize_quadratic(P(ring, "X0^2+X1^2+X2^2+X3^5"), JetPrecision(8));
  for (std::size_t i = 0; i < 4; ++i) CHECK(superficial_check(form, i));
  auto cubic = weierstrass_normalize_quadratic(P(ring, "X0^2+X1^3+X2^4"), JetPrecision(8));
  CHECK_FALSE(superficial_check(cubic, 0));
  CHECK(superficial_check(cubic, 1));
  CHECK_THROWS_AS(superficial_check(form, 4), InputError);
}

TEST_CASE("classifier branches") {
  auto ring = make_ring(7, {"X0", "X1", "X2", "X3"});
  auto a = hypdeg2_classifier(P(ring, "X0^2+X1^2+X2^2+X3^5"), JetPrecision(10), 3);
  CHECK(a.branch == ClassifierBranch::case_i);
  CHECK(a.m_order == std::uint64_t{2});
  CHECK(a.split_status == SplitStatus::certificate);
  REQUIRE(a.certificate.has_value());
  CHECK(a.certificate->regular_locus_basis == "jacobian");
  CHECK(verify_split_certificate(*a.certificate));
  CHECK(a.warnings.empty());

  auto capped = hypdeg2_classifier(P(ring, "X0^2+X1^2+X2^3"), JetPrecision(10), 3);
  CHECK(capped.branch == ClassifierBranch::case_i);
  CHECK(capped.m_order == std::uint64_t{3});
  CHECK(capped.split_status == SplitStatus::beyond_ebudget);

  auto b = hypdeg2_classifier(P(ring, "X0^2+X1^4+X2^4"), JetPrecision(10), 3);
  CHECK(b.branch == ClassifierBranch::obstruction);
  CHECK(b.g_order == std::uint64_t{4});

  auto c = hypdeg2_classifier(P(ring, "3*X0^2+3*X1^2"), JetPrecision(10), 3);
  CHECK(c.branch == ClassifierBranch::not_normal_punctured);

  auto d = hypdeg2_classifier(P(ring, "X0^2+X1^3+X1*X2^2"), JetPrecision(10), 3);
  CHECK(d.branch == ClassifierBranch::case_ii);
  CHECK(d.m_order == std::uint64_t{2});
  CHECK(d.split_status == SplitStatus::certificate);

  auto e = hypdeg2_classifier(P(ring, "X0^2+X1^3+X1*X2^4+X2^6"), JetPrecision(10), 3);
  CHECK(e.branch == ClassifierBranch::outside_window);

  // a coordinate change hides the shape; the branch survives it
  auto mixed = hypdeg2_classifier(P(ring, "X0^2+X0*X1+X1^2+X2^2+X3^2+X2*X3"), JetPrecision(10), 3, 5);
  CHECK(mixed.branch == ClassifierBranch::case_i);
  CHECK(mixed.m_order == std::uint64_t{2});

  CHECK_FALSE(hypdeg2_classifier(P(make_ring(5, {"X0", "X1", "X2"}), "X0^2+X1^2+X2^2"), JetPrecision(8), 2)
                  .warnings.empty());
  CHECK_THROWS_AS(hypdeg2_classifier(P(make_ring(2, {"X0", "X1"}), "X0^2+X1^3"), JetPrecision(8), 2),
                  PreconditionError);
  CHECK_THROWS_AS(hypdeg2_classifier(P(ring, "X0^3+X1^3"), JetPrecision(8), 2), PreconditionError);
}

}  // TEST_SUITE
