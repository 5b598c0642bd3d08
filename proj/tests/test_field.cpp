#include <algorithm>
#include <array>
#include <random>

#include "charp/errors.hpp"
#include "charp/field.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace charp;
using charp::testing::big_binomial;
using charp::testing::BigInt;

TEST_SUITE("field") {

TEST_CASE("prime modulus validation") {
  CHECK_NOTHROW(PrimeModulus(2));
  CHECK_NOTHROW(PrimeModulus(2147483647));  // 2^31 - 1
  CHECK_THROWS_AS(PrimeModulus(0), InputError);
  CHECK_THROWS_AS(PrimeModulus(1), InputError);
  CHECK_THROWS_AS(PrimeModulus(91), InputError);
  CHECK_THROWS_AS(PrimeModulus(2147483648ull), InputError);
  // strong pseudoprimes to several small bases
  CHECK_FALSE(is_prime_u32(3215031751ull));
  CHECK_FALSE(is_prime_u32(25326001));
  for (std::uint64_t n = 0; n < 2000; ++n) {
    bool trial = n >= 2;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) trial = false;
    }
    CHECK(is_prime_u32(n) == trial);
  }
}

TEST_CASE("modular arithmetic") {
  PrimeModulus p(7);
  CHECK(p.reduce(-1) == 6);
  CHECK(p.mul(3, 5) == 1);
  CHECK(p.inv(3) == 5);
  CHECK(p.pow(3, 6) == 1);
  CHECK_THROWS_AS(p.inv(0), InputError);
}

TEST_CASE("frobenius exponent") {
  PrimeModulus p(3);
  CHECK(FrobeniusExponent(p, 0).q() == 1);
  CHECK(FrobeniusExponent(p, 3).q() == 27);
  CHECK(FrobeniusExponent::from_q(p, 81).e() == 4);
  CHECK_THROWS_AS(FrobeniusExponent::from_q(p, 12), InputError);
  CHECK_THROWS_AS(FrobeniusExponent::from_q(p, 0), InputError);
  CHECK_NOTHROW(FrobeniusExponent(PrimeModulus(2), 61));
  CHECK_THROWS_AS(FrobeniusExponent(PrimeModulus(2), 62), InputError);
  CHECK_THROWS_AS(FrobeniusExponent(PrimeModulus(13), 20), InputError);
}

TEST_CASE("base-p digits") {
  CHECK(base_p_digits(0, PrimeModulus(5)).digits.empty());
  CHECK(base_p_digits(26, PrimeModulus(3)).digits == std::vector<std::uint32_t>{2, 2, 2});
  CHECK(base_p_digits(25, PrimeModulus(7)).digits == std::vector<std::uint32_t>{4, 3});
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 65537u}) {
    for (int k = 0; k < 200; ++k) {
      std::uint64_t n = rng() >> (rng() % 60);
      auto d = base_p_digits(n, PrimeModulus(p));
      CHECK(d.value() == n);
      if (!d.digits.empty()) CHECK(d.digits.back() != 0);
    }
  }
}

TEST_CASE("binomial coefficients mod p") {
  CHECK(binom_mod_p(5, 2, PrimeModulus(5)) == 0);
  CHECK(binom_mod_p(25, 16, PrimeModulus(7)) == 4);
  CHECK(big_binomial(25, 16) == 2042975);
  CHECK(binom_mod_p(3, 5, PrimeModulus(7)) == 0);
  for (std::uint64_t m : {0ull, 1ull, 17ull, 1000000007ull}) CHECK(binom_mod_p(m, 0, PrimeModulus(11)) == 1);
}

TEST_CASE("binomials agree with exact integers") {
  // Pascal rows in exact arithmetic, reduced through 30030 = 2*3*5*7*11*13.
  const std::array<std::uint32_t, 6> primes{2, 3, 5, 7, 11, 13};
  std::vector<BigInt> row{1};
  std::size_t mismatches = 0;
  for (std::uint64_t m = 0; m <= 320; ++m) {
    for (std::uint64_t n = 0; n <= m; ++n) {
      auto small = static_cast<std::uint32_t>(row[n] % 30030);
      for (auto p : primes) {
        if (binom_mod_p(m, n, PrimeModulus(p)) != small % p) ++mismatches;
      }
    }
    std::vector<BigInt> next(row.size() + 1);
    next[0] = 1;
    next[row.size()] = 1;
    for (std::size_t i = 1; i < row.size(); ++i) next[i] = row[i - 1] + row[i];
    row.swap(next);
  }
  CHECK(mismatches == 0);
}

TEST_CASE("binomials agree with Pascal's rule up to 2200") {
  // Pascal's recurrence is a ring identity, so running it modulo 30030 is exact.
  const std::array<std::uint32_t, 6> primes{2, 3, 5, 7, 11, 13};
  std::vector<std::uint32_t> row{1};
  std::size_t mismatches = 0;
  for (std::uint64_t m = 0; m <= 2200; ++m) {
    for (std::uint64_t n = 0; n <= m; ++n) {
      for (auto p : primes) {
        if (binom_mod_p(m, n, PrimeModulus(p)) != row[n] % p) ++mismatches;
      }
    }
    for (std::uint64_t n = 2201; n <= 2210 && m > 2190; ++n) {
      if (binom_mod_p(m, n, PrimeModulus(13)) != 0) ++mismatches;
    }
    std::vector<std::uint32_t> next(row.size() + 1);
    next[0] = next[row.size()] = 1;
    for (std::size_t i = 1; i < row.size(); ++i) next[i] = (row[i - 1] + row[i]) % 30030;
    row.swap(next);
  }
  CHECK(mismatches == 0);
}

TEST_CASE("Lucas digit criterion") {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    PrimeModulus mod(p);
    for (int k = 0; k < 2000; ++k) {
      std::uint64_t m = rng() % 100000, n = rng() % 100000;
      auto dm = base_p_digits(m, mod).digits, dn = base_p_digits(n, mod).digits;
      bool dominated = dn.size() <= dm.size();
      for (std::size_t i = 0; dominated && i < dn.size(); ++i) dominated = dn[i] <= dm[i];
      CHECK((binom_mod_p(m, n, mod) != 0) == dominated);
    }
  }
}

TEST_CASE("multinomials") {
  const std::vector<std::uint64_t> parts{12, 13, 1};
  CHECK(multinom_mod_p(26, parts, PrimeModulus(3)) == 2);
  // 26!/(12! 13! 1!) = C(26,12) * 14
  CHECK(static_cast<std::uint32_t>(big_binomial(26, 12) * 14 % 3) == 2);
  const std::vector<std::uint64_t> single{81};
  CHECK(multinom_mod_p(81, single, PrimeModulus(3)) == 1);
  const std::vector<std::uint64_t> halves{2, 2};
  CHECK(multinom_mod_p(4, halves, PrimeModulus(2)) == 0);
  const std::vector<std::uint64_t> bad{1, 2};
  CHECK_THROWS_AS(multinom_mod_p(4, bad, PrimeModulus(2)), InputError);

  std::mt19937_64 rng(9);
  for (int k = 0; k < 300; ++k) {
    std::vector<std::uint64_t> ps(2 + rng() % 3);
    std::uint64_t m = 0;
    for (auto& x : ps) m += (x = rng() % 40);
    PrimeModulus mod(std::array<std::uint32_t, 4>{3, 5, 7, 11}[rng() % 4]);
    // exact value from factorials
    BigInt num = 1, den = 1;
    for (std::uint64_t i = 2; i <= m; ++i) num *= i;
    for (auto x : ps) {
      for (std::uint64_t i = 2; i <= x; ++i) den *= i;
    }
    Residue expected = static_cast<Residue>((num / den) % mod.value());
    CHECK(multinom_mod_p(m, ps, mod) == expected);
    std::shuffle(ps.begin(), ps.end(), rng);
    CHECK(multinom_mod_p(m, ps, mod) == expected);
  }
}

TEST_CASE("non-divisibility suite") {
  auto r2 = binomial_unit_suite(PrimeModulus(2), 3);
  CHECK(r2.ok());
  CHECK(r2.part2_skipped);
  CHECK(r2.part3_skipped);
  CHECK(r2.checked == 2 + 4 + 8);

  auto r5 = binomial_unit_suite(PrimeModulus(5), 2);
  CHECK(r5.ok());
  bool saw13 = false;
  for (const auto& s : r5.samples) {
    if (s.part == 2 && s.e == 2) {
      CHECK(s.top == 13);
      CHECK(s.value == 3);
      saw13 = true;
    }
  }
  CHECK(saw13);
  CHECK(r5.part3_beta == 8);  // p = 2 mod 3: (2*25 - 5 + 3)/6

  auto r7 = binomial_unit_suite(PrimeModulus(7), 2);
  CHECK(r7.ok());
  CHECK(r7.part3_beta == 16);
  CHECK(r7.samples.back().top == 25);
  CHECK(r7.samples.back().value == 4);

  CHECK_THROWS_AS(binomial_unit_suite(PrimeModulus(7), 0), InputError);
  CHECK_THROWS_AS(witness_beta(3), PreconditionError);
}

}  // TEST_SUITE
