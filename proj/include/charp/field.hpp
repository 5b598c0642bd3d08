#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace charp {

using Residue = std::uint32_t;

/// Deterministic Miller-Rabin, exact for every n < 2^32.
bool is_prime_u32(std::uint64_t n);

/// A prime p < 2^31. Residues are kept in [0, p).
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t p);

  std::uint32_t value() const { return p_; }

  Residue reduce(std::int64_t x) const;
  Residue reduce_u(std::uint64_t x) const { return static_cast<Residue>(x % p_); }
  Residue add(Residue a, Residue b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Residue pow(Residue a, std::uint64_t n) const;
  /// Throws InputError on a = 0.
  Residue inv(Residue a) const;

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint32_t p_;
};

/// q = p^e, with q < 2^62.
class FrobeniusExponent {
 public:
  FrobeniusExponent(const PrimeModulus& p, unsigned e);
  /// Recovers e from q; throws InputError unless q is a positive power of p (q = 1 allowed as e = 0).
  static FrobeniusExponent from_q(const PrimeModulus& p, std::uint64_t q);

  std::uint32_t p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint64_t q() const { return q_; }

 private:
  std::uint32_t p_;
  unsigned e_;
  std::uint64_t q_;
};

/// Little-endian base-p digits; empty for zero.
struct BasePDigits {
  std::vector<std::uint32_t> digits;
  std::uint32_t p = 2;

  std::uint64_t value() const;
};

BasePDigits base_p_digits(std::uint64_t n, const PrimeModulus& p);

/// C(m, n) mod p via Lucas' digit product; C(m, n) = 0 when n > m.
Residue binom_mod_p(std::uint64_t m, std::uint64_t n, const PrimeModulus& p);

/// m! / prod(parts_i!) mod p as a telescoping chain of binomials.
/// Throws InputError when the parts do not sum to m.
Residue multinom_mod_p(std::uint64_t m, std::span<const std::uint64_t> parts,
                       const PrimeModulus& p);

struct BinomialUnitEntry {
  int part = 1;                ///< 1, 2 or 3
  unsigned e = 1;
  std::uint64_t top = 0;       ///< upper argument of the binomial
  std::uint64_t bottom = 0;    ///< lower argument
  Residue value = 0;
};

/// Report for the three non-divisibility statements about binomials
/// C(p^e - 1, r), C((p^e + 1)/2, 1) and C((p^2 + 1)/2, beta).
struct BinomialUnitReport {
  std::uint32_t p = 2;
  unsigned e_max = 1;
  std::uint64_t checked = 0;
  bool part2_skipped = false;  ///< p = 2
  bool part3_skipped = false;  ///< p <= 3
  std::uint64_t part3_beta = 0;
  std::vector<BinomialUnitEntry> violations;
  /// One representative entry per (part, e) so reports stay small.
  std::vector<BinomialUnitEntry> samples;

  bool ok() const { return violations.empty(); }
};

/// beta = (p^2-1)/3 for p = 1 mod 3, (2p^2-p+3)/6 for p = 2 mod 3. Requires p > 3.
std::uint64_t witness_beta(std::uint32_t p);

/// Throws InputError when e_max = 0.
BinomialUnitReport binomial_unit_suite(const PrimeModulus& p, unsigned e_max);

}  // namespace charp
