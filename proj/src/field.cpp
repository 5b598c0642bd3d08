#include "charp/field.hpp"

#include <algorithm>

#include "charp/errors.hpp"

namespace charp {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

// C(m, n) mod p for single digits m, n < p.
Residue small_binom(std::uint32_t m, std::uint32_t n, const PrimeModulus& p) {
  if (n > m) return 0;
  n = std::min(n, m - n);
  Residue num = 1, den = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    num = p.mul(num, p.reduce_u(m - i));
    den = p.mul(den, p.reduce_u(i + 1));
  }
  return p.mul(num, p.inv(den));
}

}  // namespace

bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // {2, 7, 61} is a complete witness set below 4,759,123,141.
  for (std::uint64_t a : {2, 7, 61}) {
    if (a % n == 0) continue;
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime_u32(p)) {
    throw InputError("modulus " + std::to_string(p) + " is not a prime below 2^31");
  }
  p_ = static_cast<std::uint32_t>(p);
}

Residue PrimeModulus::reduce(std::int64_t x) const {
  std::int64_t r = x % static_cast<std::int64_t>(p_);
  return static_cast<Residue>(r < 0 ? r + p_ : r);
}

Residue PrimeModulus::pow(Residue a, std::uint64_t n) const {
  return static_cast<Residue>(powmod64(a, n, p_));
}

Residue PrimeModulus::inv(Residue a) const {
  if (a % p_ == 0) throw InputError("zero has no inverse mod " + std::to_string(p_));
  return pow(a, p_ - 2);
}

FrobeniusExponent::FrobeniusExponent(const PrimeModulus& p, unsigned e)
    : p_(p.value()), e_(e), q_(1) {
  for (unsigned i = 0; i < e; ++i) {
    if (q_ >= ((std::uint64_t{1} << 62) + p_ - 1) / p_) {
      throw InputError("p^e overflows the 2^62 limit");
    }
    q_ *= p_;
  }
}

FrobeniusExponent FrobeniusExponent::from_q(const PrimeModulus& p, std::uint64_t q) {
  if (q == 0) throw InputError("q must be a positive power of p");
  unsigned e = 0;
  std::uint64_t rest = q;
  while (rest % p.value() == 0) {
    rest /= p.value();
    ++e;
  }
  if (rest != 1) {
    throw InputError(std::to_string(q) + " is not a power of " + std::to_string(p.value()));
  }
  return FrobeniusExponent(p, e);
}

std::uint64_t BasePDigits::value() const {
  std::uint64_t v = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = v * p + *it;
  return v;
}

BasePDigits base_p_digits(std::uint64_t n, const PrimeModulus& p) {
  BasePDigits out;
  out.p = p.value();
  while (n > 0) {
    out.digits.push_back(static_cast<std::uint32_t>(n % p.value()));
    n /= p.value();
  }
  return out;
}

Residue binom_mod_p(std::uint64_t m, std::uint64_t n, const PrimeModulus& p) {
  if (n > m) return 0;
  Residue acc = 1;
  while (n > 0 || m > 0) {
    auto mi = static_cast<std::uint32_t>(m % p.value());
    auto ni = static_cast<std::uint32_t>(n % p.value());
    if (ni > mi) return 0;
    acc = p.mul(acc, small_binom(mi, ni, p));
    m /= p.value();
    n /= p.value();
  }
  return acc;
}

Residue multinom_mod_p(std::uint64_t m, std::span<const std::uint64_t> parts,
                       const PrimeModulus& p) {
  std::uint64_t total = 0;
  for (auto part : parts) {
    if (part > m || total > m - part) throw InputError("multinomial parts exceed m");
    total += part;
  }
  if (total != m) throw InputError("multinomial parts do not sum to m");
  // m!/(k1! k2! ...) = C(m, k1) C(m - k1, k2) ...
  Residue acc = 1;
  std::uint64_t remaining = m;
  for (auto part : parts) {
    acc = p.mul(acc, binom_mod_p(remaining, part, p));
    if (acc == 0) return 0;
    remaining -= part;
  }
  return acc;
}

std::uint64_t witness_beta(std::uint32_t p) {
  if (p <= 3) throw PreconditionError("beta is defined only for p > 3");
  std::uint64_t pp = std::uint64_t{p} * p;
  return p % 3 == 1 ? (pp - 1) / 3 : (2 * pp - p + 3) / 6;
}

BinomialUnitReport binomial_unit_suite(const PrimeModulus& p, unsigned e_max) {
  if (e_max == 0) throw InputError("e_max must be positive");
  BinomialUnitReport rep;
  rep.p = p.value();
  rep.e_max = e_max;

  auto record = [&](int part, unsigned e, std::uint64_t top, std::uint64_t bottom, bool sample) {
    BinomialUnitEntry entry{part, e, top, bottom, binom_mod_p(top, bottom, p)};
    ++rep.checked;
    if (entry.value == 0) rep.violations.push_back(entry);
    if (sample) rep.samples.push_back(entry);
  };

  for (unsigned e = 1; e <= e_max; ++e) {
    const std::uint64_t q = FrobeniusExponent(p, e).q();
    for (std::uint64_t r = 0; r <= q - 1; ++r) record(1, e, q - 1, r, r == (q - 1) / 2);
  }

  if (p.value() == 2) {
    rep.part2_skipped = true;
  } else {
    for (unsigned e = 1; e <= e_max; ++e) {
      const std::uint64_t q = FrobeniusExponent(p, e).q();
      record(2, e, (q + 1) / 2, 1, true);
    }
  }

  if (p.value() <= 3) {
    rep.part3_skipped = true;
  } else {
    const std::uint64_t pp = std::uint64_t{p.value()} * p.value();
    rep.part3_beta = witness_beta(p.value());
    record(3, 2, (pp + 1) / 2, rep.part3_beta, true);
  }
  return rep;
}

}  // namespace charp
