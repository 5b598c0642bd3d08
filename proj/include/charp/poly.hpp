#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "charp/field.hpp"

namespace charp {

inline constexpr std::size_t kMaxVars = 12;
using Exponent = std::uint32_t;

/// Exponent vector with a cached total degree. Unused trailing slots stay zero,
/// so comparisons and hashing never need the ring's variable count.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::span<const Exponent> exps);
  Monomial(std::initializer_list<Exponent> exps)
      : Monomial(std::span<const Exponent>(exps.begin(), exps.size())) {}

  Exponent operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, Exponent v);
  std::uint64_t degree() const { return deg_; }
  const std::array<Exponent, kMaxVars>& exponents() const { return e_; }

  bool is_one() const { return deg_ == 0; }
  bool divides(const Monomial& other) const;
  /// Throws InputError on exponent overflow.
  Monomial operator*(const Monomial& other) const;
  /// Requires other.divides(*this).
  Monomial operator/(const Monomial& other) const;
  Monomial pow(std::uint64_t k) const;
  Monomial lcm(const Monomial& other) const;
  Monomial gcd(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }

 private:
  std::array<Exponent, kMaxVars> e_{};
  std::uint64_t deg_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

enum class MonomialOrder { lex, grevlex };

std::string_view to_string(MonomialOrder order);
/// Accepts "lex" and "grevlex"; throws InputError otherwise.
MonomialOrder parse_order(std::string_view text);

/// <0, 0, >0 as a is smaller, equal, larger than b.
int compare(MonomialOrder order, const Monomial& a, const Monomial& b);

/// Ordered, distinct identifiers X_0, ..., X_n.
class VarSet {
 public:
  explicit VarSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& operator[](std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const VarSet&, const VarSet&) = default;

 private:
  std::vector<std::string> names_;
};

bool is_identifier(std::string_view name);

struct Ring {
  PrimeModulus modulus;
  VarSet vars;
  MonomialOrder order;

  std::size_t nvars() const { return vars.size(); }
  friend bool operator==(const Ring&, const Ring&) = default;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::uint64_t p, std::vector<std::string> vars,
                  MonomialOrder order = MonomialOrder::grevlex);
RingPtr with_order(const RingPtr& ring, MonomialOrder order);

struct Term {
  Monomial mono;
  Residue coef = 0;
};

/// Sparse polynomial in canonical form: nonzero coefficients, terms strictly
/// decreasing in the ring's monomial order.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);

  static Polynomial constant(RingPtr ring, std::int64_t c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, const Monomial& m, Residue c = 1);
  /// Sorts, merges equal monomials and drops zero coefficients.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);
  /// Caller guarantees canonical form (strictly decreasing, no zero coefficients).
  static Polynomial from_canonical(RingPtr ring, std::vector<Term> terms) {
    return Polynomial(std::move(ring), std::move(terms));
  }

  const Ring& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const PrimeModulus& modulus() const { return ring_->modulus; }

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  /// Requires a nonzero polynomial.
  const Term& leading() const;
  Residue coefficient(const Monomial& m) const;
  Residue constant_term() const;

  /// Same polynomial re-sorted for another order.
  Polynomial in_order(MonomialOrder order) const;
  Polynomial in_ring(const RingPtr& ring) const;
  Polynomial monic() const;
  Polynomial scaled(Residue c) const;
  Polynomial times_term(const Monomial& m, Residue c) const;
  /// Terms of total degree < bound.
  Polynomial truncated(std::uint64_t bound) const;
  Polynomial homogeneous_part(std::uint64_t degree) const;
  std::uint64_t max_degree() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Strict weak order used to sort generator lists canonically.
  friend bool canonical_less(const Polynomial& a, const Polynomial& b);

 private:
  Polynomial(RingPtr ring, std::vector<Term> sorted_terms);
  void require_same_ring(const Polynomial& other) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

bool same_ring(const Ring& a, const Ring& b);

/// Product discarding every term of total degree >= bound.
Polynomial mul_truncated(const Polynomial& a, const Polynomial& b, std::uint64_t bound);

/// f^n, splitting n into base-p digits and using f^(p^i) = termwise p^i-th powers.
Polynomial pow(const Polynomial& f, std::uint64_t n);
/// Naive repeated multiplication; reference path for tests and small n.
Polynomial pow_naive(const Polynomial& f, std::uint64_t n);
/// f^q for q = p^e: raises every exponent to the q-th multiple, coefficients fixed.
/// Throws InputError when q is not a power of the characteristic.
Polynomial frobenius_power(const Polynomial& f, std::uint64_t q);

/// Minimum total degree of a term; throws PreconditionError for f = 0.
std::uint64_t ord(const Polynomial& f);
/// Sum of the terms of total degree ord(f).
Polynomial initial_form(const Polynomial& f);

Polynomial derivative(const Polynomial& f, std::size_t var);
std::vector<Polynomial> partials(const Polynomial& f);

/// f(images[0], ..., images[n-1]); with a bound, every intermediate is truncated.
Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images,
                      std::optional<std::uint64_t> bound = std::nullopt);

/// Canonical text, e.g. "X^2+X*Y*Z*W+Y^3". Zero prints as "0".
std::string to_string(const Polynomial& f);
std::string monomial_to_string(const Monomial& m, const VarSet& vars);

}  // namespace charp
