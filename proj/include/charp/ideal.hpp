#pragma once

#include <cstdint>
#include <vector>

#include "charp/field.hpp"
#include "charp/poly.hpp"

namespace charp {

/// Monomial ideal stored as its minimal generators: an antichain under
/// divisibility, sorted by (degree, exponents). No generators means the zero ideal.
class MonomialIdeal {
 public:
  explicit MonomialIdeal(std::size_t nvars) : nvars_(nvars) {}
  MonomialIdeal(std::size_t nvars, std::vector<Monomial> gens);

  static MonomialIdeal unit(std::size_t nvars);
  /// (X_0, ..., X_{n-1})^k
  static MonomialIdeal maximal_power(std::size_t nvars, std::uint64_t k);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Monomial>& gens() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return gens_.size() == 1 && gens_[0].is_one(); }
  bool contains(const Monomial& m) const;
  bool contains(const MonomialIdeal& other) const;
  /// Every variable has a pure power among the generators.
  bool is_m_primary() const;

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  std::size_t nvars_;
  std::vector<Monomial> gens_;
};

bool monomial_membership(const Monomial& m, const MonomialIdeal& I);
MonomialIdeal sum(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal product(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal power(const MonomialIdeal& I, std::uint64_t n);
MonomialIdeal intersection(const MonomialIdeal& a, const MonomialIdeal& b);
/// I : J = intersection over g in J of (I : g).
MonomialIdeal monomial_colon(const MonomialIdeal& I, const MonomialIdeal& J);
/// Generators raised to the k-th power, for any k >= 1.
MonomialIdeal generator_power(const MonomialIdeal& I, std::uint64_t k);
std::string to_string(const MonomialIdeal& I, const VarSet& vars);

/// Canonical generator list: zeros dropped, generators monic, deduplicated and
/// sorted by decreasing leading term. All-monomial lists are reduced to their
/// minimal antichain.
class IdealGens {
 public:
  explicit IdealGens(RingPtr ring) : ring_(std::move(ring)) {}
  IdealGens(RingPtr ring, std::vector<Polynomial> gens);
  static IdealGens from_monomial(RingPtr ring, const MonomialIdeal& I);
  static IdealGens maximal(RingPtr ring);

  const RingPtr& ring_ptr() const { return ring_; }
  const Ring& ring() const { return *ring_; }
  const std::vector<Polynomial>& gens() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool is_zero() const { return gens_.empty(); }
  bool is_monomial() const { return is_monomial_; }
  /// Requires is_monomial().
  MonomialIdeal to_monomial() const;
  IdealGens in_order(MonomialOrder order) const;

  friend bool operator==(const IdealGens& a, const IdealGens& b);

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  bool is_monomial_ = true;
};

IdealGens bracket_power(const IdealGens& I, const FrobeniusExponent& q);
/// q must be a power of the ring characteristic; throws InputError otherwise.
IdealGens bracket_power(const IdealGens& I, std::uint64_t q);
IdealGens power(const IdealGens& I, std::uint64_t n);
IdealGens sum(const IdealGens& a, const IdealGens& b);
IdealGens product(const IdealGens& a, const IdealGens& b);
std::string to_string(const IdealGens& I);

/// Ambient polynomial ring modulo nonzero moduli, with the order used for
/// every membership decision made in it.
class QuotientCtx {
 public:
  QuotientCtx(RingPtr ring, std::vector<Polynomial> moduli, MonomialOrder order);
  QuotientCtx(RingPtr ring, std::vector<Polynomial> moduli);
  static QuotientCtx trivial(RingPtr ring);
  static QuotientCtx hypersurface(const Polynomial& f);

  const RingPtr& ring_ptr() const { return ring_; }
  const std::vector<Polynomial>& moduli() const { return moduli_; }
  MonomialOrder order() const { return order_; }

 private:
  RingPtr ring_;
  std::vector<Polynomial> moduli_;
  MonomialOrder order_;
};

}  // namespace charp
