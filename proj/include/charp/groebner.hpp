#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "charp/ideal.hpp"
#include "charp/poly.hpp"

namespace charp {

struct GroebnerOptions {
  /// Tail-reduce the working basis by every newly inserted element.
  bool interreduce = true;
  bool trace = false;
};

/// One processed critical pair. `inserted` is the index of the new basis
/// element, or absent when the S-polynomial reduced to zero.
struct GroebnerTraceEvent {
  std::size_t i = 0;
  std::size_t j = 0;
  Monomial lcm;
  std::uint64_t reductions = 0;
  std::optional<std::size_t> inserted;
};

struct GroebnerStats {
  std::uint64_t pairs_processed = 0;
  std::uint64_t pairs_skipped = 0;
  std::uint64_t zero_reductions = 0;
  std::uint64_t reduction_steps = 0;
  std::uint64_t max_degree = 0;
};

/// Reduced Groebner basis: monic, interreduced, sorted by decreasing leading term.
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, std::vector<Polynomial> basis, std::uint64_t fingerprint, GroebnerStats stats,
                std::vector<GroebnerTraceEvent> trace);

  const RingPtr& ring_ptr() const { return ring_; }
  MonomialOrder order() const { return ring_->order; }
  const std::vector<Polynomial>& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }
  bool is_unit() const { return basis_.size() == 1 && basis_[0].is_constant(); }
  /// Hash of the canonical input generators.
  std::uint64_t source_fingerprint() const { return fingerprint_; }
  const GroebnerStats& stats() const { return stats_; }
  const std::vector<GroebnerTraceEvent>& trace() const { return trace_; }

 private:
  RingPtr ring_;
  std::vector<Polynomial> basis_;
  std::uint64_t fingerprint_;
  GroebnerStats stats_;
  std::vector<GroebnerTraceEvent> trace_;
};

std::uint64_t fingerprint(const IdealGens& I);

/// Buchberger's algorithm with the Gebauer-Moeller criteria and the normal
/// selection strategy (least lcm degree, then least lcm in the order).
GroebnerBasis buchberger(const IdealGens& I, MonomialOrder order, const GroebnerOptions& options = {});

/// Full reduction remainder of g. g is moved into the basis order when needed;
/// the result lives in the basis ring.
Polynomial normal_form(const Polynomial& g, const GroebnerBasis& B);

struct DivisionResult {
  Polynomial remainder;
  /// g = sum cofactors[i] * B.basis()[i] + remainder
  std::vector<Polynomial> cofactors;
  std::uint64_t reductions = 0;
};

DivisionResult normal_form_with_cofactors(const Polynomial& g, const GroebnerBasis& B);

struct MembershipVerdict {
  bool member = false;
  Polynomial normal_form;
  std::uint64_t reductions = 0;
};

/// Decides g in I + (ctx moduli) using a basis computed in ctx's order.
MembershipVerdict quotient_membership(const Polynomial& g, const IdealGens& I, const QuotientCtx& ctx);
/// Same decision against a basis computed beforehand for I + (moduli).
MembershipVerdict membership(const Polynomial& g, const GroebnerBasis& B);
GroebnerBasis quotient_basis(const IdealGens& I, const QuotientCtx& ctx, const GroebnerOptions& options = {});

/// A + (moduli) == B + (moduli).
bool quotient_ideal_equal(const IdealGens& A, const IdealGens& B, const QuotientCtx& ctx);

}  // namespace charp
