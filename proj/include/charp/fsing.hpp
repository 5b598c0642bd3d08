#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charp/field.hpp"
#include "charp/groebner.hpp"
#include "charp/ideal.hpp"
#include "charp/jet.hpp"
#include "charp/poly.hpp"

namespace charp {

// ---- splitting witnesses ----------------------------------------------------

struct SplitOptions {
  /// Reduce modulo the bracket power after every factor instead of once at the end.
  bool incremental = true;
  /// Maximum number of term-by-term products before BudgetExceeded is thrown.
  std::uint64_t budget = 10'000'000;
  /// Caller vouches that R localized at c is regular.
  bool regular_locus_asserted = false;
};

/// A term of c * f^(q-1) outside (X_0^q, ..., X_d^q).
struct SplitCertificate {
  Polynomial f;
  Polynomial c;
  FrobeniusExponent e;
  Monomial witness;
  Residue coefficient = 0;
  bool regular_locus_attested = false;
  std::string regular_locus_basis;  ///< "asserted", "jacobian" or "unverified"
  std::uint64_t surviving_terms = 0;
  std::uint64_t work = 0;
};

/// c * f^(q-1) with every term in (X_0^q, ..., X_d^q) discarded. `work` receives
/// the number of term products performed.
Polynomial split_survivors(const Polynomial& f, const Polynomial& c, const FrobeniusExponent& e,
                           const SplitOptions& options = {}, std::uint64_t* work = nullptr);

/// Certificate built from the lex-largest survivor, or absent when nothing survives.
/// Throws BudgetExceeded when the work budget would be exceeded.
std::optional<SplitCertificate> glassbrenner_split_test(const Polynomial& f, const Polynomial& c,
                                                        const FrobeniusExponent& e, const SplitOptions& options = {});

/// Checks a certificate by recomputing the witness coefficient with divisor-pruned expansion.
bool verify_split_certificate(const SplitCertificate& cert);

/// f^(p-1) not in (X_0^p, ..., X_d^p).
bool fedder_fpure(const Polynomial& f);
std::optional<SplitCertificate> fedder_certificate(const Polynomial& f);

// ---- witness coefficients ---------------------------------------------------

enum class WitnessCase { quadratic, cubic_mixed, cubic_pure };
std::string_view to_string(WitnessCase c);

/// Target monomial of c * f^(q-1) for the model shapes
///   quadratic:    X0^2 + X1^2 + X2^m            target X0^(q-2) X1^(q-1) X2^m
///   cubic_mixed:  X0^2 + X1^3 + X1*X2^m  (e=2)  target X0^(q-2) X1^(3b+a) X2^(m a)
///   cubic_pure:   X0^2 + X1^3 + X2^n     (e=2)  target X0^(q-2) X1^(3a) X2^(n b)
/// with c = X0. For the cubic shapes a + b = (p^2+1)/2.
struct WitnessSpec {
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;
  Monomial target;
  WitnessCase case_tag = WitnessCase::quadratic;
  std::uint32_t shape_order = 0;  ///< m or n
};

WitnessSpec make_witness_spec(WitnessCase c, const PrimeModulus& p, unsigned e, std::uint32_t shape_order);
/// Model polynomial of the case in a ring of at least three variables.
Polynomial witness_shape(const RingPtr& ring, WitnessCase c, std::uint32_t shape_order);

struct WitnessCoefficient {
  std::optional<Residue> enumerated;   ///< absent when enumeration exceeds the size cap
  std::optional<Residue> closed_form;  ///< present only for the exact model shape with c = X0
  std::uint64_t assignments = 0;       ///< exponent assignments that hit the target

  bool agree() const { return !enumerated || !closed_form || *enumerated == *closed_form; }
  /// Enumerated value when available, else the closed form.
  Residue value() const { return enumerated ? *enumerated : closed_form.value_or(0); }
};

/// Coefficient of spec.target in c * shape^(q-1). Throws InputError when the
/// target lies in the bracket power or no exponent assignment reaches it.
WitnessCoefficient witness_coefficient(const WitnessSpec& spec, const Polynomial& shape, const Polynomial& c,
                                       const FrobeniusExponent& e, std::uint64_t enumeration_cap = 100'000'000);

/// Coefficient of `target` in c * f^k by enumerating exponent assignments of f's terms.
/// Returns the coefficient and the number of contributing assignments.
std::pair<Residue, std::uint64_t> power_coefficient(const Polynomial& f, const Polynomial& c, std::uint64_t k,
                                                    const Monomial& target);

// ---- tight closure ----------------------------------------------------------

enum class TcVerdict { not_in_star, evidence_in_star, inconclusive };
std::string_view to_string(TcVerdict v);

struct TcCheck {
  std::uint64_t q = 0;
  bool member = false;
  std::size_t basis_size = 0;
  std::size_t remainder_terms = 0;
  double millis = 0;
};

struct TightClosureCertificate {
  Polynomial z;
  IdealGens I;
  Polynomial c;
  QuotientCtx ctx;
  std::vector<std::uint64_t> q_checked;
  std::vector<TcCheck> checks;
  TcVerdict verdict = TcVerdict::inconclusive;
  std::optional<std::uint64_t> failing_q;
  bool c_is_test_element = false;
};

/// Checks c z^q in I^[q] + (moduli) for each q in order, stopping at the first failure.
TightClosureCertificate tc_certificate(const Polynomial& z, const IdealGens& I, const Polynomial& c,
                                       const QuotientCtx& ctx, const std::vector<std::uint64_t>& q_list,
                                       bool c_is_test_element);

// ---- singular locus and superficial elements --------------------------------

struct JacobianReport {
  bool isolated = false;
  /// Least k <= bound with X_i^k in (f, partials), per variable.
  std::vector<std::optional<std::uint64_t>> min_power;
};

JacobianReport jacobian_report(const Polynomial& f, std::uint64_t power_bound);
bool jacobian_isolated_singularity(const Polynomial& f, std::uint64_t power_bound);

/// Y_i is a non-zero-divisor modulo the degree-2 initial form Y_0^2 + g_2.
bool superficial_check(const QuadraticJetForm& form, std::size_t i);

// ---- order-two hypersurface classifier --------------------------------------

enum class ClassifierBranch {
  case_i,                 ///< ord(g) = 2 with h != 0
  case_ii,                ///< ord(g) = 3 inside the (m <= 3 or n <= 5) window
  outside_window,         ///< ord(g) = 3 with m >= 4 and n >= 6
  obstruction,            ///< ord(g) >= 4 within the jet precision
  not_normal_punctured,   ///< h = 0, or h1 = h2 = 0
};
std::string_view to_string(ClassifierBranch b);

enum class SplitStatus { certificate, no_witness, beyond_ebudget, budget_exhausted, not_run };
std::string_view to_string(SplitStatus s);

struct ClassifierReport {
  ClassifierBranch branch = ClassifierBranch::obstruction;
  QuadraticJetForm form;
  std::optional<std::uint64_t> g_order;  ///< absent when g vanishes below the jet precision
  std::optional<std::uint64_t> m_order;
  std::optional<std::uint64_t> n_order;
  std::optional<Polynomial> h;   ///< case I remainder in X_2..X_d
  std::optional<Polynomial> h1;  ///< case II
  std::optional<Polynomial> h2;
  std::optional<Polynomial> model;  ///< three-variable polynomial handed to the split test
  std::optional<FrobeniusExponent> e_used;
  SplitStatus split_status = SplitStatus::not_run;
  std::optional<SplitCertificate> certificate;
  std::vector<bool> superficial;  ///< superficial_check for i = 1..d
  std::vector<std::string> assumptions;
  std::vector<std::string> warnings;
};

/// Branches an order-two hypersurface f = unit * (X_0^2 + g) on ord(g).
/// Throws PreconditionError for p = 2 or ord(f) != 2.
ClassifierReport hypdeg2_classifier(const Polynomial& f, JetPrecision D, unsigned e_budget, std::uint64_t seed = 0,
                                    const SplitOptions& split = {});

}  // namespace charp
