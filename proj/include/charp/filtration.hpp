#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "charp/ideal.hpp"
#include "charp/poly.hpp"

namespace charp {

using BigInt = boost::multiprecision::cpp_int;

// ---- Newton polyhedra -------------------------------------------------------

/// a . x >= b with integer coefficients in lowest terms.
struct Halfspace {
  std::vector<BigInt> a;
  BigInt b;

  bool satisfied_by(const Monomial& m) const;
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// conv(generator exponents) + R^n_{>=0} as an intersection of halfspaces,
/// coordinate halfspaces x_i >= 0 included.
struct NewtonPolyhedron {
  MonomialIdeal generators;
  std::vector<Halfspace> halfspaces;

  bool contains(const Monomial& m) const;
};

inline constexpr std::size_t kMaxNewtonDim = 6;

/// Throws InputError for the zero ideal and PreconditionError above kMaxNewtonDim variables.
NewtonPolyhedron newton_polyhedron(const MonomialIdeal& I);
/// Minimal generators of the monomials inside the Newton polyhedron of I.
MonomialIdeal integral_closure_monomial(const MonomialIdeal& I);

// ---- filtrations -------------------------------------------------------------

enum class FiltrationStrategy { adic, integral_closure };
std::string_view to_string(FiltrationStrategy s);
FiltrationStrategy parse_strategy(std::string_view text);

inline constexpr std::uint64_t kDefaultHorizon = 8;

struct FiltrationTable {
  FiltrationStrategy strategy = FiltrationStrategy::adic;
  MonomialIdeal base;
  std::vector<MonomialIdeal> rows;  ///< rows[n] for 0 <= n <= horizon
  std::uint64_t horizon = 0;

  bool base_m_primary() const { return base.is_m_primary(); }
};

FiltrationTable filtration_table(const MonomialIdeal& I, FiltrationStrategy strategy,
                                 std::uint64_t horizon = kDefaultHorizon);

/// rows[0] is the unit ideal, rows decrease, and rows[a] * rows[b] lies in rows[a+b].
bool filtration_axioms_hold(const FiltrationTable& table);

/// Number of monomials outside an m-primary monomial ideal.
std::uint64_t colength(const MonomialIdeal& I);

struct ReductionReport {
  MonomialIdeal J;
  std::optional<std::uint64_t> r;   ///< absent when not stabilized
  bool stabilized = false;
  std::vector<bool> equal_at;       ///< equal_at[n]: rows[n+1] == J * rows[n]
};

/// Least r with rows[n+1] = J * rows[n] for r <= n < horizon. Throws InputError unless J lies in rows[1].
ReductionReport reduction_number(const FiltrationTable& table, const MonomialIdeal& J);

struct HilbertData {
  std::vector<std::uint64_t> dims;   ///< dim I_n / I_{n+1}
  std::vector<std::int64_t> numerator;
  std::uint64_t d = 0;               ///< ambient variable count
  std::optional<std::int64_t> a_invariant;  ///< deg numerator - d, absent when not stabilized
  bool stabilized = false;
  bool cm_assumed = true;            ///< a-invariant read off the numerator presumes G is Cohen-Macaulay
};

/// Hilbert data of the associated graded ring. Throws PreconditionError unless the base is m-primary.
HilbertData hilbert_function_G(const FiltrationTable& table);

/// Graded ring k[X_0..X_d]/(initial form of f): numerator 1 - t^ord(f). Throws InputError for f = 0.
HilbertData assoc_graded_hypersurface(const Polynomial& f, std::uint64_t horizon = kDefaultHorizon);

enum class IdentityVerdict { holds, fails, inconclusive };
std::string_view to_string(IdentityVerdict v);

struct AInvariantCheck {
  IdentityVerdict verdict = IdentityVerdict::inconclusive;
  ReductionReport reduction;
  HilbertData hilbert;
  std::uint64_t d = 0;
};

/// Compares the reduction number with a(G) + d; inconclusive when either side has not stabilized.
AInvariantCheck check_aInv_redNo(const FiltrationTable& table, const MonomialIdeal& J, std::uint64_t d);

struct VvCheck {
  bool holds = false;
  MonomialIdeal lhs;  ///< closure(I^(k+l)) intersected with (f_1^l, ..., f_d^l)
  MonomialIdeal rhs;  ///< closure(I^k) * (f_1^l, ..., f_d^l)
};

/// params must be generated by pure powers of variables. Throws InputError otherwise.
VvCheck check_vv_identity(const MonomialIdeal& I, const MonomialIdeal& params, std::uint64_t k, std::uint64_t l);

}  // namespace charp
