#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charp/poly.hpp"

namespace charp {

/// Total-degree cutoff D for jets: terms of degree >= D are discarded.
struct JetPrecision {
  std::uint32_t D = 12;

  explicit JetPrecision(std::uint32_t d = 12);
};

/// Coordinate change X_i -> sum_j matrix[i][j] X_j + shifts[i], shifts of degree >= 2.
/// Linear parts of shifts are folded into the matrix so the split is canonical.
class LinearChange {
 public:
  /// Identity change on the ring's variables.
  explicit LinearChange(RingPtr ring);
  /// Throws InputError for a non-square or singular matrix.
  LinearChange(RingPtr ring, std::vector<std::vector<Residue>> matrix,
               std::vector<Polynomial> shifts = {});
  /// Change whose images are the given polynomials (no constant terms allowed).
  static LinearChange from_images(RingPtr ring, std::vector<Polynomial> images);

  const std::vector<std::vector<Residue>>& matrix() const { return matrix_; }
  const std::vector<Polynomial>& shifts() const { return shifts_; }
  /// images()[i] is the polynomial substituted for X_i.
  std::vector<Polynomial> images() const;
  bool is_identity() const;
  bool is_linear() const;

  /// Apply `this` first, then `after`: (f o this) o after. Truncated at bound.
  LinearChange then(const LinearChange& after, std::uint64_t bound) const;

 private:
  RingPtr ring_;
  std::vector<std::vector<Residue>> matrix_;
  std::vector<Polynomial> shifts_;
};

/// Rank of a square matrix over F_p (Gaussian elimination).
std::size_t matrix_rank(std::vector<std::vector<Residue>> m, const PrimeModulus& p);

/// f o c truncated at D.
Polynomial apply_linear_change(const Polynomial& f, const LinearChange& c, JetPrecision D);

enum class JetCase { ord2, ord3, ord_ge4 };
std::string_view to_string(JetCase c);

/// f o change = unit * (X_0^2 + g_rest) modulo terms of degree >= D.
struct QuadraticJetForm {
  Polynomial original;
  Polynomial g_rest;
  Polynomial unit;
  JetCase case_tag = JetCase::ord_ge4;
  std::optional<std::uint64_t> m_order;
  std::optional<std::uint64_t> n_order;
  LinearChange change;
  JetPrecision precision;
  /// Number of pseudo-random linear changes tried before one worked (0 = identity sufficed).
  unsigned attempts = 0;
};

/// Result of preparing a jet of order e in a pivot variable:
/// f o change = unit * (X_k^e + b_{e-2} X_k^{e-2} + ... + b_0) mod degree D,
/// with the b_i free of X_0..X_k.
struct PreparedJet {
  Polynomial unit;
  std::vector<Polynomial> coeffs;  ///< coeffs[i] multiplies X_k^i, i < e; coeffs[e-1] = 0
  LinearChange change;
  unsigned attempts = 0;
};

/// Jet-level Weierstrass preparation of order `order` in variable `pivot`, followed by the
/// Tschirnhaus shift X_k -> X_k - b_{e-1}/e that removes the X_k^{e-1} term.
/// f must not involve X_0..X_{pivot-1}. Linear changes only mix X_pivot..X_n.
/// Throws UnsupportedCharacteristic when p divides `order`, PreconditionError when the
/// order of f is not `order`.
PreparedJet prepare_jet(const Polynomial& f, std::size_t pivot, unsigned order, JetPrecision D,
                        std::uint64_t seed);

/// Requires p > 2 and ord(f) = 2.
QuadraticJetForm weierstrass_normalize_quadratic(const Polynomial& f, JetPrecision D,
                                                 std::uint64_t seed = 0);

/// Recomputes unit*(X_0^2+g_rest) - f o change; returns the minimal degree of the difference
/// (max uint64 when it vanishes).
std::uint64_t normalization_defect_degree(const QuadraticJetForm& form);

struct DepressedCubic {
  Polynomial unit;  ///< U_1
  Polynomial h1;
  Polynomial h2;
  LinearChange change;
  JetPrecision precision;
  unsigned attempts = 0;
};

/// g = U_1 (X_1^3 + X_1 h1 + h2) modulo degree D after a recorded change among X_1..X_n.
/// g must be free of X_0; requires p > 3 and ord(g) = 3.
DepressedCubic depress_cubic(const Polynomial& g, JetPrecision D, std::uint64_t seed = 0);

/// Minimal degree of U_1 (X_1^3 + X_1 h1 + h2) - g o change.
std::uint64_t cubic_defect_degree(const Polynomial& g, const DepressedCubic& form);

/// Inverse of a jet with nonzero constant term, truncated at bound.
Polynomial inverse_jet(const Polynomial& u, std::uint64_t bound);

/// Deterministic linear congruential stream used for coordinate-change search.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed * 2862933555777941757ull + 3037000493ull) {}
  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    return state_ >> 17;
  }

 private:
  std::uint64_t state_;
};

}  // namespace charp
