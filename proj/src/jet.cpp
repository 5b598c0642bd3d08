#include "charp/jet.hpp"

#include <limits>

#include "charp/errors.hpp"

namespace charp {

JetPrecision::JetPrecision(std::uint32_t d) : D(d) {
  if (d < 1) throw InputError("jet precision must be at least 1");
}

std::string_view to_string(JetCase c) {
  switch (c) {
    case JetCase::ord2: return "ord2";
    case JetCase::ord3: return "ord3";
    case JetCase::ord_ge4: return "ord_ge4";
  }
  return "?";
}

std::size_t matrix_rank(std::vector<std::vector<Residue>> m, const PrimeModulus& p) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    Residue inv = p.inv(m[rank][c]);
    for (auto& x : m[rank]) x = p.mul(x, inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Residue factor = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = p.sub(m[r][k], p.mul(factor, m[rank][k]));
    }
    ++rank;
  }
  return rank;
}

// ---- LinearChange ---------------------------------------------------------

LinearChange::LinearChange(RingPtr ring) : ring_(std::move(ring)) {
  const std::size_t n = ring_->nvars();
  matrix_.assign(n, std::vector<Residue>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    matrix_[i][i] = 1;
    shifts_.emplace_back(ring_);
  }
}

LinearChange::LinearChange(RingPtr ring, std::vector<std::vector<Residue>> matrix,
                           std::vector<Polynomial> shifts)
    : ring_(std::move(ring)), matrix_(std::move(matrix)), shifts_(std::move(shifts)) {
  const std::size_t n = ring_->nvars();
  if (matrix_.size() != n) throw InputError("change matrix must be square of size #vars");
  for (auto& row : matrix_) {
    if (row.size() != n) throw InputError("change matrix must be square of size #vars");
    for (auto& x : row) x %= ring_->modulus.value();
  }
  if (shifts_.empty()) {
    for (std::size_t i = 0; i < n; ++i) shifts_.emplace_back(ring_);
  }
  if (shifts_.size() != n) throw InputError("one shift per variable is required");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = shifts_[i];
    if (!same_ring(s.ring(), *ring_)) throw InputError("shift lives in a different ring");
    if (s.is_zero()) continue;
    if (ord(s) == 0) throw InputError("coordinate changes may not have constant terms");
    // Fold degree-one parts into the matrix.
    for (const auto& t : s.terms()) {
      if (t.mono.degree() != 1) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (t.mono[j] == 1) matrix_[i][j] = ring_->modulus.add(matrix_[i][j], t.coef);
      }
    }
    std::vector<Term> rest;
    for (const auto& t : s.terms()) {
      if (t.mono.degree() >= 2) rest.push_back(t);
    }
    shifts_[i] = Polynomial::from_terms(ring_, std::move(rest));
  }
  if (matrix_rank(matrix_, ring_->modulus) != n) throw InputError("change matrix is singular");
}

LinearChange LinearChange::from_images(RingPtr ring, std::vector<Polynomial> images) {
  const std::size_t n = ring->nvars();
  std::vector<std::vector<Residue>> zero(n, std::vector<Residue>(n, 0));
  return LinearChange(std::move(ring), std::move(zero), std::move(images));
}

std::vector<Polynomial> LinearChange::images() const {
  std::vector<Polynomial> out;
  const std::size_t n = ring_->nvars();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix_[i][j] == 0) continue;
      Monomial m;
      m.set(j, 1);
      terms.push_back(Term{m, matrix_[i][j]});
    }
    out.push_back(Polynomial::from_terms(ring_, std::move(terms)) + shifts_[i]);
  }
  return out;
}

bool LinearChange::is_identity() const {
  for (std::size_t i = 0; i < matrix_.size(); ++i) {
    if (!shifts_[i].is_zero()) return false;
    for (std::size_t j = 0; j < matrix_.size(); ++j) {
      if (matrix_[i][j] != (i == j ? 1u : 0u)) return false;
    }
  }
  return true;
}

bool LinearChange::is_linear() const {
  for (const auto& s : shifts_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

LinearChange LinearChange::then(const LinearChange& after, std::uint64_t bound) const {
  auto outer = images();
  auto inner = after.images();
  std::vector<Polynomial> composed;
  for (const auto& img : outer) composed.push_back(substitute(img, inner, bound));
  return from_images(ring_, std::move(composed));
}

Polynomial apply_linear_change(const Polynomial& f, const LinearChange& c, JetPrecision D) {
  auto imgs = c.images();
  if (!imgs.empty() && !same_ring(imgs[0].ring(), f.ring())) {
    throw InputError("change and polynomial live in different rings");
  }
  return substitute(f, imgs, D.D);
}

Polynomial inverse_jet(const Polynomial& u, std::uint64_t bound) {
  Residue c0 = u.constant_term();
  if (c0 == 0) throw PreconditionError("a jet without constant term is not a unit");
  const auto& p = u.modulus();
  Residue c0inv = p.inv(c0);
  // u = c0 (1 + w), u^{-1} = c0^{-1} sum (-w)^k.
  Polynomial minus_w = Polynomial::constant(u.ring_ptr(), 1) - u.scaled(c0inv);
  Polynomial result = Polynomial::constant(u.ring_ptr(), 1).truncated(bound);
  Polynomial term = result;
  for (std::uint64_t k = 1; k < bound; ++k) {
    term = mul_truncated(term, minus_w, bound);
    if (term.is_zero()) break;
    result += term;
  }
  return result.scaled(c0inv);
}

// ---- Preparation ----------------------------------------------------------

namespace {

// Splits h = X_k^e * quotient + remainder with remainder of X_k-degree < e.
void split_by_power(const Polynomial& h, std::size_t k, unsigned e, Polynomial& quotient,
                    Polynomial& remainder) {
  std::vector<Term> q, r;
  for (const auto& t : h.terms()) {
    if (t.mono[k] >= e) {
      Monomial m = t.mono;
      m.set(k, t.mono[k] - e);
      q.push_back(Term{m, t.coef});
    } else {
      r.push_back(t);
    }
  }
  quotient = Polynomial::from_terms(h.ring_ptr(), std::move(q));
  remainder = Polynomial::from_terms(h.ring_ptr(), std::move(r));
}

// Coefficient of X_k^i in h, as a polynomial free of X_k.
Polynomial coefficient_in(const Polynomial& h, std::size_t k, Exponent i) {
  std::vector<Term> out;
  for (const auto& t : h.terms()) {
    if (t.mono[k] != i) continue;
    Monomial m = t.mono;
    m.set(k, 0);
    out.push_back(Term{m, t.coef});
  }
  return Polynomial::from_terms(h.ring_ptr(), std::move(out));
}

LinearChange block_change(const RingPtr& ring, std::size_t pivot, Lcg& rng) {
  const std::size_t n = ring->nvars();
  const auto& p = ring->modulus;
  for (;;) {
    std::vector<std::vector<Residue>> m(n, std::vector<Residue>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i < pivot || j < pivot) {
          m[i][j] = i == j ? 1 : 0;
        } else {
          m[i][j] = static_cast<Residue>(rng.next() % p.value());
        }
      }
    }
    if (matrix_rank(m, p) == n) return LinearChange(ring, std::move(m));
  }
}

}  // namespace

PreparedJet prepare_jet(const Polynomial& f, std::size_t pivot, unsigned order, JetPrecision D,
                        std::uint64_t seed) {
  const RingPtr& ring = f.ring_ptr();
  const auto& p = ring->modulus;
  const std::size_t n = ring->nvars();
  if (pivot >= n) throw PreconditionError("pivot variable out of range");
  if (order == 0 || p.value() % order == 0 || p.value() < order) {
    throw UnsupportedCharacteristic("preparation of order " + std::to_string(order) +
                                    " needs p > " + std::to_string(order));
  }
  if (f.is_zero() || ord(f) != order) {
    throw PreconditionError("expected a jet of order " + std::to_string(order));
  }
  for (const auto& t : f.terms()) {
    for (std::size_t i = 0; i < pivot; ++i) {
      if (t.mono[i] != 0) throw PreconditionError("jet involves variables before the pivot");
    }
  }

  // Find a change making the X_k^e coefficient of the initial form nonzero.
  Monomial pure;
  pure.set(pivot, order);
  const Polynomial lead = initial_form(f);
  LinearChange linear(ring);
  unsigned attempts = 0;
  if (lead.coefficient(pure) == 0) {
    Lcg rng(seed);
    constexpr unsigned kMaxAttempts = 500;
    for (;;) {
      if (++attempts > kMaxAttempts) {
        throw PreconditionError("no coordinate change found with a nonzero pure-power coefficient");
      }
      LinearChange candidate = block_change(ring, pivot, rng);
      if (substitute(lead, candidate.images()).coefficient(pure) != 0) {
        linear = std::move(candidate);
        break;
      }
    }
  }

  const std::uint64_t bound = D.D;
  const Polynomial F = substitute(f, linear.images(), bound + order);

  // v with Q(v F) = 1, i.e. v F is monic of X_k-degree e: v = Q(F)^{-1} (1 - Q(v R(F))).
  Polynomial qf(ring), rf(ring);
  split_by_power(F, pivot, order, qf, rf);
  const Polynomial qf_inv = inverse_jet(qf.truncated(bound), bound);
  const Polynomial one = Polynomial::constant(ring, 1);
  Polynomial v = qf_inv;
  for (std::uint64_t iter = 0; iter <= bound + 1; ++iter) {
    Polynomial q(ring), r(ring);
    split_by_power(mul_truncated(v, rf, bound + order), pivot, order, q, r);
    Polynomial next = mul_truncated(qf_inv, one - q.truncated(bound), bound);
    if (next == v) break;
    v = std::move(next);
  }

  Polynomial q(ring), r(ring);
  split_by_power(mul_truncated(v, F, bound + order), pivot, order, q, r);
  std::vector<Polynomial> b;
  for (unsigned i = 0; i < order; ++i) b.push_back(coefficient_in(r, pivot, i).truncated(bound - std::min<std::uint64_t>(bound, i)));
  Polynomial unit = inverse_jet(v, bound);

  // Tschirnhaus shift X_k -> X_k - b_{e-1}/e.
  std::vector<Polynomial> shift_images;
  for (std::size_t i = 0; i < n; ++i) shift_images.push_back(Polynomial::variable(ring, i));
  shift_images[pivot] -= b[order - 1].scaled(p.inv(order % p.value()));
  LinearChange shift = LinearChange::from_images(ring, shift_images);

  Polynomial pk = Polynomial::monomial(ring, pure);
  for (unsigned i = 0; i < order; ++i) {
    Monomial xi;
    xi.set(pivot, i);
    pk += b[i].times_term(xi, 1);
  }
  Polynomial shifted = substitute(pk, shift_images, bound);

  PreparedJet out{substitute(unit, shift_images, bound), {}, linear.then(shift, bound), attempts};
  for (unsigned i = 0; i < order; ++i) {
    out.coeffs.push_back(coefficient_in(shifted, pivot, i).truncated(bound - std::min<std::uint64_t>(bound, i)));
  }
  return out;
}

QuadraticJetForm weierstrass_normalize_quadratic(const Polynomial& f, JetPrecision D,
                                                 std::uint64_t seed) {
  if (f.modulus().value() == 2) {
    throw UnsupportedCharacteristic("quadratic normalization needs p > 2");
  }
  if (f.is_zero() || ord(f) != 2) throw PreconditionError("quadratic normalization needs ord(f) = 2");
  PreparedJet prep = prepare_jet(f, 0, 2, D, seed);
  QuadraticJetForm form{f, prep.coeffs[0], prep.unit, JetCase::ord_ge4, std::nullopt, std::nullopt,
                        prep.change, D, prep.attempts};
  if (!form.g_rest.is_zero()) {
    auto o = ord(form.g_rest);
    form.case_tag = o == 2 ? JetCase::ord2 : o == 3 ? JetCase::ord3 : JetCase::ord_ge4;
  }
  return form;
}

std::uint64_t normalization_defect_degree(const QuadraticJetForm& form) {
  const RingPtr& ring = form.original.ring_ptr();
  Monomial x0sq;
  x0sq.set(0, 2);
  Polynomial model = Polynomial::monomial(ring, x0sq) + form.g_rest;
  Polynomial diff = mul_truncated(form.unit, model, form.precision.D) -
                    apply_linear_change(form.original, form.change, form.precision);
  return diff.is_zero() ? std::numeric_limits<std::uint64_t>::max() : ord(diff);
}

DepressedCubic depress_cubic(const Polynomial& g, JetPrecision D, std::uint64_t seed) {
  if (g.modulus().value() <= 3) throw UnsupportedCharacteristic("cubic depression needs p > 3");
  if (g.ring().nvars() < 2) throw PreconditionError("cubic depression needs at least two variables");
  PreparedJet prep = prepare_jet(g, 1, 3, D, seed);
  return DepressedCubic{prep.unit, prep.coeffs[1], prep.coeffs[0], prep.change, D, prep.attempts};
}

std::uint64_t cubic_defect_degree(const Polynomial& g, const DepressedCubic& form) {
  const RingPtr& ring = g.ring_ptr();
  Monomial x1cube, x1;
  x1cube.set(1, 3);
  x1.set(1, 1);
  Polynomial model = Polynomial::monomial(ring, x1cube) + form.h1.times_term(x1, 1) + form.h2;
  Polynomial diff = mul_truncated(form.unit, model, form.precision.D) -
                    apply_linear_change(g, form.change, form.precision);
  return diff.is_zero() ? std::numeric_limits<std::uint64_t>::max() : ord(diff);
}

}  // namespace charp
