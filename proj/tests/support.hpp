#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <optional>

#include "charp/ideal.hpp"
#include "charp/parse.hpp"
#include "charp/poly.hpp"

namespace charp::testing {

using BigInt = boost::multiprecision::cpp_int;

/// Exact binomial coefficient, product formula.
inline BigInt big_binomial(std::uint64_t m, std::uint64_t n) {
  if (n > m) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= n; ++i) {
    r *= (m - n + i);
    r /= i;
  }
  return r;
}

inline Polynomial P(const RingPtr& ring, const std::string& text) { return parse_polynomial(ring, text); }

/// Dense coefficient array over a box of exponents; reference arithmetic for ring-law checks.
struct DensePoly {
  std::size_t nvars = 0;
  std::uint32_t p = 2;
  std::uint32_t side = 0;  ///< exponents per variable are < side
  std::vector<std::uint64_t> c;

  DensePoly(std::size_t n, std::uint32_t prime, std::uint32_t s)
      : nvars(n), p(prime), side(s), c(static_cast<std::size_t>(std::pow(s, n)), 0) {}

  std::size_t index(const Monomial& m) const {
    std::size_t idx = 0;
    for (std::size_t i = nvars; i-- > 0;) idx = idx * side + m[i];
    return idx;
  }
  Monomial monomial_at(std::size_t idx) const {
    Monomial m;
    for (std::size_t i = 0; i < nvars; ++i) {
      m.set(i, static_cast<Exponent>(idx % side));
      idx /= side;
    }
    return m;
  }

  static DensePoly from(const Polynomial& f, std::uint32_t side) {
    DensePoly d(f.ring().nvars(), f.modulus().value(), side);
    for (const auto& t : f.terms()) d.c[d.index(t.mono)] = t.coef;
    return d;
  }
  DensePoly operator+(const DensePoly& o) const {
    DensePoly r = *this;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = (c[i] + o.c[i]) % p;
    return r;
  }
  DensePoly operator*(const DensePoly& o) const {
    DensePoly r(nvars, p, side);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      Monomial a = monomial_at(i);
      for (std::size_t j = 0; j < o.c.size(); ++j) {
        if (o.c[j] == 0) continue;
        Monomial prod = a * o.monomial_at(j);
        for (std::size_t v = 0; v < nvars; ++v) {
          if (prod[v] >= side) throw std::runtime_error("dense box too small");
        }
        auto& slot = r.c[r.index(prod)];
        slot = (slot + c[i] * o.c[j]) % p;
      }
    }
    return r;
  }
  bool operator==(const DensePoly& o) const { return c == o.c; }
};

/// Random polynomial with up to `terms` terms of total degree <= max_deg.
inline Polynomial random_poly(const RingPtr& ring, std::mt19937_64& rng, unsigned terms,
                              unsigned max_deg) {
  std::vector<Term> out;
  const auto n = ring->nvars();
  for (unsigned k = 0; k < terms; ++k) {
    Monomial m;
    unsigned budget = static_cast<unsigned>(rng() % (max_deg + 1));
    for (unsigned u = 0; u < budget; ++u) {
      auto v = rng() % n;
      m.set(v, m[v] + 1);
    }
    out.push_back(Term{m, static_cast<Residue>(rng() % ring->modulus.value())});
  }
  return Polynomial::from_terms(ring, std::move(out));
}

/// Every monomial in n variables of total degree <= d.
inline std::vector<Monomial> monomials_up_to(std::size_t n, std::uint64_t d) {
  std::vector<Monomial> out{Monomial()};
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Monomial> next;
    for (const auto& m : out) {
      for (std::uint64_t e = 0; m.degree() + e <= d; ++e) {
        Monomial x = m;
        x.set(v, static_cast<Exponent>(e));
        next.push_back(x);
      }
    }
    out.swap(next);
  }
  return out;
}

/// Linear-algebra membership: g is in the F_p-span of all products m*g_i of
/// total degree <= deg(g) + slack. Independent of any Groebner machinery.
inline bool macaulay_member(const Polynomial& g, const std::vector<Polynomial>& gens, std::uint64_t slack) {
  const auto& ring = g.ring_ptr();
  const auto& p = ring->modulus;
  if (g.is_zero()) return true;
  std::uint64_t bound = g.max_degree() + slack;
  for (const auto& h : gens) bound = std::max(bound, h.is_zero() ? 0 : h.max_degree());
  auto monos = monomials_up_to(ring->nvars(), bound);
  std::unordered_map<Monomial, std::size_t, MonomialHash> col;
  for (std::size_t i = 0; i < monos.size(); ++i) col.emplace(monos[i], i);
  const std::size_t N = monos.size();
  // pivot column -> reduced row with leading 1 at that column
  std::unordered_map<std::size_t, std::vector<Residue>> pivots;
  auto dense = [&](const Polynomial& f) {
    std::vector<Residue> v(N, 0);
    for (const auto& t : f.terms()) v[col.at(t.mono)] = t.coef;
    return v;
  };
  auto eliminate = [&](std::vector<Residue>& v) -> std::optional<std::size_t> {
    for (std::size_t c = 0; c < N; ++c) {
      if (v[c] == 0) continue;
      auto it = pivots.find(c);
      if (it == pivots.end()) return c;
      Residue f = v[c];
      for (std::size_t k = c; k < N; ++k) v[k] = p.sub(v[k], p.mul(f, it->second[k]));
    }
    return std::nullopt;
  };
  for (const auto& h : gens) {
    if (h.is_zero()) continue;
    for (const auto& m : monos) {
      if (m.degree() + h.max_degree() > bound) continue;
      auto v = dense(h.times_term(m, 1));
      if (auto c = eliminate(v)) {
        Residue inv = p.inv(v[*c]);
        for (auto& x : v) x = p.mul(x, inv);
        pivots.emplace(*c, std::move(v));
      }
    }
  }
  auto v = dense(g);
  return !eliminate(v).has_value();
}

// x in closure(I) iff x^K in I^K for some K <= bound.
inline bool bounded_power_member(const Monomial& x, const MonomialIdeal& I, unsigned bound) {
  MonomialIdeal Ik = MonomialIdeal::unit(I.nvars());
  for (unsigned K = 1; K <= bound; ++K) {
    Ik = product(Ik, I);
    if (Ik.contains(x.pow(K))) return true;
  }
  return false;
}

/// Random monomial ideal with 1 to 4 generators of total degree <= max_deg.
inline MonomialIdeal random_ideal(std::size_t n, std::mt19937_64& rng, unsigned max_deg) {
  std::vector<Monomial> g;
  unsigned count = 1 + static_cast<unsigned>(rng() % 4);
  for (unsigned k = 0; k < count; ++k) {
    Monomial m;
    for (std::size_t v = 0; v < n; ++v) m.set(v, static_cast<Exponent>(rng() % (max_deg + 1)));
    if (m.degree() > max_deg || m.is_one()) m = Monomial{};
    if (!m.is_one()) g.push_back(m);
  }
  if (g.empty()) {
    Monomial m;
    m.set(0, 1);
    g.push_back(m);
  }
  return MonomialIdeal(n, std::move(g));
}

}  // namespace charp::testing
