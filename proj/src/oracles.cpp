#include "charp/oracles.hpp"

#include <optional>
#include <unordered_map>

namespace charp::oracle {

std::vector<BigInt> pascal_row(std::uint64_t n) {
  std::vector<BigInt> row(n + 1);
  row[0] = 1;
  for (std::uint64_t k = 0; k < n; ++k) row[k + 1] = row[k] * (n - k) / (k + 1);
  return row;
}

std::vector<Monomial> monomials_up_to(std::size_t n, std::uint64_t d) {
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

bool bounded_power_member(const Monomial& x, const MonomialIdeal& I, unsigned bound) {
  MonomialIdeal Ik = MonomialIdeal::unit(I.nvars());
  for (unsigned K = 1; K <= bound; ++K) {
    Ik = product(Ik, I);
    if (Ik.contains(x.pow(K))) return true;
  }
  return false;
}

MonomialIdeal bounded_power_closure(const MonomialIdeal& I, unsigned bound) {
  const std::size_t n = I.nvars();
  std::vector<MonomialIdeal> powers;
  MonomialIdeal Ik = MonomialIdeal::unit(n);
  for (unsigned K = 1; K <= bound; ++K) {
    Ik = product(Ik, I);
    powers.push_back(Ik);
  }
  std::vector<Exponent> box(n, 0);
  for (const auto& g : I.gens()) {
    for (std::size_t i = 0; i < n; ++i) box[i] = std::max(box[i], g[i]);
  }
  std::vector<Monomial> inside;
  std::vector<Exponent> e(n, 0);
  for (;;) {
    Monomial x;
    for (std::size_t i = 0; i < n; ++i) x.set(i, e[i]);
    for (unsigned K = 1; K <= bound; ++K) {
      if (powers[K - 1].contains(x.pow(K))) {
        inside.push_back(x);
        break;
      }
    }
    std::size_t i = 0;
    while (i < n && e[i] == box[i]) e[i++] = 0;
    if (i == n) break;
    ++e[i];
  }
  return MonomialIdeal(n, std::move(inside));
}

bool span_member(const Polynomial& g, const std::vector<Polynomial>& gens, std::uint64_t slack) {
  if (g.is_zero()) return true;
  const auto& ring = g.ring_ptr();
  const auto& p = ring->modulus;
  std::uint64_t bound = g.max_degree() + slack;
  auto monos = monomials_up_to(ring->nvars(), bound);
  std::unordered_map<Monomial, std::size_t, MonomialHash> col;
  for (std::size_t i = 0; i < monos.size(); ++i) col.emplace(monos[i], i);
  const std::size_t N = monos.size();
  std::unordered_map<std::size_t, std::vector<Residue>> pivots;
  auto dense = [&](const Polynomial& f) {
    std::vector<Residue> v(N, 0);
    for (const auto& t : f.terms()) v[col.at(t.mono)] = t.coef;
    return v;
  };
  // Reduces v against the pivots; returns its new pivot column, if any.
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
    if (h.is_zero() || h.max_degree() > bound) continue;
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

}  // namespace charp::oracle
