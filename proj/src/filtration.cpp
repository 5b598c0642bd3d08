#include "charp/filtration.hpp"

#include <algorithm>
#include <set>

#include "charp/errors.hpp"

namespace charp {

namespace {

using BigMatrix = std::vector<std::vector<BigInt>>;

// Fraction-free (Bareiss) determinant.
BigInt determinant(BigMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Generalized cross product: a vector orthogonal to the n-1 rows, zero iff they are dependent.
std::vector<BigInt> normal_of(const BigMatrix& rows, std::size_t n) {
  std::vector<BigInt> a(n);
  for (std::size_t j = 0; j < n; ++j) {
    BigMatrix minor;
    for (const auto& r : rows) {
      std::vector<BigInt> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) row.push_back(r[c]);
      }
      minor.push_back(std::move(row));
    }
    BigInt det = determinant(std::move(minor));
    a[j] = (j % 2 == 0) ? det : BigInt(-det);
  }
  return a;
}

BigInt dot(const std::vector<BigInt>& a, const Monomial& m) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * m[i];
  return s;
}

// Calls visit(chosen) for every size-k subset of {0..n-1}.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct SmallHalfspace {
  std::vector<std::int64_t> a;
  std::int64_t b;
};

std::optional<std::vector<SmallHalfspace>> narrow(const std::vector<Halfspace>& hs) {
  const BigInt limit = BigInt(1) << 40;
  std::vector<SmallHalfspace> out;
  for (const auto& h : hs) {
    SmallHalfspace s;
    for (const auto& x : h.a) {
      if (abs(x) > limit) return std::nullopt;
      s.a.push_back(static_cast<std::int64_t>(x));
    }
    if (abs(h.b) > limit) return std::nullopt;
    s.b = static_cast<std::int64_t>(h.b);
    out.push_back(std::move(s));
  }
  return out;
}

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

bool Halfspace::satisfied_by(const Monomial& m) const { return dot(a, m) >= b; }

bool NewtonPolyhedron::contains(const Monomial& m) const {
  return std::all_of(halfspaces.begin(), halfspaces.end(), [&](const Halfspace& h) { return h.satisfied_by(m); });
}

NewtonPolyhedron newton_polyhedron(const MonomialIdeal& I) {
  const std::size_t n = I.nvars();
  if (I.is_zero()) throw InputError("the zero ideal has no Newton polyhedron");
  if (n == 0) throw InputError("Newton polyhedron needs at least one variable");
  if (n > kMaxNewtonDim) {
    throw PreconditionError("Newton polyhedra are supported up to " + std::to_string(kMaxNewtonDim) + " variables");
  }
  const auto& V = I.gens();
  std::set<std::pair<std::vector<BigInt>, BigInt>> seen;
  NewtonPolyhedron poly{I, {}};
  auto add = [&](std::vector<BigInt> a, BigInt b) {
    BigInt g = b;
    for (const auto& x : a) g = gcd(g, x);
    if (g != 0 && g != 1) {
      for (auto& x : a) x /= g;
      b /= g;
    }
    if (seen.emplace(a, b).second) poly.halfspaces.push_back(Halfspace{std::move(a), std::move(b)});
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<BigInt> a(n, 0);
    a[i] = 1;
    add(std::move(a), 0);
  }
  // Every facet passes through a vertex v0 and is spanned by n-1 edge or ray directions.
  for (const auto& v0 : V) {
    BigMatrix directions;
    for (const auto& v : V) {
      if (v == v0) continue;
      std::vector<BigInt> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = BigInt(v[i]) - BigInt(v0[i]);
      directions.push_back(std::move(d));
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<BigInt> e(n, 0);
      e[i] = 1;
      directions.push_back(std::move(e));
    }
    for_each_subset(directions.size(), n - 1, [&](const std::vector<std::size_t>& chosen) {
      BigMatrix rows;
      for (auto c : chosen) rows.push_back(directions[c]);
      auto a = normal_of(rows, n);
      bool any_pos = false, any_neg = false;
      for (const auto& x : a) {
        any_pos = any_pos || x > 0;
        any_neg = any_neg || x < 0;
      }
      if (any_pos == any_neg) return;  // zero normal, or a ray would leave the halfspace
      if (any_neg) {
        for (auto& x : a) x = -x;
      }
      BigInt b = dot(a, v0);
      for (const auto& v : V) {
        if (dot(a, v) < b) return;
      }
      add(std::move(a), std::move(b));
    });
  }
  return poly;
}

MonomialIdeal integral_closure_monomial(const MonomialIdeal& I) {
  const std::size_t n = I.nvars();
  NewtonPolyhedron poly = newton_polyhedron(I);
  if (I.is_unit()) return I;
  auto small = narrow(poly.halfspaces);
  auto inside = [&](const std::array<std::int64_t, kMaxVars>& x) {
    if (small) {
      for (const auto& h : *small) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < n; ++i) s += h.a[i] * x[i];
        if (s < h.b) return false;
      }
      return true;
    }
    Monomial m;
    for (std::size_t i = 0; i < n; ++i) m.set(i, static_cast<Exponent>(x[i]));
    return poly.contains(m);
  };
  // Minimal generators have x_i <= max generator exponent in X_i.
  std::array<std::int64_t, kMaxVars> box{};
  for (const auto& g : I.gens()) {
    for (std::size_t i = 0; i < n; ++i) box[i] = std::max<std::int64_t>(box[i], g[i]);
  }
  std::vector<Monomial> minimal;
  std::array<std::int64_t, kMaxVars> x{};
  for (;;) {
    if (inside(x)) {
      bool is_minimal = true;
      for (std::size_t i = 0; i < n && is_minimal; ++i) {
        if (x[i] == 0) continue;
        --x[i];
        is_minimal = !inside(x);
        ++x[i];
      }
      if (is_minimal) {
        Monomial m;
        for (std::size_t i = 0; i < n; ++i) m.set(i, static_cast<Exponent>(x[i]));
        minimal.push_back(m);
      }
    }
    std::size_t i = 0;
    while (i < n && x[i] == box[i]) x[i++] = 0;
    if (i == n) break;
    ++x[i];
  }
  return MonomialIdeal(n, std::move(minimal));
}

std::string_view to_string(FiltrationStrategy s) {
  return s == FiltrationStrategy::adic ? "adic" : "integral_closure";
}

FiltrationStrategy parse_strategy(std::string_view text) {
  if (text == "adic") return FiltrationStrategy::adic;
  if (text == "integral_closure" || text == "closure") return FiltrationStrategy::integral_closure;
  throw InputError("unknown filtration strategy '" + std::string(text) + "'");
}

FiltrationTable filtration_table(const MonomialIdeal& I, FiltrationStrategy strategy, std::uint64_t horizon) {
  if (horizon == 0) throw InputError("filtration horizon must be positive");
  if (I.is_zero()) throw InputError("filtration of the zero ideal");
  FiltrationTable t{strategy, I, {}, horizon};
  MonomialIdeal pow_n = MonomialIdeal::unit(I.nvars());
  for (std::uint64_t n = 0; n <= horizon; ++n) {
    if (n > 0) pow_n = product(pow_n, I);
    t.rows.push_back(strategy == FiltrationStrategy::adic ? pow_n : integral_closure_monomial(pow_n));
  }
  return t;
}

bool filtration_axioms_hold(const FiltrationTable& t) {
  if (t.rows.empty() || !t.rows[0].is_unit()) return false;
  for (std::size_t n = 0; n + 1 < t.rows.size(); ++n) {
    if (!t.rows[n].contains(t.rows[n + 1])) return false;
  }
  for (std::size_t a = 1; a < t.rows.size(); ++a) {
    for (std::size_t b = a; a + b < t.rows.size(); ++b) {
      if (!t.rows[a + b].contains(product(t.rows[a], t.rows[b]))) return false;
    }
  }
  return true;
}

std::uint64_t colength(const MonomialIdeal& I) {
  if (!I.is_m_primary()) throw PreconditionError("colength needs an m-primary monomial ideal");
  const std::size_t n = I.nvars();
  std::array<Exponent, kMaxVars> box{};
  for (const auto& g : I.gens()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (g.degree() == g[i] && g[i] > 0) box[i] = g[i];
    }
  }
  if (I.is_unit()) return 0;
  std::uint64_t count = 0;
  Monomial x;
  std::array<Exponent, kMaxVars> e{};
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) x.set(i, e[i]);
    if (!I.contains(x)) ++count;
    std::size_t i = 0;
    while (i < n && e[i] + 1 == box[i]) e[i++] = 0;
    if (i == n) break;
    ++e[i];
  }
  return count;
}

ReductionReport reduction_number(const FiltrationTable& t, const MonomialIdeal& J) {
  if (t.rows.size() < 2 || !t.rows[1].contains(J)) throw InputError("J must lie in the first row of the filtration");
  ReductionReport rep{J, std::nullopt, false, {}};
  for (std::size_t n = 0; n + 1 < t.rows.size(); ++n) rep.equal_at.push_back(t.rows[n + 1] == product(J, t.rows[n]));
  if (!rep.equal_at.back()) return rep;
  std::size_t r = rep.equal_at.size();
  while (r > 0 && rep.equal_at[r - 1]) --r;
  rep.r = r;
  rep.stabilized = true;
  return rep;
}

HilbertData hilbert_function_G(const FiltrationTable& t) {
  if (!t.base_m_primary()) throw PreconditionError("Hilbert data needs an m-primary base ideal");
  const std::uint64_t d = t.base.nvars();
  HilbertData h;
  h.d = d;
  std::vector<std::uint64_t> len;
  for (const auto& row : t.rows) len.push_back(colength(row));
  for (std::size_t n = 0; n + 1 < len.size(); ++n) h.dims.push_back(len[n + 1] - len[n]);
  // (1-t)^d * sum dims t^n, truncated at the horizon.
  const std::size_t N = h.dims.size();
  std::vector<std::int64_t> series(N, 0);
  for (std::size_t k = 0; k < N; ++k) {
    std::int64_t s = 0;
    for (std::uint64_t j = 0; j <= d && j <= k; ++j) {
      std::int64_t term = static_cast<std::int64_t>(binomial_u64(d, j) * h.dims[k - j]);
      s += (j % 2 == 0) ? term : -term;
    }
    series[k] = s;
  }
  // Stable once the last three telescoped coefficients vanish.
  h.stabilized = N >= 4 && series[N - 1] == 0 && series[N - 2] == 0 && series[N - 3] == 0;
  std::size_t deg = N;
  while (deg > 0 && series[deg - 1] == 0) --deg;
  h.numerator.assign(series.begin(), series.begin() + static_cast<std::ptrdiff_t>(deg));
  if (h.stabilized && !h.numerator.empty()) {
    h.a_invariant = static_cast<std::int64_t>(h.numerator.size() - 1) - static_cast<std::int64_t>(d);
  }
  return h;
}

HilbertData assoc_graded_hypersurface(const Polynomial& f, std::uint64_t horizon) {
  if (f.is_zero()) throw InputError("hypersurface Hilbert data of the zero polynomial");
  const std::uint64_t s = ord(f);
  const std::uint64_t d = f.ring().nvars();
  HilbertData h;
  h.d = d;
  h.stabilized = true;
  if (s == 0) {
    h.dims.assign(horizon, 0);
    return h;  // unit ideal: G = 0
  }
  h.numerator.assign(s + 1, 0);
  h.numerator[0] = 1;
  h.numerator[s] = -1;
  for (std::uint64_t n = 0; n < horizon; ++n) {
    std::uint64_t all = d == 0 ? (n == 0) : binomial_u64(n + d - 1, d - 1);
    std::uint64_t cut = n >= s ? (d == 0 ? (n == s) : binomial_u64(n - s + d - 1, d - 1)) : 0;
    h.dims.push_back(all - cut);
  }
  h.a_invariant = static_cast<std::int64_t>(s) - static_cast<std::int64_t>(d);
  return h;
}

std::string_view to_string(IdentityVerdict v) {
  switch (v) {
    case IdentityVerdict::holds: return "holds";
    case IdentityVerdict::fails: return "fails";
    case IdentityVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

AInvariantCheck check_aInv_redNo(const FiltrationTable& t, const MonomialIdeal& J, std::uint64_t d) {
  AInvariantCheck out{IdentityVerdict::inconclusive, reduction_number(t, J), hilbert_function_G(t), d};
  if (!out.reduction.stabilized || !out.hilbert.a_invariant) return out;
  const auto r = static_cast<std::int64_t>(*out.reduction.r);
  out.verdict = r == *out.hilbert.a_invariant + static_cast<std::int64_t>(d) ? IdentityVerdict::holds
                                                                             : IdentityVerdict::fails;
  return out;
}

VvCheck check_vv_identity(const MonomialIdeal& I, const MonomialIdeal& params, std::uint64_t k, std::uint64_t l) {
  if (l == 0) throw InputError("parameter power l must be positive");
  if (params.nvars() != I.nvars()) throw InputError("parameters and ideal live in different rings");
  for (const auto& g : params.gens()) {
    std::size_t support = 0;
    for (std::size_t i = 0; i < params.nvars(); ++i) support += g[i] > 0;
    if (support != 1) throw InputError("parameters must be pure powers of variables");
  }
  const MonomialIdeal bracket = generator_power(params, l);
  MonomialIdeal lhs = intersection(integral_closure_monomial(power(I, k + l)), bracket);
  MonomialIdeal rhs = product(integral_closure_monomial(power(I, k)), bracket);
  const bool holds = lhs == rhs;
  return VvCheck{holds, std::move(lhs), std::move(rhs)};
}

}  // namespace charp
