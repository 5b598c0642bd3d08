#include "charp/ideal.hpp"

#include <algorithm>

#include "charp/errors.hpp"

namespace charp {

namespace {

bool antichain_less(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.exponents() > b.exponents();
}

std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), antichain_less);
  std::vector<Monomial> kept;
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& k : kept) {
      if (k.divides(g)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(g);
  }
  return kept;
}

void require_same(const MonomialIdeal& a, const MonomialIdeal& b) {
  if (a.nvars() != b.nvars()) throw InputError("monomial ideals live in different rings");
}

void require_same(const IdealGens& a, const IdealGens& b) {
  if (!same_ring(a.ring(), b.ring())) throw InputError("ideals live in different rings");
}

}  // namespace

MonomialIdeal::MonomialIdeal(std::size_t nvars, std::vector<Monomial> gens) : nvars_(nvars) {
  if (nvars > kMaxVars) throw InputError("too many variables");
  for (const auto& g : gens) {
    for (std::size_t i = nvars; i < kMaxVars; ++i) {
      if (g[i] != 0) throw InputError("monomial uses a variable outside the ring");
    }
  }
  gens_ = minimalize(std::move(gens));
}

MonomialIdeal MonomialIdeal::unit(std::size_t nvars) { return MonomialIdeal(nvars, {Monomial()}); }

MonomialIdeal MonomialIdeal::maximal_power(std::size_t nvars, std::uint64_t k) {
  std::vector<Monomial> vars;
  for (std::size_t i = 0; i < nvars; ++i) {
    Monomial m;
    m.set(i, 1);
    vars.push_back(m);
  }
  return power(MonomialIdeal(nvars, std::move(vars)), k);
}

bool MonomialIdeal::contains(const Monomial& m) const {
  for (const auto& g : gens_) {
    if (g.degree() > m.degree()) break;
    if (g.divides(m)) return true;
  }
  return false;
}

bool MonomialIdeal::contains(const MonomialIdeal& other) const {
  require_same(*this, other);
  for (const auto& g : other.gens_) {
    if (!contains(g)) return false;
  }
  return true;
}

bool MonomialIdeal::is_m_primary() const {
  for (std::size_t i = 0; i < nvars_; ++i) {
    bool found = false;
    for (const auto& g : gens_) {
      if (g.degree() == g[i]) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool monomial_membership(const Monomial& m, const MonomialIdeal& I) { return I.contains(m); }

MonomialIdeal sum(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same(a, b);
  auto gens = a.gens();
  gens.insert(gens.end(), b.gens().begin(), b.gens().end());
  return MonomialIdeal(a.nvars(), std::move(gens));
}

MonomialIdeal product(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same(a, b);
  std::vector<Monomial> gens;
  gens.reserve(a.gens().size() * b.gens().size());
  for (const auto& x : a.gens()) {
    for (const auto& y : b.gens()) gens.push_back(x * y);
  }
  return MonomialIdeal(a.nvars(), std::move(gens));
}

MonomialIdeal power(const MonomialIdeal& I, std::uint64_t n) {
  MonomialIdeal result = MonomialIdeal::unit(I.nvars());
  MonomialIdeal base = I;
  // Square-and-multiply keeps intermediate antichains small.
  while (n > 0) {
    if (n & 1) result = product(result, base);
    n >>= 1;
    if (n > 0) base = product(base, base);
  }
  return result;
}

MonomialIdeal intersection(const MonomialIdeal& a, const MonomialIdeal& b) {
  require_same(a, b);
  std::vector<Monomial> gens;
  for (const auto& x : a.gens()) {
    for (const auto& y : b.gens()) gens.push_back(x.lcm(y));
  }
  return MonomialIdeal(a.nvars(), std::move(gens));
}

MonomialIdeal monomial_colon(const MonomialIdeal& I, const MonomialIdeal& J) {
  require_same(I, J);
  MonomialIdeal result = MonomialIdeal::unit(I.nvars());
  for (const auto& g : J.gens()) {
    std::vector<Monomial> gens;
    for (const auto& m : I.gens()) gens.push_back(m / m.gcd(g));
    result = intersection(result, MonomialIdeal(I.nvars(), std::move(gens)));
  }
  return result;
}

MonomialIdeal generator_power(const MonomialIdeal& I, std::uint64_t k) {
  if (k == 0) throw InputError("generator power needs k >= 1");
  std::vector<Monomial> gens;
  for (const auto& g : I.gens()) gens.push_back(g.pow(k));
  return MonomialIdeal(I.nvars(), std::move(gens));
}

std::string to_string(const MonomialIdeal& I, const VarSet& vars) {
  std::string out = "(";
  for (std::size_t i = 0; i < I.gens().size(); ++i) {
    if (i) out += ", ";
    out += monomial_to_string(I.gens()[i], vars);
  }
  return out + ")";
}

// ---- IdealGens ------------------------------------------------------------

IdealGens::IdealGens(RingPtr ring, std::vector<Polynomial> gens) : ring_(std::move(ring)) {
  for (auto& g : gens) {
    if (!same_ring(g.ring(), *ring_)) throw InputError("generator lives in a different ring");
    if (g.is_zero()) continue;
    if (!g.is_monomial()) is_monomial_ = false;
    gens_.push_back(g.in_ring(ring_).monic());
  }
  if (is_monomial_) {
    std::vector<Monomial> monos;
    for (const auto& g : gens_) monos.push_back(g.leading().mono);
    *this = from_monomial(ring_, MonomialIdeal(ring_->nvars(), std::move(monos)));
    return;
  }
  std::sort(gens_.begin(), gens_.end(), [](const Polynomial& a, const Polynomial& b) { return canonical_less(b, a); });
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
}

IdealGens IdealGens::from_monomial(RingPtr ring, const MonomialIdeal& I) {
  if (I.nvars() != ring->nvars()) throw InputError("monomial ideal lives in a different ring");
  IdealGens out(ring);
  for (const auto& g : I.gens()) out.gens_.push_back(Polynomial::monomial(ring, g));
  std::sort(out.gens_.begin(), out.gens_.end(),
            [](const Polynomial& a, const Polynomial& b) { return canonical_less(b, a); });
  return out;
}

IdealGens IdealGens::maximal(RingPtr ring) {
  return from_monomial(ring, MonomialIdeal::maximal_power(ring->nvars(), 1));
}

MonomialIdeal IdealGens::to_monomial() const {
  if (!is_monomial_) throw PreconditionError("ideal is not generated by monomials");
  std::vector<Monomial> monos;
  for (const auto& g : gens_) monos.push_back(g.leading().mono);
  return MonomialIdeal(ring_->nvars(), std::move(monos));
}

IdealGens IdealGens::in_order(MonomialOrder order) const {
  auto ring = with_order(ring_, order);
  std::vector<Polynomial> gens;
  for (const auto& g : gens_) gens.push_back(g.in_ring(ring));
  return IdealGens(ring, std::move(gens));
}

bool operator==(const IdealGens& a, const IdealGens& b) {
  return same_ring(a.ring(), b.ring()) && a.gens_ == b.gens_;
}

IdealGens bracket_power(const IdealGens& I, const FrobeniusExponent& q) {
  if (q.p() != I.ring().modulus.value()) {
    throw InputError("bracket exponent is a power of " + std::to_string(q.p()) + ", not of the characteristic " +
                     std::to_string(I.ring().modulus.value()));
  }
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens()) gens.push_back(frobenius_power(g, q.q()));
  return IdealGens(I.ring_ptr(), std::move(gens));
}

IdealGens bracket_power(const IdealGens& I, std::uint64_t q) {
  return bracket_power(I, FrobeniusExponent::from_q(I.ring().modulus, q));
}

IdealGens power(const IdealGens& I, std::uint64_t n) {
  if (I.is_monomial()) return IdealGens::from_monomial(I.ring_ptr(), power(I.to_monomial(), n));
  IdealGens result(I.ring_ptr(), {Polynomial::constant(I.ring_ptr(), 1)});
  for (std::uint64_t k = 0; k < n; ++k) result = product(result, I);
  return result;
}

IdealGens sum(const IdealGens& a, const IdealGens& b) {
  require_same(a, b);
  auto gens = a.gens();
  gens.insert(gens.end(), b.gens().begin(), b.gens().end());
  return IdealGens(a.ring_ptr(), std::move(gens));
}

IdealGens product(const IdealGens& a, const IdealGens& b) {
  require_same(a, b);
  std::vector<Polynomial> gens;
  for (const auto& x : a.gens()) {
    for (const auto& y : b.gens()) gens.push_back(x * y);
  }
  return IdealGens(a.ring_ptr(), std::move(gens));
}

std::string to_string(const IdealGens& I) {
  std::string out = "(";
  for (std::size_t i = 0; i < I.gens().size(); ++i) {
    if (i) out += ", ";
    out += to_string(I.gens()[i]);
  }
  return out + ")";
}

// ---- QuotientCtx ----------------------------------------------------------

QuotientCtx::QuotientCtx(RingPtr ring, std::vector<Polynomial> moduli, MonomialOrder order)
    : ring_(std::move(ring)), order_(order) {
  for (auto& f : moduli) {
    if (!same_ring(f.ring(), *ring_)) throw InputError("modulus lives in a different ring");
    if (f.is_zero()) throw InputError("quotient moduli must be nonzero");
    moduli_.push_back(f.in_ring(ring_));
  }
}

QuotientCtx::QuotientCtx(RingPtr ring, std::vector<Polynomial> moduli)
    : QuotientCtx(ring, std::move(moduli), ring->order) {}

QuotientCtx QuotientCtx::trivial(RingPtr ring) { return QuotientCtx(std::move(ring), {}); }

QuotientCtx QuotientCtx::hypersurface(const Polynomial& f) { return QuotientCtx(f.ring_ptr(), {f}); }

}  // namespace charp
