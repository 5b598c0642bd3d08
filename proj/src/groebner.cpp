#include "charp/groebner.hpp"

#include <algorithm>
#include <set>

#include "charp/errors.hpp"

namespace charp {

namespace {

std::uint32_t support_mask(const Monomial& m) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (m[i] != 0) mask |= 1u << i;
  }
  return mask;
}

struct Reducer {
  Monomial lt;
  std::uint32_t mask;
  const std::vector<Term>* terms;
  std::size_t index;
};

// Reducers are scanned in insertion order, so the choice is deterministic.
const Reducer* find_reducer(const std::vector<Reducer>& reducers, const Monomial& m) {
  const std::uint32_t mask = support_mask(m);
  for (const auto& r : reducers) {
    if ((r.mask & ~mask) != 0 || r.lt.degree() > m.degree()) continue;
    if (r.lt.divides(m)) return &r;
  }
  return nullptr;
}

// out = a[from..] - c * m * b, where b is monic and canonical.
void sub_multiple(const std::vector<Term>& a, std::size_t from, const std::vector<Term>& b, const Monomial& m,
                  Residue c, const Ring& ring, std::vector<Term>& out) {
  const auto& p = ring.modulus;
  out.clear();
  out.reserve(a.size() - from + b.size());
  std::size_t i = from, j = 0;
  Monomial bj = j < b.size() ? b[j].mono * m : Monomial();
  while (i < a.size() || j < b.size()) {
    int cmp;
    if (i == a.size()) {
      cmp = -1;
    } else if (j == b.size()) {
      cmp = 1;
    } else {
      cmp = compare(ring.order, a[i].mono, bj);
    }
    if (cmp > 0) {
      out.push_back(a[i++]);
      continue;
    }
    Residue v = p.neg(p.mul(c, b[j].coef));
    if (cmp == 0) {
      v = p.add(a[i].coef, v);
      ++i;
    }
    if (v != 0) out.push_back(Term{bj, v});
    ++j;
    if (j < b.size()) bj = b[j].mono * m;
  }
}

struct Reduction {
  std::vector<Term> remainder;
  std::uint64_t steps = 0;
};

// Full reduction; `head_only` stops at the first irreducible leading term.
Reduction reduce(std::vector<Term> work, const std::vector<Reducer>& reducers, const Ring& ring, bool head_only,
                 std::vector<std::vector<Term>>* cofactors = nullptr) {
  Reduction out;
  const auto& p = ring.modulus;
  std::vector<Term> scratch;
  std::size_t pos = 0;
  while (pos < work.size()) {
    const Term lead = work[pos];
    const Reducer* r = find_reducer(reducers, lead.mono);
    if (r == nullptr) {
      if (head_only) {
        out.remainder.assign(work.begin() + static_cast<std::ptrdiff_t>(pos), work.end());
        return out;
      }
      out.remainder.push_back(lead);
      ++pos;
      continue;
    }
    Monomial m = lead.mono / r->lt;
    Residue c = p.mul(lead.coef, p.inv((*r->terms)[0].coef));
    if (cofactors) (*cofactors)[r->index].push_back(Term{m, c});
    sub_multiple(work, pos, *r->terms, m, c, ring, scratch);
    work.swap(scratch);
    pos = 0;
    ++out.steps;
  }
  return out;
}

struct Entry {
  std::vector<Term> terms;  // monic
  Monomial lt;
  bool redundant = false;
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

struct PairLess {
  MonomialOrder order;
  bool operator()(const Pair& a, const Pair& b) const {
    if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
    int c = compare(order, a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

std::vector<Term> make_monic(std::vector<Term> t, const PrimeModulus& p) {
  if (t.empty() || t[0].coef == 1) return t;
  Residue inv = p.inv(t[0].coef);
  for (auto& x : t) x.coef = p.mul(x.coef, inv);
  return t;
}

class Engine {
 public:
  Engine(RingPtr ring, const GroebnerOptions& options)
      : ring_(std::move(ring)), options_(options), pairs_(PairLess{ring_->order}) {}

  void insert_input(const Polynomial& g) {
    std::vector<Term> t(g.terms().begin(), g.terms().end());
    auto red = reduce(std::move(t), reducers(), *ring_, false);
    stats_.reduction_steps += red.steps;
    if (red.remainder.empty()) return;
    add(make_monic(std::move(red.remainder), ring_->modulus));
  }

  void run() {
    while (!pairs_.empty()) {
      Pair pr = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      ++stats_.pairs_processed;
      stats_.max_degree = std::max(stats_.max_degree, pr.lcm.degree());
      const auto& a = G_[pr.i];
      const auto& b = G_[pr.j];
      std::vector<Term> s;
      {
        // Monomial multiples keep the term order.
        std::vector<Term> left(a.terms);
        const Monomial ma = pr.lcm / a.lt;
        for (auto& t : left) t.mono = t.mono * ma;
        sub_multiple(left, 0, b.terms, pr.lcm / b.lt, 1, *ring_, s);
      }
      auto red = reduce(std::move(s), reducers(), *ring_, false);
      stats_.reduction_steps += red.steps;
      GroebnerTraceEvent ev{pr.i, pr.j, pr.lcm, red.steps, std::nullopt};
      if (red.remainder.empty()) {
        ++stats_.zero_reductions;
      } else {
        ev.inserted = add(make_monic(std::move(red.remainder), ring_->modulus));
      }
      if (options_.trace) trace_.push_back(ev);
    }
  }

  std::vector<Polynomial> reduced_basis() {
    std::vector<std::size_t> live;
    for (std::size_t k = 0; k < G_.size(); ++k) {
      if (!G_[k].redundant) live.push_back(k);
    }
    std::vector<Polynomial> out;
    for (auto k : live) {
      std::vector<Reducer> others;
      for (auto o : live) {
        if (o != k) others.push_back(Reducer{G_[o].lt, support_mask(G_[o].lt), &G_[o].terms, o});
      }
      std::vector<Term> tail(G_[k].terms.begin() + 1, G_[k].terms.end());
      auto red = reduce(std::move(tail), others, *ring_, false);
      std::vector<Term> full{G_[k].terms[0]};
      full.insert(full.end(), red.remainder.begin(), red.remainder.end());
      out.push_back(Polynomial::from_canonical(ring_, std::move(full)));
    }
    std::sort(out.begin(), out.end(), [&](const Polynomial& x, const Polynomial& y) {
      return compare(ring_->order, x.leading().mono, y.leading().mono) > 0;
    });
    return out;
  }

  const GroebnerStats& stats() const { return stats_; }
  std::vector<GroebnerTraceEvent> take_trace() { return std::move(trace_); }

 private:
  std::vector<Reducer> reducers() const {
    std::vector<Reducer> out;
    for (std::size_t k = 0; k < G_.size(); ++k) {
      if (!G_[k].redundant) out.push_back(Reducer{G_[k].lt, support_mask(G_[k].lt), &G_[k].terms, k});
    }
    return out;
  }

  std::size_t add(std::vector<Term> h_terms) {
    const std::size_t h = G_.size();
    const Monomial lth = h_terms[0].mono;
    G_.push_back(Entry{std::move(h_terms), lth, false});
    update(h);
    if (options_.interreduce) interreduce_with(h);
    return h;
  }

  // Gebauer-Moeller UPDATE for the new element h.
  void update(std::size_t h) {
    const Monomial lth = G_[h].lt;
    std::vector<Pair> C;
    for (std::size_t g = 0; g < h; ++g) {
      if (!G_[g].redundant) C.push_back(Pair{g, h, G_[g].lt.lcm(lth)});
    }
    std::vector<Pair> D;
    for (std::size_t k = 0; k < C.size(); ++k) {
      const auto& cand = C[k];
      bool keep = G_[cand.i].lt.coprime(lth);
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < C.size() && keep; ++l) {
          if (C[l].lcm.divides(cand.lcm)) keep = false;
        }
        for (const auto& d : D) {
          if (!keep) break;
          if (d.lcm.divides(cand.lcm)) keep = false;
        }
      }
      if (keep) D.push_back(cand);
    }
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      const auto& pr = *it;
      bool drop = lth.divides(pr.lcm) && !(G_[pr.i].lt.lcm(lth) == pr.lcm) && !(G_[pr.j].lt.lcm(lth) == pr.lcm);
      if (drop) {
        ++stats_.pairs_skipped;
        it = pairs_.erase(it);
      } else {
        ++it;
      }
    }
    for (const auto& d : D) {
      if (G_[d.i].lt.coprime(lth)) {
        ++stats_.pairs_skipped;
      } else {
        pairs_.insert(d);
      }
    }
    stats_.pairs_skipped += C.size() - D.size();
    for (std::size_t g = 0; g < h; ++g) {
      if (!G_[g].redundant && lth.divides(G_[g].lt)) G_[g].redundant = true;
    }
  }

  void interreduce_with(std::size_t h) {
    std::vector<Reducer> single{Reducer{G_[h].lt, support_mask(G_[h].lt), &G_[h].terms, h}};
    for (std::size_t g = 0; g < h; ++g) {
      auto& e = G_[g];
      if (e.redundant) continue;
      bool touched = false;
      for (std::size_t k = 1; k < e.terms.size() && !touched; ++k) touched = G_[h].lt.divides(e.terms[k].mono);
      if (!touched) continue;
      std::vector<Term> tail(e.terms.begin() + 1, e.terms.end());
      auto red = reduce(std::move(tail), single, *ring_, false);
      stats_.reduction_steps += red.steps;
      std::vector<Term> full{e.terms[0]};
      full.insert(full.end(), red.remainder.begin(), red.remainder.end());
      e.terms = std::move(full);
    }
  }

  RingPtr ring_;
  GroebnerOptions options_;
  std::vector<Entry> G_;
  std::set<Pair, PairLess> pairs_;
  GroebnerStats stats_;
  std::vector<GroebnerTraceEvent> trace_;
};

std::vector<Reducer> basis_reducers(const GroebnerBasis& B) {
  std::vector<Reducer> out;
  for (std::size_t k = 0; k < B.basis().size(); ++k) {
    const auto& b = B.basis()[k];
    // terms() is a span over the polynomial's own storage; the reducer only reads it.
    out.push_back(Reducer{b.leading().mono, support_mask(b.leading().mono), nullptr, k});
  }
  return out;
}

}  // namespace

GroebnerBasis::GroebnerBasis(RingPtr ring, std::vector<Polynomial> basis, std::uint64_t fingerprint,
                             GroebnerStats stats, std::vector<GroebnerTraceEvent> trace)
    : ring_(std::move(ring)),
      basis_(std::move(basis)),
      fingerprint_(fingerprint),
      stats_(stats),
      trace_(std::move(trace)) {}

std::uint64_t fingerprint(const IdealGens& I) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(I.ring().modulus.value());
  mix(I.ring().nvars());
  for (const auto& g : I.gens()) {
    mix(0xabcdef);
    for (const auto& t : g.terms()) {
      mix(MonomialHash{}(t.mono));
      mix(t.coef);
    }
  }
  return h;
}

GroebnerBasis buchberger(const IdealGens& I, MonomialOrder order, const GroebnerOptions& options) {
  auto ring = with_order(I.ring_ptr(), order);
  Engine engine(ring, options);
  std::vector<Polynomial> inputs;
  for (const auto& g : I.gens()) inputs.push_back(g.in_ring(ring));
  // Smallest leading terms first keeps early reductions cheap.
  std::sort(inputs.begin(), inputs.end(), [&](const Polynomial& a, const Polynomial& b) {
    return compare(order, a.leading().mono, b.leading().mono) < 0;
  });
  for (const auto& g : inputs) engine.insert_input(g);
  engine.run();
  auto stats = engine.stats();
  return GroebnerBasis(ring, engine.reduced_basis(), fingerprint(I), stats, engine.take_trace());
}

namespace {

// Copies basis terms into owned vectors so Reducer can point at them.
struct OwnedReducers {
  std::vector<std::vector<Term>> storage;
  std::vector<Reducer> reducers;

  explicit OwnedReducers(const GroebnerBasis& B) {
    storage.reserve(B.size());
    for (const auto& b : B.basis()) storage.emplace_back(b.terms().begin(), b.terms().end());
    reducers = basis_reducers(B);
    for (std::size_t k = 0; k < reducers.size(); ++k) reducers[k].terms = &storage[k];
  }
};

}  // namespace

Polynomial normal_form(const Polynomial& g, const GroebnerBasis& B) {
  auto h = g.in_ring(B.ring_ptr());
  OwnedReducers r(B);
  auto red = reduce(std::vector<Term>(h.terms().begin(), h.terms().end()), r.reducers, *B.ring_ptr(), false);
  return Polynomial::from_canonical(B.ring_ptr(), std::move(red.remainder));
}

DivisionResult normal_form_with_cofactors(const Polynomial& g, const GroebnerBasis& B) {
  auto h = g.in_ring(B.ring_ptr());
  OwnedReducers r(B);
  std::vector<std::vector<Term>> cof(B.size());
  auto red = reduce(std::vector<Term>(h.terms().begin(), h.terms().end()), r.reducers, *B.ring_ptr(), false, &cof);
  DivisionResult out{Polynomial::from_canonical(B.ring_ptr(), std::move(red.remainder)), {}, red.steps};
  for (auto& c : cof) out.cofactors.push_back(Polynomial::from_terms(B.ring_ptr(), std::move(c)));
  return out;
}

GroebnerBasis quotient_basis(const IdealGens& I, const QuotientCtx& ctx, const GroebnerOptions& options) {
  if (!same_ring(I.ring(), *ctx.ring_ptr())) {
    // Rings may differ only in order.
    if (I.ring().modulus != ctx.ring_ptr()->modulus || I.ring().vars != ctx.ring_ptr()->vars) {
      throw InputError("ideal and quotient context live in different rings");
    }
  }
  auto ring = with_order(ctx.ring_ptr(), ctx.order());
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens()) gens.push_back(g.in_ring(ring));
  for (const auto& f : ctx.moduli()) gens.push_back(f.in_ring(ring));
  return buchberger(IdealGens(ring, std::move(gens)), ctx.order(), options);
}

MembershipVerdict membership(const Polynomial& g, const GroebnerBasis& B) {
  auto h = g.in_ring(B.ring_ptr());
  OwnedReducers r(B);
  auto red = reduce(std::vector<Term>(h.terms().begin(), h.terms().end()), r.reducers, *B.ring_ptr(), false);
  MembershipVerdict v{red.remainder.empty(), Polynomial::from_canonical(B.ring_ptr(), std::move(red.remainder)),
                      red.steps};
  return v;
}

MembershipVerdict quotient_membership(const Polynomial& g, const IdealGens& I, const QuotientCtx& ctx) {
  return membership(g, quotient_basis(I, ctx));
}

bool quotient_ideal_equal(const IdealGens& A, const IdealGens& B, const QuotientCtx& ctx) {
  auto ga = quotient_basis(A, ctx);
  auto gb = quotient_basis(B, ctx);
  // Reduced bases are unique, so equality of ideals is equality of bases.
  if (ga.basis() == gb.basis()) return true;
  for (const auto& g : A.gens()) {
    if (!membership(g, gb).member) return false;
  }
  for (const auto& g : B.gens()) {
    if (!membership(g, ga).member) return false;
  }
  return true;
}

}  // namespace charp
