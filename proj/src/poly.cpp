#include "charp/poly.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "charp/errors.hpp"

namespace charp {

// ---- Monomial -------------------------------------------------------------

Monomial::Monomial(std::span<const Exponent> exps) {
  if (exps.size() > kMaxVars) {
    throw InputError("at most " + std::to_string(kMaxVars) + " variables are supported");
  }
  for (std::size_t i = 0; i < exps.size(); ++i) {
    e_[i] = exps[i];
    deg_ += exps[i];
  }
}

void Monomial::set(std::size_t i, Exponent v) {
  deg_ = deg_ - e_[i] + v;
  e_[i] = v;
}

bool Monomial::divides(const Monomial& other) const {
  if (deg_ > other.deg_) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (e_[i] > other.e_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    std::uint64_t s = std::uint64_t{e_[i]} + other.e_[i];
    if (s > std::numeric_limits<Exponent>::max()) throw InputError("exponent overflow");
    out.e_[i] = static_cast<Exponent>(s);
  }
  out.deg_ = deg_ + other.deg_;
  return out;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) out.e_[i] = e_[i] - other.e_[i];
  out.deg_ = deg_ - other.deg_;
  return out;
}

Monomial Monomial::pow(std::uint64_t k) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (e_[i] != 0 && k > std::numeric_limits<Exponent>::max() / e_[i]) {
      throw InputError("exponent overflow");
    }
    out.e_[i] = static_cast<Exponent>(e_[i] * k);
  }
  out.deg_ = deg_ * k;
  return out;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    out.e_[i] = std::max(e_[i], other.e_[i]);
    out.deg_ += out.e_[i];
  }
  return out;
}

Monomial Monomial::gcd(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    out.e_[i] = std::min(e_[i], other.e_[i]);
    out.deg_ += out.e_[i];
  }
  return out;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (e_[i] != 0 && other.e_[i] != 0) return false;
  }
  return true;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (Exponent e : m.exponents()) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

// ---- Orders ---------------------------------------------------------------

std::string_view to_string(MonomialOrder order) {
  return order == MonomialOrder::lex ? "lex" : "grevlex";
}

MonomialOrder parse_order(std::string_view text) {
  if (text == "lex") return MonomialOrder::lex;
  if (text == "grevlex") return MonomialOrder::grevlex;
  throw InputError("unknown monomial order '" + std::string(text) + "'");
}

int compare(MonomialOrder order, const Monomial& a, const Monomial& b) {
  if (order == MonomialOrder::lex) {
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
  }
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = kMaxVars; i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

// ---- Variables and rings --------------------------------------------------

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(name[0])) return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw InputError("a ring needs at least one variable");
  if (names_.size() > kMaxVars) {
    throw InputError("at most " + std::to_string(kMaxVars) + " variables are supported");
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw InputError("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw InputError("duplicate variable '" + n + "'");
  }
}

std::optional<std::size_t> VarSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

RingPtr make_ring(std::uint64_t p, std::vector<std::string> vars, MonomialOrder order) {
  return std::make_shared<const Ring>(Ring{PrimeModulus(p), VarSet(std::move(vars)), order});
}

RingPtr with_order(const RingPtr& ring, MonomialOrder order) {
  if (ring->order == order) return ring;
  return std::make_shared<const Ring>(Ring{ring->modulus, ring->vars, order});
}

bool same_ring(const Ring& a, const Ring& b) { return &a == &b || a == b; }

// ---- Polynomial -----------------------------------------------------------

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> sorted_terms)
    : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

Polynomial Polynomial::constant(RingPtr ring, std::int64_t c) {
  Residue r = ring->modulus.reduce(c);
  if (r == 0) return Polynomial(std::move(ring));
  return Polynomial(std::move(ring), {Term{Monomial{}, r}});
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->nvars()) throw InputError("variable index out of range");
  Monomial m;
  m.set(index, 1);
  return Polynomial(std::move(ring), {Term{m, 1}});
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, Residue c) {
  c %= ring->modulus.value();
  if (c == 0) return Polynomial(std::move(ring));
  return Polynomial(std::move(ring), {Term{m, c}});
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const auto order = ring->order;
  const auto& p = ring->modulus;
  std::sort(terms.begin(), terms.end(),
            [order](const Term& a, const Term& b) { return compare(order, a.mono, b.mono) > 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    Residue c = t.coef % p.value();
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coef = p.add(out.back().coef, c);
    } else {
      if (!out.empty() && out.back().coef == 0) out.pop_back();
      out.push_back(Term{t.mono, c});
    }
  }
  if (!out.empty() && out.back().coef == 0) out.pop_back();
  return Polynomial(std::move(ring), std::move(out));
}

const Term& Polynomial::leading() const {
  if (terms_.empty()) throw PreconditionError("the zero polynomial has no leading term");
  return terms_.front();
}

Residue Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [this](const Term& t, const Monomial& x) {
    return compare(ring_->order, t.mono, x) > 0;
  });
  return (it != terms_.end() && it->mono == m) ? it->coef : 0;
}

Residue Polynomial::constant_term() const {
  return (!terms_.empty() && terms_.back().mono.is_one()) ? terms_.back().coef : 0;
}

Polynomial Polynomial::in_order(MonomialOrder order) const { return in_ring(with_order(ring_, order)); }

Polynomial Polynomial::in_ring(const RingPtr& ring) const {
  if (ring->modulus != ring_->modulus || ring->vars != ring_->vars) {
    throw InputError("cannot move a polynomial between rings with different variables or modulus");
  }
  if (ring->order == ring_->order) return Polynomial(ring, terms_);
  return from_terms(ring, terms_);
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(modulus().inv(terms_.front().coef));
}

Polynomial Polynomial::scaled(Residue c) const {
  c %= modulus().value();
  if (c == 0) return Polynomial(ring_);
  std::vector<Term> out(terms_);
  for (auto& t : out) t.coef = modulus().mul(t.coef, c);
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::times_term(const Monomial& m, Residue c) const {
  c %= modulus().value();
  if (c == 0) return Polynomial(ring_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(Term{t.mono * m, modulus().mul(t.coef, c)});
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::truncated(std::uint64_t bound) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.degree() < bound) out.push_back(t);
  }
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::homogeneous_part(std::uint64_t degree) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.degree() == degree) out.push_back(t);
  }
  return Polynomial(ring_, std::move(out));
}

std::uint64_t Polynomial::max_degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

void Polynomial::require_same_ring(const Polynomial& other) const {
  if (!same_ring(*ring_, *other.ring_)) {
    throw InputError("operands live in different rings (variables, modulus or order differ)");
  }
}

Polynomial Polynomial::operator-() const {
  std::vector<Term> out(terms_);
  for (auto& t : out) t.coef = modulus().neg(t.coef);
  return Polynomial(ring_, std::move(out));
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, std::span<const Term> b, bool subtract,
                              const Ring& ring) {
  const auto& p = ring.modulus;
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(ring.order, a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(Term{b[j].mono, subtract ? p.neg(b[j].coef) : b[j].coef});
      ++j;
    } else {
      Residue s = subtract ? p.sub(a[i].coef, b[j].coef) : p.add(a[i].coef, b[j].coef);
      if (s != 0) out.push_back(Term{a[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(Term{b[j].mono, subtract ? p.neg(b[j].coef) : b[j].coef});
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(other);
  terms_ = merge_terms(terms_, other.terms_, false, *ring_);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ring(other);
  terms_ = merge_terms(terms_, other.terms_, true, *ring_);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  return mul_truncated(a, b, std::numeric_limits<std::uint64_t>::max());
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(*a.ring_, *b.ring_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

bool canonical_less(const Polynomial& a, const Polynomial& b) {
  const auto order = a.ring_->order;
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(order, a.terms_[i].mono, b.terms_[i].mono);
    if (c != 0) return c < 0;
    if (a.terms_[i].coef != b.terms_[i].coef) return a.terms_[i].coef < b.terms_[i].coef;
  }
  return a.terms_.size() < b.terms_.size();
}

Polynomial mul_truncated(const Polynomial& a, const Polynomial& b, std::uint64_t bound) {
  if (!same_ring(a.ring(), b.ring())) {
    throw InputError("operands live in different rings (variables, modulus or order differ)");
  }
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_ptr());
  const auto& p = a.modulus();
  if (a.size() == 1 || b.size() == 1) {
    const auto& single = a.size() == 1 ? a : b;
    const auto& other = a.size() == 1 ? b : a;
    // Multiplying by a monomial preserves the order, so no re-sort is needed.
    return other.times_term(single.leading().mono, single.leading().coef).truncated(bound);
  }
  std::unordered_map<Monomial, Residue, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      if (s.mono.degree() + t.mono.degree() >= bound) continue;
      auto& slot = acc[s.mono * t.mono];
      slot = p.add(slot, p.mul(s.coef, t.coef));
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (const auto& [m, c] : acc) {
    if (c != 0) terms.push_back(Term{m, c});
  }
  return Polynomial::from_terms(a.ring_ptr(), std::move(terms));
}

Polynomial frobenius_power(const Polynomial& f, std::uint64_t q) {
  FrobeniusExponent::from_q(f.modulus(), q);
  std::vector<Term> out;
  out.reserve(f.size());
  // c^q = c in F_p, and raising exponents to a common multiple preserves both orders.
  for (const auto& t : f.terms()) out.push_back(Term{t.mono.pow(q), t.coef});
  return Polynomial::from_terms(f.ring_ptr(), std::move(out));
}

Polynomial pow_naive(const Polynomial& f, std::uint64_t n) {
  Polynomial acc = Polynomial::constant(f.ring_ptr(), 1);
  for (std::uint64_t i = 0; i < n; ++i) acc *= f;
  return acc;
}

Polynomial pow(const Polynomial& f, std::uint64_t n) {
  const std::uint32_t p = f.modulus().value();
  Polynomial acc = Polynomial::constant(f.ring_ptr(), 1);
  Polynomial block = f;  // f^(p^i)
  std::uint64_t q = 1;
  while (n > 0) {
    auto digit = n % p;
    n /= p;
    if (digit > 0) acc *= pow_naive(block, digit);
    if (n > 0) {
      q *= p;
      block = frobenius_power(f, q);
    }
  }
  return acc;
}

std::uint64_t ord(const Polynomial& f) {
  if (f.is_zero()) throw PreconditionError("ord is undefined for the zero polynomial");
  std::uint64_t d = std::numeric_limits<std::uint64_t>::max();
  for (const auto& t : f.terms()) d = std::min(d, t.mono.degree());
  return d;
}

Polynomial initial_form(const Polynomial& f) { return f.homogeneous_part(ord(f)); }

Polynomial derivative(const Polynomial& f, std::size_t var) {
  if (var >= f.ring().nvars()) throw InputError("variable index out of range");
  const auto& p = f.modulus();
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    Exponent e = t.mono[var];
    Residue c = p.mul(t.coef, p.reduce_u(e));
    if (e == 0 || c == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    out.push_back(Term{m, c});
  }
  return Polynomial::from_terms(f.ring_ptr(), std::move(out));
}

std::vector<Polynomial> partials(const Polynomial& f) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < f.ring().nvars(); ++i) out.push_back(derivative(f, i));
  return out;
}

Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images,
                      std::optional<std::uint64_t> bound) {
  const std::size_t n = f.ring().nvars();
  if (images.size() != n) throw InputError("substitution needs one image per variable");
  if (n == 0) return f;
  const RingPtr& target = images[0].ring_ptr();
  const std::uint64_t cap = bound.value_or(std::numeric_limits<std::uint64_t>::max());
  // powers[i][k] = images[i]^k, built on demand.
  std::vector<std::vector<Polynomial>> powers(n);
  auto power_of = [&](std::size_t i, Exponent k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= k) cache.push_back(mul_truncated(cache.back(), images[i], cap));
    return cache[k];
  };
  Polynomial acc(target);
  for (const auto& t : f.terms()) {
    Polynomial term = Polynomial::constant(target, t.coef);
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i) {
      if (t.mono[i] > 0) term = mul_truncated(term, power_of(i, t.mono[i]), cap);
    }
    acc += term;
  }
  return acc.truncated(cap);
}

std::string monomial_to_string(const Monomial& m, const VarSet& vars) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += '+';
    if (t.mono.is_one()) {
      out += std::to_string(t.coef);
    } else if (t.coef == 1) {
      out += monomial_to_string(t.mono, f.ring().vars);
    } else {
      out += std::to_string(t.coef) + "*" + monomial_to_string(t.mono, f.ring().vars);
    }
  }
  return out;
}

}  // namespace charp
