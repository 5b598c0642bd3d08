#include "charp/fsing.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <unordered_map>

#include "charp/errors.hpp"

namespace charp {

namespace {

bool below_bracket(const Monomial& m, std::uint64_t q, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i] >= q) return false;
  }
  return true;
}

Polynomial prune(const Polynomial& f, std::uint64_t q) {
  std::vector<Term> kept;
  const std::size_t n = f.ring().nvars();
  for (const auto& t : f.terms()) {
    if (below_bracket(t.mono, q, n)) kept.push_back(t);
  }
  return Polynomial::from_canonical(f.ring_ptr(), std::move(kept));
}

// a * b with every product outside the bracket power dropped before accumulation.
Polynomial mul_pruned(const Polynomial& a, const Polynomial& b, std::uint64_t q) {
  const std::size_t n = a.ring().nvars();
  const auto& p = a.modulus();
  std::unordered_map<Monomial, Residue, MonomialHash> acc;
  acc.reserve(a.size() * 2 + b.size());
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i) inside = std::uint64_t{s.mono[i]} + t.mono[i] < q;
      if (!inside) continue;
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

void charge(std::uint64_t& work, std::uint64_t amount, std::uint64_t budget) {
  if (work + amount > budget) {
    throw BudgetExceeded("splitting test needs more than " + std::to_string(budget) + " term products (" +
                         std::to_string(work) + " spent, next step " + std::to_string(amount) + ")");
  }
  work += amount;
}

void require_ring_char(const Polynomial& f, const FrobeniusExponent& e) {
  if (e.p() != f.modulus().value()) {
    throw InputError("Frobenius exponent is for p = " + std::to_string(e.p()) + " but the ring has p = " +
                     std::to_string(f.modulus().value()));
  }
}

Polynomial model_variable_power(const RingPtr& ring, std::initializer_list<std::pair<std::size_t, Exponent>> exps,
                                Residue c) {
  Monomial m;
  for (auto [i, e] : exps) m.set(i, e);
  return Polynomial::monomial(ring, m, c);
}

}  // namespace

// ---- splitting ------------------------------------------------------------------

Polynomial split_survivors(const Polynomial& f, const Polynomial& c, const FrobeniusExponent& e,
                           const SplitOptions& options, std::uint64_t* work_out) {
  require_ring_char(f, e);
  if (!same_ring(f.ring(), c.ring())) throw InputError("f and c live in different rings");
  const std::uint64_t q = e.q();
  const std::uint64_t p = e.p();
  std::uint64_t work = 0;
  // f^(q-1) = prod_i (f^(p-1))^(p^i): one block per base-p digit of q-1.
  const Polynomial block = pow(f, p - 1);
  Polynomial acc = options.incremental ? prune(c, q) : c;
  for (unsigned i = e.e(); i-- > 0;) {
    std::uint64_t pi = 1;
    for (unsigned k = 0; k < i; ++k) pi *= p;
    Polynomial factor = frobenius_power(block, pi);
    if (options.incremental) factor = prune(factor, q);
    charge(work, static_cast<std::uint64_t>(acc.size()) * factor.size(), options.budget);
    acc = options.incremental ? mul_pruned(acc, factor, q) : acc * factor;
    if (acc.is_zero()) break;
  }
  if (work_out) *work_out = work;
  return prune(acc, q);
}

std::optional<SplitCertificate> glassbrenner_split_test(const Polynomial& f, const Polynomial& c,
                                                        const FrobeniusExponent& e, const SplitOptions& options) {
  std::uint64_t work = 0;
  Polynomial survivors = split_survivors(f, c, e, options, &work);
  if (survivors.is_zero()) return std::nullopt;
  const Term* best = &survivors.terms()[0];
  for (const auto& t : survivors.terms()) {
    if (compare(MonomialOrder::lex, t.mono, best->mono) > 0) best = &t;
  }
  SplitCertificate cert{f, c, e, best->mono, best->coef, options.regular_locus_asserted,
                        options.regular_locus_asserted ? "asserted" : "unverified", survivors.size(), work};
  return cert;
}

bool verify_split_certificate(const SplitCertificate& cert) {
  const std::uint64_t q = cert.e.q();
  if (!below_bracket(cert.witness, q, cert.f.ring().nvars()) || cert.coefficient == 0) return false;
  auto [coef, hits] = power_coefficient(cert.f, cert.c, q - 1, cert.witness);
  (void)hits;
  return coef == cert.coefficient;
}

std::optional<SplitCertificate> fedder_certificate(const Polynomial& f) {
  const auto one = Polynomial::constant(f.ring_ptr(), 1);
  return glassbrenner_split_test(f, one, FrobeniusExponent(f.modulus(), 1));
}

bool fedder_fpure(const Polynomial& f) { return fedder_certificate(f).has_value(); }

// ---- witness coefficients -----------------------------------------------------

std::string_view to_string(WitnessCase c) {
  switch (c) {
    case WitnessCase::quadratic: return "quadratic";
    case WitnessCase::cubic_mixed: return "cubic-mixed";
    case WitnessCase::cubic_pure: return "cubic-pure";
  }
  return "?";
}

WitnessSpec make_witness_spec(WitnessCase c, const PrimeModulus& p, unsigned e, std::uint32_t shape_order) {
  const std::uint64_t pv = p.value();
  FrobeniusExponent fe(p, e);
  const std::uint64_t q = fe.q();
  if (pv == 2) throw PreconditionError("witness shapes need an odd characteristic");
  WitnessSpec spec;
  spec.case_tag = c;
  spec.shape_order = shape_order;
  auto exp = [](std::uint64_t v) {
    if (v > 0xffffffffull) throw InputError("witness exponent overflows");
    return static_cast<Exponent>(v);
  };
  if (c == WitnessCase::quadratic) {
    if (e == 0) throw InputError("the quadratic witness needs e >= 1");
    if (shape_order < 2) throw InputError("the quadratic shape needs m >= 2");
    spec.alpha = (q - 3) / 2;
    spec.beta = (q - 1) / 2;
    spec.target = Monomial{exp(q - 2), exp(q - 1), exp(shape_order)};
  } else {
    if (e != 2) throw InputError("cubic witnesses are defined for e = 2 only");
    spec.alpha = witness_beta(pv);
    spec.beta = (q + 1) / 2 - spec.alpha;
    if (c == WitnessCase::cubic_mixed) {
      spec.target = Monomial{exp(q - 2), exp(3 * spec.beta + spec.alpha), exp(shape_order * spec.alpha)};
    } else {
      spec.target = Monomial{exp(q - 2), exp(3 * spec.alpha), exp(shape_order * spec.beta)};
    }
  }
  return spec;
}

Polynomial witness_shape(const RingPtr& ring, WitnessCase c, std::uint32_t shape_order) {
  if (ring->nvars() < 3) throw InputError("witness shapes need three variables");
  Polynomial f = model_variable_power(ring, {{0, 2}}, 1);
  switch (c) {
    case WitnessCase::quadratic:
      f += model_variable_power(ring, {{1, 2}}, 1) + model_variable_power(ring, {{2, shape_order}}, 1);
      break;
    case WitnessCase::cubic_mixed:
      f += model_variable_power(ring, {{1, 3}}, 1) + model_variable_power(ring, {{1, 1}, {2, shape_order}}, 1);
      break;
    case WitnessCase::cubic_pure:
      f += model_variable_power(ring, {{1, 3}}, 1) + model_variable_power(ring, {{2, shape_order}}, 1);
      break;
  }
  return f;
}

namespace {

// Coefficient of target in c * f^k; nullopt when more than `cap` search nodes are needed.
std::optional<std::pair<Residue, std::uint64_t>> power_coefficient_capped(const Polynomial& f, const Polynomial& c,
                                                                          std::uint64_t k, const Monomial& target,
                                                                          std::uint64_t cap) {
  const auto& p = f.modulus();
  const auto terms = f.terms();
  const std::size_t r = terms.size();
  Residue total = 0;
  std::uint64_t hits = 0;
  std::uint64_t nodes = 0;
  std::vector<std::uint64_t> parts(r, 0);
  bool aborted = false;

  std::function<void(std::size_t, std::uint64_t, const Monomial&, Residue)> rec =
      [&](std::size_t idx, std::uint64_t left, const Monomial& rest, Residue weight) {
        if (aborted) return;
        if (++nodes > cap) {
          aborted = true;
          return;
        }
        const auto& t = terms[idx];
        if (idx + 1 == r) {
          if (t.mono.is_one() ? !rest.is_one() : !(t.mono.pow(left) == rest)) return;
          parts[idx] = left;
          Residue coef = p.mul(weight, p.pow(t.coef, left));
          coef = p.mul(coef, multinom_mod_p(k, parts, p));
          total = p.add(total, coef);
          ++hits;
          return;
        }
        Monomial power;  // t.mono^n
        Residue w = weight;
        for (std::uint64_t n = 0; n <= left; ++n) {
          if (n > 0) {
            if (!t.mono.is_one() && power.degree() + t.mono.degree() > rest.degree()) break;
            power = power * t.mono;
            if (!power.divides(rest)) break;
            w = p.mul(w, t.coef);
          }
          parts[idx] = n;
          rec(idx + 1, left - n, rest / power, w);
          if (aborted) return;
        }
      };

  for (const auto& ct : c.terms()) {
    if (!ct.mono.divides(target)) continue;
    if (r == 0) {
      if (k == 0 && ct.mono == target) {
        total = p.add(total, ct.coef);
        ++hits;
      }
      continue;
    }
    rec(0, k, target / ct.mono, ct.coef);
    if (aborted) return std::nullopt;
  }
  return std::make_pair(total, hits);
}

}  // namespace

std::pair<Residue, std::uint64_t> power_coefficient(const Polynomial& f, const Polynomial& c, std::uint64_t k,
                                                    const Monomial& target) {
  auto out = power_coefficient_capped(f, c, k, target, std::numeric_limits<std::uint64_t>::max());
  return *out;
}

WitnessCoefficient witness_coefficient(const WitnessSpec& spec, const Polynomial& shape, const Polynomial& c,
                                       const FrobeniusExponent& e, std::uint64_t enumeration_cap) {
  require_ring_char(shape, e);
  const auto& p = shape.modulus();
  const std::uint64_t q = e.q();
  if (!below_bracket(spec.target, q, shape.ring().nvars())) {
    throw InputError("witness target lies in the bracket power");
  }
  if (spec.case_tag != WitnessCase::quadratic && spec.alpha + spec.beta != (q + 1) / 2) {
    throw InputError("witness exponents must satisfy alpha + beta = (q+1)/2");
  }
  WitnessCoefficient out;
  if (auto enumerated = power_coefficient_capped(shape, c, q - 1, spec.target, enumeration_cap)) {
    if (enumerated->second == 0) throw InputError("no exponent assignment of the shape reaches the witness target");
    out.enumerated = enumerated->first;
    out.assignments = enumerated->second;
  }
  const auto& ring = shape.ring_ptr();
  if (ring->nvars() >= 3 && shape == witness_shape(ring, spec.case_tag, spec.shape_order) &&
      c == Polynomial::variable(ring, 0)) {
    if (spec.case_tag == WitnessCase::quadratic) {
      out.closed_form = p.mul(binom_mod_p(q - 1, (q - 3) / 2, p), static_cast<Residue>(((q + 1) / 2) % p.value()));
    } else {
      out.closed_form = p.mul(binom_mod_p(q - 1, (q - 3) / 2, p), binom_mod_p((q + 1) / 2, spec.alpha, p));
    }
  }
  return out;
}

// ---- tight closure ---------------------------------------------------------------

std::string_view to_string(TcVerdict v) {
  switch (v) {
    case TcVerdict::not_in_star: return "NOT_IN_STAR";
    case TcVerdict::evidence_in_star: return "EVIDENCE_IN_STAR";
    case TcVerdict::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

TightClosureCertificate tc_certificate(const Polynomial& z, const IdealGens& I, const Polynomial& c,
                                       const QuotientCtx& ctx, const std::vector<std::uint64_t>& q_list,
                                       bool c_is_test_element) {
  if (q_list.empty()) throw InputError("tight-closure check needs at least one q");
  for (auto q : q_list) FrobeniusExponent::from_q(z.modulus(), q);
  TightClosureCertificate cert{z, I, c, ctx, {}, {}, TcVerdict::evidence_in_star, std::nullopt, c_is_test_element};
  for (auto q : q_list) {
    auto t0 = std::chrono::steady_clock::now();
    auto B = quotient_basis(bracket_power(I, q), ctx);
    auto v = membership(c * frobenius_power(z, q), B);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    cert.q_checked.push_back(q);
    cert.checks.push_back(TcCheck{q, v.member, B.size(), v.normal_form.size(), ms});
    if (!v.member) {
      cert.failing_q = q;
      cert.verdict = c_is_test_element ? TcVerdict::not_in_star : TcVerdict::inconclusive;
      break;
    }
  }
  return cert;
}

// ---- singular locus and superficial elements ----------------------------------

JacobianReport jacobian_report(const Polynomial& f, std::uint64_t power_bound) {
  std::vector<Polynomial> gens{f};
  for (auto& d : partials(f)) gens.push_back(std::move(d));
  auto B = buchberger(IdealGens(f.ring_ptr(), std::move(gens)), f.ring().order);
  JacobianReport out;
  out.isolated = true;
  for (std::size_t i = 0; i < f.ring().nvars(); ++i) {
    std::optional<std::uint64_t> found;
    const auto x = Polynomial::variable(f.ring_ptr(), i);
    Polynomial power = x;
    for (std::uint64_t k = 1; k <= power_bound; ++k) {
      power = normal_form(power, B);
      if (power.is_zero()) {
        found = k;
        break;
      }
      power = power * x;
    }
    out.min_power.push_back(found);
    if (!found) out.isolated = false;
  }
  return out;
}

bool jacobian_isolated_singularity(const Polynomial& f, std::uint64_t power_bound) {
  return jacobian_report(f, power_bound).isolated;
}

bool superficial_check(const QuadraticJetForm& form, std::size_t i) {
  const auto& ring = form.g_rest.ring_ptr();
  if (i >= ring->nvars()) throw InputError("variable index out of range");
  Monomial sq;
  sq.set(0, 2);
  const Polynomial lead = Polynomial::monomial(ring, sq) + form.g_rest.homogeneous_part(2);
  for (const auto& t : lead.terms()) {
    if (t.mono[i] == 0) return true;
  }
  return false;
}

// ---- classifier ---------------------------------------------------------------------

std::string_view to_string(ClassifierBranch b) {
  switch (b) {
    case ClassifierBranch::case_i: return "CASE_I";
    case ClassifierBranch::case_ii: return "CASE_II";
    case ClassifierBranch::outside_window: return "OUTSIDE_WINDOW";
    case ClassifierBranch::obstruction: return "OBSTRUCTION";
    case ClassifierBranch::not_normal_punctured: return "NOT_NORMAL_PUNCTURED";
  }
  return "?";
}

std::string_view to_string(SplitStatus s) {
  switch (s) {
    case SplitStatus::certificate: return "certificate";
    case SplitStatus::no_witness: return "no_witness";
    case SplitStatus::beyond_ebudget: return "beyond_ebudget";
    case SplitStatus::budget_exhausted: return "budget_exhausted";
    case SplitStatus::not_run: return "not_run";
  }
  return "?";
}

namespace {

// Pseudo-random invertible changes among X_2..X_n (identity first) until every
// target polynomial has a nonzero X_2^order coefficient in its initial form.
LinearChange generic_tail_change(const RingPtr& ring, const std::vector<std::pair<Polynomial, std::uint64_t>>& targets,
                                 std::uint64_t seed) {
  const std::size_t n = ring->nvars();
  const auto& p = ring->modulus;
  Lcg rng(seed ^ 0x5bd1e995ull);
  auto works = [&](const LinearChange& c) {
    for (const auto& [h, order] : targets) {
      Monomial pure;
      pure.set(2, static_cast<Exponent>(order));
      if (substitute(initial_form(h), c.images()).coefficient(pure) == 0) return false;
    }
    return true;
  };
  LinearChange change(ring);
  if (works(change)) return change;
  for (unsigned attempt = 0; attempt < 500; ++attempt) {
    std::vector<std::vector<Residue>> m(n, std::vector<Residue>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    for (std::size_t i = 2; i < n; ++i) {
      for (std::size_t j = 2; j < n; ++j) m[i][j] = static_cast<Residue>(rng.next() % p.value());
    }
    if (matrix_rank(m, p) != n) continue;
    LinearChange candidate(ring, m);
    if (works(candidate)) return candidate;
  }
  throw PreconditionError("no change among X_2..X_d exposes the pure X_2 power");
}

// Coefficient of X_2^order once X_3..X_d are set to zero.
Residue section_coefficient(const Polynomial& h, std::uint64_t order) {
  Monomial pure;
  pure.set(2, static_cast<Exponent>(order));
  return h.coefficient(pure);
}

RingPtr section_ring(const Ring& ring) {
  std::vector<std::string> names(ring.vars.names().begin(), ring.vars.names().begin() + 3);
  return make_ring(ring.modulus.value(), names, ring.order);
}

void run_split(ClassifierReport& report, const Polynomial& model, unsigned e, unsigned e_budget,
               const SplitOptions& split) {
  report.model = model;
  const auto& ring = model.ring_ptr();
  FrobeniusExponent fe(model.modulus(), e);
  report.e_used = fe;
  if (e > e_budget) {
    report.split_status = SplitStatus::beyond_ebudget;
    return;
  }
  const auto x0 = Polynomial::variable(ring, 0);
  try {
    auto cert = glassbrenner_split_test(model, x0, fe, split);
    if (!cert) {
      report.split_status = SplitStatus::no_witness;
      return;
    }
    // R_{X_0} is regular once X_0 lies in the Jacobian ideal of the model.
    std::vector<Polynomial> jac{model};
    for (auto& d : partials(model)) jac.push_back(std::move(d));
    if (quotient_membership(x0, IdealGens(ring, std::move(jac)), QuotientCtx::trivial(ring)).member) {
      cert->regular_locus_attested = true;
      cert->regular_locus_basis = "jacobian";
    }
    report.certificate = std::move(cert);
    report.split_status = SplitStatus::certificate;
  } catch (const BudgetExceeded&) {
    report.split_status = SplitStatus::budget_exhausted;
  }
}

}  // namespace

ClassifierReport hypdeg2_classifier(const Polynomial& f, JetPrecision D, unsigned e_budget, std::uint64_t seed,
                                    const SplitOptions& split) {
  const std::uint64_t p = f.modulus().value();
  if (p == 2) throw PreconditionError("the classifier needs an odd characteristic");
  if (f.is_zero() || ord(f) != 2) throw PreconditionError("the classifier needs ord(f) = 2");

  ClassifierReport report{ClassifierBranch::obstruction, weierstrass_normalize_quadratic(f, D, seed), {}, {}, {}, {},
                          {}, {}, {}, {}, SplitStatus::not_run, {}, {}, {}, {}};
  const auto& ring = f.ring_ptr();
  const std::size_t n = ring->nvars();
  if (p < 7) report.warnings.push_back("p < 7: the branch analysis is only claimed for p >= 7");
  report.assumptions.push_back("normal forms hold modulo terms of total degree >= " + std::to_string(D.D));
  for (std::size_t i = 1; i < n; ++i) report.superficial.push_back(superficial_check(report.form, i));

  const Polynomial& g = report.form.g_rest;
  if (g.is_zero()) {
    report.warnings.push_back("g vanishes below the jet precision; f is a unit times X_0^2 to this order");
    return report;
  }
  const std::uint64_t k = ord(g);
  report.g_order = k;
  if (k >= 4) return report;

  const std::string section_note =
      "the three-variable section X_3 = ... = X_d = 0 is taken after a generic change; "
      "lifting the splitting from the section to the full ring is assumed, not verified";
  const std::string unit_note = "units are replaced by their constant terms in the model polynomial";

  if (k == 2) {
    PreparedJet prep = prepare_jet(g, 1, 2, D, seed);
    Polynomial h = prep.coeffs[0];
    if (h.is_zero()) {
      report.h = h;
      report.branch = ClassifierBranch::not_normal_punctured;
      return report;
    }
    const std::uint64_t m = ord(h);
    report.m_order = m;
    report.branch = ClassifierBranch::case_i;
    LinearChange tail = generic_tail_change(ring, {{h, m}}, seed);
    h = apply_linear_change(h, tail, D);
    report.h = h;
    const Residue u1 = prep.unit.constant_term();
    const Residue a = section_coefficient(h, m);
    auto sring = section_ring(*ring);
    const auto& pm = f.modulus();
    Polynomial model = model_variable_power(sring, {{0, 2}}, 1) + model_variable_power(sring, {{1, 2}}, u1) +
                       model_variable_power(sring, {{2, static_cast<Exponent>(m)}}, pm.mul(u1, a));
    report.assumptions.push_back(section_note);
    report.assumptions.push_back(unit_note);
    run_split(report, model, static_cast<unsigned>(m + 1), e_budget, split);
    return report;
  }

  // k == 3
  DepressedCubic cubic = depress_cubic(g, D, seed);
  report.h1 = cubic.h1;
  report.h2 = cubic.h2;
  if (cubic.h1.is_zero() && cubic.h2.is_zero()) {
    report.branch = ClassifierBranch::not_normal_punctured;
    return report;
  }
  if (!cubic.h1.is_zero()) report.m_order = ord(cubic.h1);
  if (!cubic.h2.is_zero()) report.n_order = ord(cubic.h2);
  const bool in_window = (report.m_order && *report.m_order <= 3) || (report.n_order && *report.n_order <= 5);
  if (!in_window) {
    report.branch = ClassifierBranch::outside_window;
    return report;
  }
  report.branch = ClassifierBranch::case_ii;
  std::vector<std::pair<Polynomial, std::uint64_t>> targets;
  if (report.m_order) targets.emplace_back(cubic.h1, *report.m_order);
  if (report.n_order) targets.emplace_back(cubic.h2, *report.n_order);
  LinearChange tail = generic_tail_change(ring, targets, seed);
  Polynomial h1 = apply_linear_change(cubic.h1, tail, D);
  Polynomial h2 = apply_linear_change(cubic.h2, tail, D);
  report.h1 = h1;
  report.h2 = h2;
  const auto& pm = f.modulus();
  const Residue u1 = cubic.unit.constant_term();
  auto sring = section_ring(*ring);
  Polynomial model = model_variable_power(sring, {{0, 2}}, 1) + model_variable_power(sring, {{1, 3}}, u1);
  if (report.m_order) {
    model += model_variable_power(sring, {{1, 1}, {2, static_cast<Exponent>(*report.m_order)}},
                                  pm.mul(u1, section_coefficient(h1, *report.m_order)));
  }
  if (report.n_order) {
    model += model_variable_power(sring, {{2, static_cast<Exponent>(*report.n_order)}},
                                  pm.mul(u1, section_coefficient(h2, *report.n_order)));
  }
  report.assumptions.push_back(section_note);
  report.assumptions.push_back(unit_note);
  run_split(report, model, 2, e_budget, split);
  return report;
}

}  // namespace charp
