#include "charp/report.hpp"

#include "charp/errors.hpp"
#include "charp/parse.hpp"

namespace charp {

namespace {

Json opt(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }
Json opt(const std::optional<std::int64_t>& v) { return v ? Json(*v) : Json(nullptr); }
Json opt(const std::optional<Polynomial>& v) { return v ? Json(to_string(*v)) : Json(nullptr); }

Json big(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(x);
  }
  return x.str();
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("report field '") + key + "' is missing");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("report field '") + key + "' has the wrong type");
  }
}

Json change_to_json(const LinearChange& c) {
  Json images = Json::array();
  for (const auto& img : c.images()) images.push_back(to_string(img));
  return Json{{"matrix", c.matrix()}, {"images", images}};
}

}  // namespace

VarSet default_vars(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return VarSet(std::move(names));
}

Json to_json(const Ring& ring) {
  return Json{{"p", ring.modulus.value()}, {"vars", ring.vars.names()}, {"order", std::string(to_string(ring.order))}};
}

RingPtr ring_from_json(const Json& j) {
  return make_ring(field<std::uint64_t>(j, "p"), field<std::vector<std::string>>(j, "vars"),
                   parse_order(field<std::string>(j, "order")));
}

Json to_json(const Monomial& m, std::size_t nvars) {
  Json out = Json::array();
  for (std::size_t i = 0; i < nvars; ++i) out.push_back(m[i]);
  return out;
}

Monomial monomial_from_json(const Json& j, std::size_t nvars) {
  if (!j.is_array() || j.size() != nvars) throw InputError("exponent vector has the wrong length");
  Monomial m;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (!j[i].is_number_unsigned()) throw InputError("exponents must be non-negative integers");
    m.set(i, j[i].get<Exponent>());
  }
  return m;
}

Json to_json(const MonomialIdeal& I, const VarSet& vars) {
  Json gens = Json::array();
  for (const auto& g : I.gens()) gens.push_back(to_json(g, I.nvars()));
  return Json{{"text", to_string(I, vars)}, {"gens", gens}};
}

MonomialIdeal monomial_ideal_from_json(const Json& j, std::size_t nvars) {
  std::vector<Monomial> gens;
  for (const auto& g : field<Json>(j, "gens")) gens.push_back(monomial_from_json(g, nvars));
  return MonomialIdeal(nvars, std::move(gens));
}

Json to_json(const SplitCertificate& cert) {
  const auto& ring = cert.f.ring();
  return Json{{"kind", "split"},
              {"ring", to_json(ring)},
              {"f", to_string(cert.f)},
              {"c", to_string(cert.c)},
              {"e", cert.e.e()},
              {"q", cert.e.q()},
              {"witness", to_json(cert.witness, ring.nvars())},
              {"witness_text", monomial_to_string(cert.witness, ring.vars)},
              {"coefficient", cert.coefficient},
              {"regular_locus_attested", cert.regular_locus_attested},
              {"regular_locus_basis", cert.regular_locus_basis},
              {"surviving_terms", cert.surviving_terms},
              {"work", cert.work}};
}

SplitCertificate split_certificate_from_json(const Json& j) {
  if (field<std::string>(j, "kind") != "split") throw InputError("not a split certificate");
  auto ring = ring_from_json(field<Json>(j, "ring"));
  Polynomial f = parse_polynomial(ring, field<std::string>(j, "f"));
  Polynomial c = parse_polynomial(ring, field<std::string>(j, "c"));
  FrobeniusExponent e(ring->modulus, field<unsigned>(j, "e"));
  if (j.contains("q") && j.at("q") != e.q()) throw InputError("q does not match p^e");
  return SplitCertificate{f,
                          c,
                          e,
                          monomial_from_json(field<Json>(j, "witness"), ring->nvars()),
                          field<Residue>(j, "coefficient"),
                          field<bool>(j, "regular_locus_attested"),
                          field<std::string>(j, "regular_locus_basis"),
                          j.value("surviving_terms", std::uint64_t{0}),
                          j.value("work", std::uint64_t{0})};
}

Json to_json(const TightClosureCertificate& cert) {
  Json moduli = Json::array();
  for (const auto& m : cert.ctx.moduli()) moduli.push_back(to_string(m));
  Json gens = Json::array();
  for (const auto& g : cert.I.gens()) gens.push_back(to_string(g));
  Json checks = Json::array();
  for (const auto& c : cert.checks) {
    checks.push_back(Json{{"q", c.q},
                          {"member", c.member},
                          {"basis_size", c.basis_size},
                          {"remainder_terms", c.remainder_terms},
                          {"millis", c.millis}});
  }
  return Json{{"kind", "tc"},
              {"ring", to_json(cert.z.ring())},
              {"z", to_string(cert.z)},
              {"I", gens},
              {"c", to_string(cert.c)},
              {"moduli", moduli},
              {"order", std::string(to_string(cert.ctx.order()))},
              {"q_checked", cert.q_checked},
              {"checks", checks},
              {"verdict", std::string(to_string(cert.verdict))},
              {"failing_q", opt(cert.failing_q)},
              {"c_is_test_element", cert.c_is_test_element}};
}

Json to_json(const WitnessSpec& spec, const WitnessCoefficient& w, const VarSet& vars) {
  return Json{{"case", std::string(to_string(spec.case_tag))},
              {"alpha", spec.alpha},
              {"beta", spec.beta},
              {"shape_order", spec.shape_order},
              {"target", monomial_to_string(spec.target, vars)},
              {"enumerated", w.enumerated ? Json(*w.enumerated) : Json(nullptr)},
              {"closed_form", w.closed_form ? Json(*w.closed_form) : Json(nullptr)},
              {"assignments", w.assignments},
              {"agree", w.agree()}};
}

Json to_json(const BinomialUnitReport& rep) {
  auto entry = [](const BinomialUnitEntry& e) {
    return Json{{"part", e.part}, {"e", e.e}, {"top", e.top}, {"bottom", e.bottom}, {"value", e.value}};
  };
  Json samples = Json::array(), violations = Json::array();
  for (const auto& s : rep.samples) samples.push_back(entry(s));
  for (const auto& v : rep.violations) violations.push_back(entry(v));
  return Json{{"p", rep.p},
              {"e_max", rep.e_max},
              {"checked", rep.checked},
              {"part2_skipped", rep.part2_skipped},
              {"part3_skipped", rep.part3_skipped},
              {"beta", rep.part3_beta},
              {"samples", samples},
              {"violations", violations}};
}

Json to_json(const QuadraticJetForm& form) {
  return Json{{"original", to_string(form.original)},
              {"g", to_string(form.g_rest)},
              {"unit", to_string(form.unit)},
              {"case", std::string(to_string(form.case_tag))},
              {"m", opt(form.m_order)},
              {"n", opt(form.n_order)},
              {"change", change_to_json(form.change)},
              {"jet", form.precision.D},
              {"attempts", form.attempts}};
}

Json to_json(const ClassifierReport& rep) {
  return Json{{"branch", std::string(to_string(rep.branch))},
              {"form", to_json(rep.form)},
              {"g_order", opt(rep.g_order)},
              {"m", opt(rep.m_order)},
              {"n", opt(rep.n_order)},
              {"h", opt(rep.h)},
              {"h1", opt(rep.h1)},
              {"h2", opt(rep.h2)},
              {"model", opt(rep.model)},
              {"e", rep.e_used ? Json(rep.e_used->e()) : Json(nullptr)},
              {"split_status", std::string(to_string(rep.split_status))},
              {"certificate", rep.certificate ? to_json(*rep.certificate) : Json(nullptr)},
              {"superficial", rep.superficial},
              {"assumptions", rep.assumptions},
              {"warnings", rep.warnings}};
}

Json to_json(const JacobianReport& rep) {
  Json powers = Json::array();
  for (const auto& k : rep.min_power) powers.push_back(opt(k));
  return Json{{"isolated", rep.isolated}, {"min_power", powers}};
}

Json to_json(const NewtonPolyhedron& poly) {
  Json hs = Json::array();
  for (const auto& h : poly.halfspaces) {
    Json a = Json::array();
    for (const auto& x : h.a) a.push_back(big(x));
    hs.push_back(Json{{"a", a}, {"b", big(h.b)}});
  }
  return Json{{"generators", to_json(poly.generators, default_vars(poly.generators.nvars()))}, {"halfspaces", hs}};
}

Json to_json(const FiltrationTable& table, const VarSet& vars) {
  Json rows = Json::array();
  for (const auto& r : table.rows) rows.push_back(to_string(r, vars));
  return Json{{"strategy", std::string(to_string(table.strategy))},
              {"base", to_json(table.base, vars)},
              {"horizon", table.horizon},
              {"rows", rows}};
}

Json to_json(const ReductionReport& rep, const VarSet& vars) {
  return Json{{"J", to_json(rep.J, vars)}, {"r", opt(rep.r)}, {"stabilized", rep.stabilized}, {"equal_at", rep.equal_at}};
}

Json to_json(const HilbertData& h) {
  return Json{{"dims", h.dims},
              {"numerator", h.numerator},
              {"d", h.d},
              {"a_invariant", opt(h.a_invariant)},
              {"stabilized", h.stabilized},
              {"cm_assumed", h.cm_assumed}};
}

Json to_json(const AInvariantCheck& c, const VarSet& vars) {
  return Json{{"verdict", std::string(to_string(c.verdict))},
              {"reduction", to_json(c.reduction, vars)},
              {"hilbert", to_json(c.hilbert)},
              {"d", c.d}};
}

Json to_json(const VvCheck& c, const VarSet& vars) {
  return Json{{"holds", c.holds}, {"lhs", to_string(c.lhs, vars)}, {"rhs", to_string(c.rhs, vars)}};
}

}  // namespace charp
