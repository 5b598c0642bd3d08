#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "charp/errors.hpp"
#include "charp/filtration.hpp"
#include "charp/fsing.hpp"
#include "charp/groebner.hpp"
#include "charp/parse.hpp"
#include "charp/report.hpp"
#include "charp/suite.hpp"

namespace py = pybind11;
using namespace charp;

namespace {

using ExpTuple = std::vector<Exponent>;

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) { return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

MonomialIdeal ideal_from_tuples(const std::vector<ExpTuple>& gens, std::size_t nvars) {
  if (nvars == 0 || nvars > kMaxVars) throw InputError("variable count out of range");
  std::vector<Monomial> out;
  for (const auto& g : gens) {
    if (g.size() != nvars) throw InputError("exponent tuple has the wrong length");
    out.emplace_back(std::span<const Exponent>(g.data(), g.size()));
  }
  return MonomialIdeal(nvars, std::move(out));
}

std::size_t infer_nvars(const std::vector<ExpTuple>& gens) {
  if (gens.empty()) throw InputError("at least one generator is required");
  return gens.front().size();
}

std::vector<ExpTuple> ideal_to_tuples(const MonomialIdeal& I) {
  std::vector<ExpTuple> out;
  for (const auto& g : I.gens()) {
    ExpTuple t(I.nvars());
    for (std::size_t i = 0; i < I.nvars(); ++i) t[i] = g[i];
    out.push_back(std::move(t));
  }
  return out;
}

Polynomial coerce(const RingPtr& ring, const py::object& o) {
  if (py::isinstance<Polynomial>(o)) return o.cast<Polynomial>();
  if (py::isinstance<py::str>(o)) return parse_polynomial(ring, o.cast<std::string>());
  if (py::isinstance<py::int_>(o)) {
    std::int64_t c = o.cast<std::int64_t>();
    return Polynomial::constant(ring, c);
  }
  throw InputError("expected a Polynomial, a string or an integer");
}

}  // namespace

PYBIND11_MODULE(_charp, m) {
  m.doc() = "Exact prime-characteristic computations over F_p[X_0, ..., X_d]";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ArithmeticError);
  py::register_exception<UnsupportedCharacteristic>(m, "UnsupportedCharacteristic", PyExc_ArithmeticError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  (void)input_error;

  py::class_<Ring, std::shared_ptr<Ring>>(m, "Ring")
      .def(py::init([](std::uint64_t p, std::vector<std::string> vars, const std::string& order) {
             return std::const_pointer_cast<Ring>(make_ring(p, std::move(vars), parse_order(order)));
           }),
           py::arg("p"), py::arg("vars"), py::arg("order") = "grevlex")
      .def_property_readonly("p", [](const Ring& r) { return r.modulus.value(); })
      .def_property_readonly("vars", [](const Ring& r) { return r.vars.names(); })
      .def_property_readonly("order", [](const Ring& r) { return std::string(to_string(r.order)); })
      .def("parse",
           [](const std::shared_ptr<Ring>& r, const std::string& text) { return parse_polynomial(r, text); })
      .def("variable", [](const std::shared_ptr<Ring>& r, std::size_t i) { return Polynomial::variable(r, i); })
      .def("__repr__", [](const Ring& r) {
        std::string vars;
        for (const auto& v : r.vars.names()) vars += (vars.empty() ? "" : ",") + v;
        return "Ring(p=" + std::to_string(r.modulus.value()) + ", vars=" + vars + ")";
      });

  py::class_<Polynomial>(m, "Polynomial")
      .def_property_readonly("ring", [](const Polynomial& f) { return std::const_pointer_cast<Ring>(f.ring_ptr()); })
      .def("terms",
           [](const Polynomial& f) {
             std::vector<std::pair<ExpTuple, Residue>> out;
             for (const auto& t : f.terms()) {
               ExpTuple e(f.ring().nvars());
               for (std::size_t i = 0; i < e.size(); ++i) e[i] = t.mono[i];
               out.emplace_back(std::move(e), t.coef);
             }
             return out;
           })
      .def("is_zero", &Polynomial::is_zero)
      .def("derivative", [](const Polynomial& f, std::size_t i) { return derivative(f, i); })
      .def("frobenius", [](const Polynomial& f, std::uint64_t q) { return frobenius_power(f, q); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__pow__", [](const Polynomial& f, std::uint64_t n) { return pow(f, n); })
      .def("__str__", [](const Polynomial& f) { return to_string(f); })
      .def("__repr__", [](const Polynomial& f) { return "Polynomial('" + to_string(f) + "')"; });

  m.def("parse_input", [](const std::string& text) {
    auto doc = parse_input(text);
    py::dict bindings;
    for (const auto& name : doc.names) bindings[py::str(name)] = doc.bindings.at(name);
    return py::make_tuple(std::const_pointer_cast<Ring>(doc.decl.ring), doc.decl.jet.D, bindings);
  });

  m.def("binom", [](std::uint64_t a, std::uint64_t b, std::uint64_t p) { return binom_mod_p(a, b, PrimeModulus(p)); },
        py::arg("m"), py::arg("n"), py::arg("p"));

  m.def("fedder_fpure", &fedder_fpure);
  m.def("fedder_certificate", [](const Polynomial& f) -> py::object {
    auto cert = fedder_certificate(f);
    return cert ? to_py(to_json(*cert)) : py::none();
  });
  m.def(
      "split_test",
      [](const Polynomial& f, const py::object& c, unsigned e, std::uint64_t budget, bool incremental,
         bool regular_locus) -> py::object {
        SplitOptions opts;
        opts.budget = budget;
        opts.incremental = incremental;
        opts.regular_locus_asserted = regular_locus;
        auto cert = glassbrenner_split_test(f, coerce(f.ring_ptr(), c), FrobeniusExponent(f.modulus(), e), opts);
        return cert ? to_py(to_json(*cert)) : py::none();
      },
      py::arg("f"), py::arg("c"), py::arg("e"), py::arg("budget") = SplitOptions{}.budget,
      py::arg("incremental") = true, py::arg("regular_locus") = false);
  m.def("verify_split_certificate",
        [](const py::object& cert) { return verify_split_certificate(split_certificate_from_json(from_py(cert))); });

  m.def(
      "tc_certificate",
      [](const Polynomial& z, const std::vector<Polynomial>& I, const py::object& c, const std::vector<Polynomial>& moduli,
         const std::vector<std::uint64_t>& q_list, bool test_element) {
        const auto& ring = z.ring_ptr();
        QuotientCtx ctx = moduli.empty() ? QuotientCtx::trivial(ring) : QuotientCtx(ring, moduli);
        return to_py(to_json(tc_certificate(z, IdealGens(ring, I), coerce(ring, c), ctx, q_list, test_element)));
      },
      py::arg("z"), py::arg("I"), py::arg("c") = 1, py::arg("moduli") = std::vector<Polynomial>{},
      py::arg("q_list") = std::vector<std::uint64_t>{}, py::arg("test_element") = false);

  m.def("jacobian_isolated_singularity", &jacobian_isolated_singularity, py::arg("f"), py::arg("power_bound") = 8);
  m.def(
      "classify",
      [](const Polynomial& f, std::uint32_t jet, unsigned ebudget, std::uint64_t seed) {
        return to_py(to_json(hypdeg2_classifier(f, JetPrecision(jet), ebudget, seed)));
      },
      py::arg("f"), py::arg("jet") = 12, py::arg("ebudget") = 4, py::arg("seed") = 0);

  m.def("integral_closure", [](const std::vector<ExpTuple>& gens) {
    return ideal_to_tuples(integral_closure_monomial(ideal_from_tuples(gens, infer_nvars(gens))));
  });
  m.def("newton_polyhedron", [](const std::vector<ExpTuple>& gens) {
    return to_py(to_json(newton_polyhedron(ideal_from_tuples(gens, infer_nvars(gens)))));
  });
  m.def(
      "hilbert",
      [](const std::vector<ExpTuple>& gens, const std::string& strategy, std::uint64_t horizon) {
        auto I = ideal_from_tuples(gens, infer_nvars(gens));
        return to_py(to_json(hilbert_function_G(filtration_table(I, parse_strategy(strategy), horizon))));
      },
      py::arg("gens"), py::arg("strategy") = "adic", py::arg("horizon") = kDefaultHorizon);
  m.def(
      "reduction_number",
      [](const std::vector<ExpTuple>& gens, std::optional<std::vector<ExpTuple>> J, const std::string& strategy,
         std::uint64_t horizon) {
        const auto n = infer_nvars(gens);
        auto I = ideal_from_tuples(gens, n);
        auto table = filtration_table(I, parse_strategy(strategy), horizon);
        return to_py(to_json(reduction_number(table, J ? ideal_from_tuples(*J, n) : I), default_vars(n)));
      },
      py::arg("gens"), py::arg("J") = py::none(), py::arg("strategy") = "adic", py::arg("horizon") = kDefaultHorizon);
  m.def(
      "vv_identity",
      [](const std::vector<ExpTuple>& gens, const std::vector<ExpTuple>& params, std::uint64_t k, std::uint64_t l) {
        const auto n = infer_nvars(gens);
        auto res = check_vv_identity(ideal_from_tuples(gens, n), ideal_from_tuples(params, n), k, l);
        return py::make_tuple(res.holds, ideal_to_tuples(res.lhs), ideal_to_tuples(res.rhs));
      },
      py::arg("gens"), py::arg("params"), py::arg("k"), py::arg("l"));

  m.def("suite_ids", &suite_ids);
  m.def(
      "run_suite",
      [](std::vector<std::string> only, std::uint64_t qmax, unsigned ebudget, std::uint64_t seed, unsigned jobs) {
        SuiteOptions o;
        o.only = std::move(only);
        o.qmax = qmax;
        o.ebudget = ebudget;
        o.seed = seed;
        o.jobs = jobs;
        SuiteReport r;
        {
          py::gil_scoped_release release;
          r = run_reference_suite(o);
        }
        return to_py(to_json(r));
      },
      py::arg("only") = std::vector<std::string>{}, py::arg("qmax") = 16, py::arg("ebudget") = 4, py::arg("seed") = 0,
      py::arg("jobs") = 1);
  m.def("replay", [](const py::object& report) {
    Json j = from_py(report);
    ReplayResult r;
    {
      py::gil_scoped_release release;
      r = replay_report(j);
    }
    return to_py(to_json(r));
  });
}
