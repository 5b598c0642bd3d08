#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "charp/errors.hpp"
#include "charp/filtration.hpp"
#include "charp/fsing.hpp"
#include "charp/groebner.hpp"
#include "charp/parse.hpp"
#include "charp/report.hpp"
#include "charp/suite.hpp"

using namespace charp;

namespace {

constexpr int kExitInputError = 3;

struct Globals {
  std::string emit = "text";
  std::string order;
  std::uint32_t jet = 0;
  std::uint64_t seed = 0;
};

std::string read_source(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses the document and applies the --order / --jet overrides.
InputDocument load(const std::string& path, const Globals& g) {
  std::string text = read_source(path);
  if (g.order.empty() && g.jet == 0) return parse_input(text);
  // Rewrite the header line in place so line numbers in later errors stay valid.
  std::size_t begin = 0, line_no = 1;
  while (begin < text.size()) {
    std::size_t end = std::min(text.find('\n', begin), text.size());
    std::string_view line(text.data() + begin, end - begin);
    auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      RingDecl decl = parse_ring_header(line, line_no);
      if (!g.order.empty()) decl.ring = with_order(decl.ring, parse_order(g.order));
      if (g.jet > 0) decl.jet = JetPrecision(g.jet);
      text.replace(begin, end - begin, to_string(decl));
      break;
    }
    begin = end + 1;
    ++line_no;
  }
  return parse_input(text);
}

// A binding name, or else polynomial text over the document's ring.
Polynomial poly_arg(const InputDocument& doc, const std::string& arg) {
  return doc.has(arg) ? doc.poly(arg) : parse_polynomial(doc.decl.ring, arg);
}

MonomialIdeal monomial_binding(const InputDocument& doc, const std::string& name) {
  IdealGens I(doc.decl.ring, doc.list(name));
  if (!I.is_monomial()) throw InputError("'" + name + "' must be generated by monomials");
  return I.to_monomial();
}

int emit(const Globals& g, const Json& j, const std::string& text, int code) {
  if (g.emit == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  return code;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

template <class T>
std::string list_text(const std::vector<T>& v) {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(std::to_string(x));
  return join(parts, ", ");
}

std::string hilbert_text(const HilbertData& h) {
  std::ostringstream os;
  os << "dims: " << list_text(h.dims) << "\n";
  os << "numerator: " << list_text(h.numerator) << "\n";
  os << "a-invariant: " << (h.a_invariant ? std::to_string(*h.a_invariant) : "unstabilized")
     << (h.cm_assumed ? " (Cohen-Macaulay assumed)" : "") << "\n";
  return os.str();
}

std::string suite_text(const SuiteReport& report) {
  std::ostringstream os;
  for (const auto& e : report.entries) {
    os << std::left << std::setw(13) << to_string(e.status) << std::setw(24) << e.id << std::right << std::setw(10)
       << std::fixed << std::setprecision(1) << e.runtime_ms << " ms  " << e.detail << "\n";
  }
  os << "overall: " << to_string(report.overall()) << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prime-characteristic singularity certificates and monomial filtration invariants"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--emit", g.emit, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--order", g.order, "Monomial order override")->check(CLI::IsMember({"lex", "grevlex"}));
  app.add_option("--jet", g.jet, "Jet precision override");
  app.add_option("--seed", g.seed, "Seed for coordinate-change search and random suites");

  std::string input = "-";
  std::function<int()> action;

  auto* binom = app.add_subcommand("binom", "C(m, n) mod p by Lucas digits");
  std::uint64_t bm = 0, bn = 0, bp = 2;
  binom->add_option("m", bm)->required();
  binom->add_option("n", bn)->required();
  binom->add_option("-p,--prime", bp)->required();
  binom->callback([&] {
    action = [&] {
      PrimeModulus p(bp);
      Residue v = binom_mod_p(bm, bn, p);
      auto dm = base_p_digits(bm, p).digits, dn = base_p_digits(bn, p).digits;
      Json j{{"m", bm}, {"n", bn}, {"p", bp}, {"value", v}, {"digits_m", dm}, {"digits_n", dn}};
      return emit(g, j, "C(" + std::to_string(bm) + ", " + std::to_string(bn) + ") = " + std::to_string(v) +
                            " mod " + std::to_string(bp) + "\n", 0);
    };
  });

  std::string fname = "f";
  auto* fpure = app.add_subcommand("fpure", "Fedder's criterion: f^(p-1) outside m^[p]");
  fpure->add_option("input", input, "Input document ('-' for stdin)");
  fpure->add_option("--f", fname, "Binding holding the hypersurface");
  fpure->callback([&] {
    action = [&] {
      auto doc = load(input, g);
      auto cert = fedder_certificate(doc.poly(fname));
      Json j{{"fpure", cert.has_value()}, {"certificate", cert ? to_json(*cert) : Json(nullptr)}};
      std::string text = cert ? "F-pure: witness " + monomial_to_string(cert->witness, doc.decl.ring->vars) +
                                    " with coefficient " + std::to_string(cert->coefficient) + "\n"
                              : "not F-pure: f^(p-1) lies in m^[p]\n";
      return emit(g, j, text, cert ? 0 : 1);
    };
  });

  std::string cname;
  unsigned ebudget = 4;
  bool assert_regular = false;
  auto* fregular = app.add_subcommand("fregular", "Splitting witness c f^(q-1) outside m^[q] for q = p, ..., p^ebudget");
  fregular->add_option("input", input, "Input document ('-' for stdin)");
  fregular->add_option("--f", fname, "Binding holding the hypersurface");
  fregular->add_option("--c", cname, "Binding or polynomial for c (default: the first variable)");
  fregular->add_option("--ebudget", ebudget, "Largest Frobenius exponent tried");
  fregular->add_flag("--regular-locus", assert_regular, "Assert that R localized at c is regular");
  fregular->callback([&] {
    action = [&] {
      auto doc = load(input, g);
      const auto& f = doc.poly(fname);
      auto c = cname.empty() ? Polynomial::variable(doc.decl.ring, 0) : poly_arg(doc, cname);
      SplitOptions opts;
      opts.regular_locus_asserted = assert_regular;
      Json tried = Json::array();
      for (unsigned e = 1; e <= ebudget; ++e) {
        try {
          auto cert = glassbrenner_split_test(f, c, FrobeniusExponent(f.modulus(), e), opts);
          tried.push_back(e);
          if (cert) {
            Json j{{"certificate", to_json(*cert)}, {"tried", tried}};
            return emit(g, j,
                        "splitting witness at e = " + std::to_string(e) + ": " +
                            monomial_to_string(cert->witness, doc.decl.ring->vars) + " (regular locus " +
                            cert->regular_locus_basis + ")\n",
                        0);
          }
        } catch (const BudgetExceeded& ex) {
          return emit(g, Json{{"certificate", nullptr}, {"tried", tried}, {"budget", ex.what()}},
                      std::string("inconclusive: ") + ex.what() + "\n", 2);
        }
      }
      return emit(g, Json{{"certificate", nullptr}, {"tried", tried}},
                  "no witness up to e = " + std::to_string(ebudget) + "\n", 2);
    };
  });

  auto* normalize = app.add_subcommand("normalize", "Weierstrass normal form and order-two branch analysis");
  normalize->add_option("input", input, "Input document ('-' for stdin)");
  normalize->add_option("--f", fname, "Binding holding the series");
  normalize->add_option("--ebudget", ebudget, "Largest Frobenius exponent for the model splitting test");
  normalize->callback([&] {
    action = [&] {
      auto doc = load(input, g);
      const auto& f = doc.poly(fname);
      auto rep = hypdeg2_classifier(f, doc.decl.jet, ebudget, g.seed);
      std::ostringstream os;
      os << "normal form: unit * (" << doc.decl.ring->vars[0] << "^2 + " << to_string(rep.form.g_rest) << ")\n";
      os << "branch: " << to_string(rep.branch) << "\n";
      if (rep.model) os << "model: " << to_string(*rep.model) << "\n";
      os << "split: " << to_string(rep.split_status) << "\n";
      for (const auto& a : rep.assumptions) os << "assumes: " << a << "\n";
      for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
      return emit(g, to_json(rep), os.str(), 0);
    };
  });

  std::string iname = "I", jname, strategy = "adic";
  std::uint64_t horizon = kDefaultHorizon;
  auto* closure = app.add_subcommand("closure", "Integral closure of a monomial ideal via its Newton polyhedron");
  closure->add_option("input", input, "Input document ('-' for stdin)");
  closure->add_option("--I", iname, "Binding holding the monomial ideal");
  closure->callback([&] {
    action = [&] {
      auto doc = load(input, g);
      auto I = monomial_binding(doc, iname);
      auto poly = newton_polyhedron(I);
      auto c = integral_closure_monomial(I);
      const auto& vars = doc.decl.ring->vars;
      Json j{{"closure", to_json(c, vars)}, {"polyhedron", to_json(poly)}};
      return emit(g, j, "closure: " + to_string(c, vars) + "\n", 0);
    };
  });

  auto* redno = app.add_subcommand("redno", "Reduction number of a filtration with respect to J");
  redno->add_option("input", input, "Input document ('-' for stdin)");
  redno->add_option("--I", iname, "Binding holding the base ideal");
  redno->add_option("--J", jname, "Binding holding the candidate reduction (default: I)");
  redno->add_option("--strategy", strategy, "adic or closure");
  redno->add_option("--horizon", horizon, "Largest filtration index");
  redno->callback([&] {
    action = [&] {
      auto doc = load(input, g);
      auto I = monomial_binding(doc, iname);
      auto J = jname.empty() ? I : monomial_binding(doc, jname);
      auto table = filtration_table(I, parse_strategy(strategy), horizon);
      auto rep = reduction_number(table, J);
      const auto& vars = doc.decl.ring->vars;
      Json j{{"table", to_json(table, vars)}, {"reduction", to_json(rep, vars)}};
      std::string text = rep.r ? "r = " + std::to_string(*rep.r) + "\n"
                               : "no stabilization up to n = " + std::to_string(horizon) + "\n";
      return emit(g, j, text, rep.stabilized ? 0 : 2);
    };
  });

  bool hypersurface = false;
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert data of the associated graded ring");
  hilbert->add_option("input", input, "Input document ('-' for stdin)");
  hilbert->add_option("--I", iname, "Binding holding the base ideal");
  hilbert->add_option("--strategy", strategy, "adic or closure");
  hilbert->add_option("--horizon", horizon, "Largest filtration index");
  hilbert->add_flag("--hypersurface", hypersurface, "Use the graded ring of the hypersurface in --f instead");
  hilbert->add_option("--f", fname, "Binding holding the hypersurface");
  hilbert->callback([&] {
    action = [&] {
      auto doc = load(input, g);
      HilbertData h = hypersurface
                          ? assoc_graded_hypersurface(doc.poly(fname), horizon)
                          : hilbert_function_G(filtration_table(monomial_binding(doc, iname), parse_strategy(strategy),
                                                                horizon));
      return emit(g, to_json(h), hilbert_text(h), h.stabilized ? 0 : 2);
    };
  });

  std::string zname = "z", modname;
  std::uint64_t qmax = 16;
  bool test_element = false;
  auto* tc = app.add_subcommand("tc", "Bounded tight-closure certificate: c z^q in I^[q] for q <= qmax");
  tc->add_option("input", input, "Input document ('-' for stdin)");
  tc->add_option("--z", zname, "Binding holding z");
  tc->add_option("--I", iname, "Binding holding the ideal");
  tc->add_option("--c", cname, "Binding or polynomial for the multiplier (default: 1)");
  tc->add_option("--modulus", modname, "Binding holding the defining equations of the quotient");
  tc->add_option("--qmax", qmax, "Largest q checked");
  tc->add_flag("--test-element", test_element, "Assert that c is a test element");
  tc->callback([&] {
    action = [&] {
      auto doc = load(input, g);
      const auto& ring = doc.decl.ring;
      auto c = cname.empty() ? Polynomial::constant(ring, 1) : poly_arg(doc, cname);
      QuotientCtx ctx = modname.empty() ? QuotientCtx::trivial(ring) : QuotientCtx(ring, doc.list(modname));
      std::vector<std::uint64_t> qs;
      for (std::uint64_t q = ring->modulus.value(); q <= qmax; q *= ring->modulus.value()) qs.push_back(q);
      auto cert = tc_certificate(doc.poly(zname), IdealGens(ring, doc.list(iname)), c, ctx, qs, test_element);
      std::ostringstream os;
      for (const auto& chk : cert.checks) {
        os << "q = " << chk.q << ": " << (chk.member ? "member" : "not a member") << " (basis " << chk.basis_size
           << ")\n";
      }
      os << "verdict: " << to_string(cert.verdict) << "\n";
      int code = cert.verdict == TcVerdict::evidence_in_star ? 0 : cert.verdict == TcVerdict::not_in_star ? 1 : 2;
      return emit(g, to_json(cert), os.str(), code);
    };
  });

  std::string params;
  std::uint64_t vk = 1, vl = 1;
  auto* vv = app.add_subcommand("vv", "Compare closure(I^(k+l)) with I^[l] against closure(I^k) I^[l]");
  vv->add_option("input", input, "Input document ('-' for stdin)");
  vv->add_option("--I", iname, "Binding holding the monomial ideal");
  vv->add_option("--params", params, "Binding holding pure-power parameters (default: I)");
  vv->add_option("-k", vk, "Closure exponent");
  vv->add_option("-l", vl, "Bracket exponent");
  vv->callback([&] {
    action = [&] {
      auto doc = load(input, g);
      auto I = monomial_binding(doc, iname);
      auto P = params.empty() ? I : monomial_binding(doc, params);
      auto res = check_vv_identity(I, P, vk, vl);
      const auto& vars = doc.decl.ring->vars;
      return emit(g, to_json(res, vars),
                  std::string(res.holds ? "holds" : "fails") + "\nlhs: " + to_string(res.lhs, vars) +
                      "\nrhs: " + to_string(res.rhs, vars) + "\n",
                  res.holds ? 0 : 1);
    };
  });

  SuiteOptions suite;
  std::vector<std::string> only;
  std::string report_path;
  auto* verify = app.add_subcommand("paper-verify", "Run the reference verification suite");
  verify->alias("verify");
  verify->add_option("--only", only, "Comma-separated check ids")->delimiter(',');
  verify->add_option("--qmax", suite.qmax, "Largest q in the tight-closure check");
  verify->add_option("--ebudget", suite.ebudget, "Largest Frobenius exponent for splitting checks");
  verify->add_option("--jobs", suite.jobs, "Checks run concurrently");
  verify->add_option("--report", report_path, "Write the JSON report to this path");
  verify->add_flag("--list", [&](std::int64_t) {
    for (const auto& id : suite_ids()) std::cout << id << "\n";
    std::exit(0);
  }, "List check ids and exit");
  verify->callback([&] {
    action = [&] {
      suite.only = only;
      suite.seed = g.seed;
      if (g.jet > 0) suite.jet = g.jet;
      if (!g.order.empty()) suite.order = parse_order(g.order);
      auto report = run_reference_suite(suite);
      Json j = to_json(report);
      if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw InputError("cannot write '" + report_path + "'");
        out << j.dump(2) << "\n";
      }
      return emit(g, j, suite_text(report), exit_code(report.overall()));
    };
  });

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "Re-verify a JSON suite report");
  replay->add_option("report", replay_path, "Report written by paper-verify --report")->required();
  replay->callback([&] {
    action = [&] {
      Json j;
      try {
        j = Json::parse(read_source(replay_path));
      } catch (const nlohmann::json::parse_error& ex) {
        throw InputError(std::string("report is not valid JSON: ") + ex.what());
      }
      SuiteOptions rerun;
      rerun.seed = g.seed;
      auto result = replay_report(j, rerun);
      std::ostringstream os;
      for (const auto& e : result.entries) {
        os << std::left << std::setw(13) << to_string(e.replayed) << std::setw(24) << e.id << std::setw(12)
           << e.method << e.detail << "\n";
      }
      os << "overall: " << to_string(result.overall()) << "\n";
      return emit(g, to_json(result), os.str(), exit_code(result.overall()));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }
  try {
    return action();
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
  } catch (const UnsupportedCharacteristic& e) {
    std::cerr << "unsupported characteristic: " << e.what() << "\n";
  }
  return kExitInputError;
}
