#include "charp/errors.hpp"
#include "charp/filtration.hpp"
#include "charp/parse.hpp"
#include "charp/suite.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace charp;
using charp::testing::P;

TEST_SUITE("report") {

TEST_CASE("ring and monomial ideal round trips") {
  auto ring = make_ring(5, {"a", "b", "c"}, MonomialOrder::lex);
  auto back = ring_from_json(to_json(*ring));
  CHECK(back->modulus.value() == 5);
  CHECK(back->vars.names() == ring->vars.names());
  CHECK(back->order == MonomialOrder::lex);

  MonomialIdeal I(3, {Monomial{2, 0, 0}, Monomial{1, 1, 0}, Monomial{0, 0, 4}});
  auto j = to_json(I, ring->vars);
  CHECK(monomial_ideal_from_json(Json::parse(j.dump()), 3) == I);
  CHECK_THROWS_AS(monomial_from_json(Json::array({1, 2}), 3), InputError);
  CHECK_THROWS_AS(monomial_from_json(Json::array({1, -2, 0}), 3), InputError);
}

TEST_CASE("split certificates round trip and re-verify") {
  auto ring = make_ring(3, {"X", "Y", "Z"});
  auto cert = fedder_certificate(P(ring, "X^2+Y^2+Z^2"));
  REQUIRE(cert.has_value());
  auto back = split_certificate_from_json(Json::parse(to_json(*cert).dump()));
  CHECK(back.witness == cert->witness);
  CHECK(back.coefficient == cert->coefficient);
  CHECK(back.e.q() == 3);
  CHECK(verify_split_certificate(back));

  auto forged = to_json(*cert);
  forged["q"] = 9;
  CHECK_THROWS_AS(split_certificate_from_json(forged), InputError);
  forged = to_json(*cert);
  forged["kind"] = "tc";
  CHECK_THROWS_AS(split_certificate_from_json(forged), InputError);
}

TEST_CASE("suite statuses and exit codes") {
  CHECK(exit_code(CheckStatus::pass) == 0);
  CHECK(exit_code(CheckStatus::fail) == 1);
  CHECK(exit_code(CheckStatus::inconclusive) == 2);
  for (auto s : {CheckStatus::pass, CheckStatus::fail, CheckStatus::inconclusive}) {
    CHECK(parse_status(to_string(s)) == s);
  }
  SuiteReport r;
  r.entries.push_back(SuiteEntry{"a", "", CheckStatus::pass, 0, Json(), "", true});
  CHECK(r.overall() == CheckStatus::pass);
  r.entries.push_back(SuiteEntry{"b", "", CheckStatus::inconclusive, 0, Json(), "", true});
  CHECK(r.overall() == CheckStatus::inconclusive);
  r.entries.push_back(SuiteEntry{"c", "", CheckStatus::fail, 0, Json(), "", false});
  CHECK(r.overall() == CheckStatus::inconclusive);
  r.entries.push_back(SuiteEntry{"d", "", CheckStatus::fail, 0, Json(), "", true});
  CHECK(r.overall() == CheckStatus::fail);
}

TEST_CASE("subset runs and option effects") {
  SuiteOptions o;
  o.only = {"lucas", "example-fpure"};
  auto r = run_reference_suite(o);
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].id == "example-fpure");
  CHECK(r.entries[1].id == "lucas");
  CHECK(r.overall() == CheckStatus::pass);

  o.only = {"example-tc"};
  o.qmax = 8;
  auto tc = run_reference_suite(o);
  REQUIRE(tc.entries.size() == 1);
  CHECK(tc.entries[0].status == CheckStatus::inconclusive);
  CHECK(tc.entries[0].certificate.at("q_checked") == Json::array({2, 4, 8}));

  o.only = {"no-such-check"};
  CHECK_THROWS_AS(run_reference_suite(o), InputError);
}

TEST_CASE("parallel runs match sequential runs") {
  SuiteOptions o;
  o.only = {"lucas", "witness-cubic", "vv-identity", "redno-ainv"};
  auto seq = run_reference_suite(o);
  o.jobs = 4;
  auto par = run_reference_suite(o);
  REQUIRE(seq.entries.size() == par.entries.size());
  for (std::size_t i = 0; i < seq.entries.size(); ++i) {
    CHECK(seq.entries[i].id == par.entries[i].id);
    CHECK(seq.entries[i].status == par.entries[i].status);
    CHECK(seq.entries[i].certificate == par.entries[i].certificate);
  }
}

TEST_CASE("replay reproduces and rejects tampering") {
  SuiteOptions o;
  o.only = {"example-fpure", "example-tc", "lucas"};
  auto j = Json::parse(to_json(run_reference_suite(o)).dump());
  CHECK(j.at("schema") == kReportSchema);
  auto replay = replay_report(j);
  CHECK(replay.overall() == CheckStatus::pass);
  for (const auto& e : replay.entries) {
    CHECK(e.method == (e.id == "lucas" ? "rerun" : "certificate"));
  }

  auto forged = j;
  for (auto& e : forged["entries"]) {
    if (e["id"] == "example-fpure") e["certificate"]["coefficient"] = 0;
  }
  CHECK(replay_report(forged).overall() == CheckStatus::fail);

  forged = j;
  for (auto& e : forged["entries"]) {
    if (e["id"] == "example-tc") e["certificate"]["checks"][0]["member"] = false;
  }
  CHECK(replay_report(forged).overall() == CheckStatus::fail);

  forged = j;
  forged["entries"][0]["id"] = "no-such-check";
  forged["entries"][0]["certificate"] = nullptr;
  CHECK(replay_report(forged).overall() == CheckStatus::fail);

  forged = j;
  forged["schema"] = 2;
  CHECK_THROWS_AS(replay_report(forged), InputError);
}

TEST_CASE("filtration reports serialize") {
  auto ring = make_ring(7, {"X", "Y"});
  MonomialIdeal I(2, {Monomial{2, 0}, Monomial{0, 2}});
  auto table = filtration_table(I, FiltrationStrategy::integral_closure, 4);
  auto j = to_json(table, ring->vars);
  CHECK(j.at("strategy") == "integral_closure");
  CHECK(j.at("rows").size() == 5);
  auto h = to_json(hilbert_function_G(filtration_table(I, FiltrationStrategy::integral_closure, 8)));
  CHECK(h.at("a_invariant") == -1);
  CHECK(h.at("numerator") == Json::array({3, 1}));
  auto poly = to_json(newton_polyhedron(I));
  CHECK(poly.at("halfspaces").size() == 3);
}

}  // TEST_SUITE
