#include "doctest.h"
#include "nml/builtins.hpp"
#include "nml/corpus.hpp"
#include "nml/error.hpp"
#include "nml/json_io.hpp"

using namespace nml;
using namespace nml::io;

TEST_CASE("table JSON round trip") {
  const auto j = parse_json(R"({"atoms":["a","b"],"table":{"":["a"],"a":["a"],"b":["a","b"],"a,b":["a","b"]}})", "t");
  const auto t = table_from_json(j);
  CHECK(t(AtomSet(0)) == AtomSet(0b01));
  CHECK(t(AtomSet(0b10)) == AtomSet(0b11));
  CHECK(table_from_json(table_to_json(t)) == t);
  CHECK(table_to_json(t) == j);

  corpus::Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto u = corpus::uniform_table(corpus::default_language(3), rng);
    CHECK(table_from_json(parse_json(table_to_json(u).dump(), "t")) == u);
  }
}

TEST_CASE("table JSON diagnostics") {
  CHECK_THROWS_WITH_AS(table_from_json(parse_json(R"({"atoms":["a","b"],"table":{"a":[],"b":[],"a,b":[]}})", "t")),
                       "table: missing key \"\"", InputError);
  CHECK_THROWS_WITH_AS(
      table_from_json(parse_json(R"({"atoms":["a","b"],"table":{"":[],"a":[],"b":[],"a,x":[]}})", "t")),
      doctest::Contains("unknown atom \"x\""), InputError);
  CHECK_THROWS_WITH_AS(parse_json("{\"atoms\": [", "input"), doctest::Contains("input"), InputError);
  CHECK_THROWS_AS(table_from_json(parse_json(R"({"table":{}})", "t")), InputError);
}

TEST_CASE("fC-model JSON round trip preserves the induced table") {
  const auto fcm = builtins::disjunction_model();
  const auto j = fc_model_to_json(fcm);
  const auto back = fc_model_from_json(j);
  CHECK(back.world == fcm.world);
  CHECK(back.restricted == fcm.restricted);
  CHECK(induced_consequence(back) == induced_consequence(fcm));
  CHECK(back.f.materialize(3) == fcm.f.materialize(3));

  // representation outputs use the two-case policy
  const auto r = represent(induced_consequence(fcm));
  const auto r2 = fc_model_from_json(parse_json(fc_model_to_json(r).dump(), "m"));
  CHECK(r2.f.policy() == ExtensionPolicy::TwoCase);
  CHECK(induced_consequence(r2) == induced_consequence(r));
  CHECK(r2.f.materialize(r2.world.model_count()) == r.f.materialize(r.world.model_count()));
}

TEST_CASE("fC-model JSON diagnostics") {
  const char* two_case_bad = R"({"atoms":["a","b"],
    "models":[{"name":"m","sat":["a"]},{"name":"n","sat":["b"]},{"name":"p","sat":[]}],
    "choice":{"mode":"two-case","entries":[{"set":["m","n"],"value":["m"]}]}})";
  CHECK_THROWS_WITH_AS(fc_model_from_json(parse_json(two_case_bad, "m")), doctest::Contains("definable"), InputError);
  const char* unknown_model = R"({"atoms":["a"],"models":[{"name":"m","sat":["a"]}],
    "choice":{"mode":"table","entries":[{"set":["q"],"value":[]}]}})";
  CHECK_THROWS_AS(fc_model_from_json(parse_json(unknown_model, "m")), InputError);
  const char* bad_mode = R"({"atoms":["a"],"models":[],"choice":{"mode":"lazy"}})";
  CHECK_THROWS_WITH_AS(fc_model_from_json(parse_json(bad_mode, "m")), doctest::Contains("choice.mode"), InputError);
}

TEST_CASE("quantum JSON round trip and diagnostics") {
  const auto j = parse_json(R"({"dim":2,"state":[1,2],"tolerance":1e-9,"subspaces":{"a":[[1,0]],"b":[[1,1]],"c":[[1,2]]}})", "q");
  const auto q = quantum_from_json(j);
  CHECK(quantum_table(q) == quantum_table(quantum::generic_lines_instance()));
  const auto back = quantum_from_json(parse_json(quantum_to_json(q).dump(), "q"));
  CHECK(quantum_table(back) == quantum_table(q));
  CHECK(back.tolerance() == q.tolerance());

  CHECK_THROWS_AS(quantum_from_json(parse_json(R"({"dim":2,"state":[0,0],"subspaces":{"a":[[1,0]]}})", "q")),
                  InputError);
  CHECK_THROWS_WITH_AS(
      quantum_from_json(parse_json(R"({"dim":2,"state":[1,0],"subspaces":{"a":[[1,0,0]]}})", "q")),
      doctest::Contains("subspaces[\"a\"][0]"), InputError);
  CHECK_THROWS_AS(quantum_from_json(parse_json(R"({"dim":9,"state":[1],"subspaces":{"a":[]}})", "q")), InputError);
}

TEST_CASE("property report JSON round trip") {
  PropertyReport r = fails("Cumulativity", {0, 1}, "A={} B={a}", "exhaustive");
  r.notes = {"first", "second"};
  const auto back = report_from_json(report_to_json(r));
  CHECK(back.property == r.property);
  CHECK(back.verdict == r.verdict);
  CHECK(back.witness == r.witness);
  CHECK(back.detail == r.detail);
  CHECK(back.scope == r.scope);
  CHECK(back.notes == r.notes);
  const auto h = report_to_json(holds("Inclusion"));
  CHECK_FALSE(h.contains("witness"));
  CHECK(report_from_json(h).holds());
}
