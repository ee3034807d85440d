#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nfdyn/errors.hpp"
#include "nfdyn/scenario.hpp"

using namespace nfdyn;
using nlohmann::json;

namespace {

ScenarioOptions quiet() {
  ScenarioOptions opt;
  opt.write_outputs = false;
  return opt;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("certify scenario matches the desk checks") {
  json sc = {{"task", "certify"},
             {"field", "sqrt2"},
             {"family", "square-and-shift"},
             {"moduli", {2}}};
  ScenarioResult res = run_scenario_json(sc, quiet());
  CHECK(res.pass);
  CHECK(res.summary.find("NOT jointly intersective at modulus 2") != std::string::npos);
  CHECK_FALSE(res.report["results"][0]["certified"].get<bool>());

  sc["assert_intersective"] = true;
  CHECK_FALSE(run_scenario_json(sc, quiet()).pass);

  sc["family"] = "square";
  sc["moduli"] = {2, 3, 5};
  ScenarioResult ok = run_scenario_json(sc, quiet());
  CHECK(ok.pass);
  for (const auto& row : ok.report["results"]) CHECK(row["certified"].get<bool>());
}

TEST_CASE("khintchine scenario computes the cube threshold") {
  json sc = {{"task", "khintchine"}, {"generator", "golden"},
             {"set", {{0, "3/10"}}},  {"family", {{0, 0, 1}, {0, 0, 2}}},
             {"epsilon", 0.01},       {"n_max", 200}};
  ScenarioResult res = run_scenario_json(sc, quiet());
  CHECK(res.pass);
  CHECK(res.report["threshold"].get<double>() == doctest::Approx(0.027 - 0.01).epsilon(1e-12));
  CHECK(res.report["popular_count"].get<std::size_t>() > 0);
}

TEST_CASE("khintchine refuses a non-intersective family at its modulus") {
  json sc = {{"task", "khintchine"}, {"generator", "golden"},
             {"set", {{0, "3/10"}}},  {"family", {{0, 0, 1}, {-1, 1}}},
             {"epsilon", 0.01},       {"n_max", 50},
             {"field", "sqrt2"},      {"modulus", 2}};
  CHECK_THROWS_AS(run_scenario_json(sc, quiet()), TaskError);
  // at a unit modulus the same family is allowed through
  sc["modulus"] = 1;
  CHECK_NOTHROW(run_scenario_json(sc, quiet()));
}

TEST_CASE("scenario validation and parse errors") {
  CHECK_THROWS_AS(run_scenario_json(json{{"task", "unknown"}}, quiet()), ValidationError);
  CHECK_THROWS_AS(run_scenario_json(json{{"no_task", 1}}, quiet()), ValidationError);
  CHECK_THROWS_AS(run_scenario_json(json::array({json::array()}), quiet()), ParseError);
  json bad = {{"task", "certify"}, {"field", "nope"}, {"family", "square"}, {"moduli", {2}}};
  CHECK_THROWS_AS(run_scenario_json(bad, quiet()), ValidationError);
  CHECK_NOTHROW(check_scenario_json(json{{"task", "certify"},
                                         {"field", "sqrt2"},
                                         {"family", "square"},
                                         {"moduli", {2}}}));
  CHECK_THROWS_AS(check_scenario_json(json{{"task", "limit-check"},
                                           {"generator", "sqrt2"},
                                           {"r", 2},
                                           {"s", 2},
                                           {"p", {0, 1}},
                                           {"f0", "one"},
                                           {"f1", "one"},
                                           {"f2", "one"}}),
                  ValidationError);
}

TEST_CASE("empty scenario list passes with no outputs") {
  ScenarioOptions opt;  // writing enabled: still nothing to write
  ScenarioResult res = run_scenario_json(json::array(), opt);
  CHECK(res.pass);
  CHECK(res.outputs.empty());
}

TEST_CASE("reruns are byte-identical") {
  json sc = {{"task", "popdiff"}, {"name", "det"},
             {"N", 256},          {"set", {{"kind", "random"}, {"delta", "1/2"}, {"seed", 7}}},
             {"family", {{0, 1}, {0, 0, 1}}},
             {"epsilon", 0.02}};
  ScenarioOptions opt;
  opt.out_dir = ".";
  ScenarioResult r1 = run_scenario_json(sc, opt);
  std::string csv1 = slurp("det.csv"), json1 = slurp("det.json");
  ScenarioResult r2 = run_scenario_json(sc, opt);
  CHECK(slurp("det.csv") == csv1);
  CHECK(slurp("det.json") == json1);
  CHECK_FALSE(csv1.empty());
  std::remove("det.csv");
  std::remove("det.json");

  json orb = json::parse(R"({
    "task": "orbit", "name": "det2", "generators": ["sqrt2"],
    "coords": [[{"c": 1, "e": [2], "g": "sqrt2"}]],
    "ladder": [2000], "c_max": 2})");
  ScenarioResult o1 = run_scenario_json(orb, opt);
  std::string ocsv = slurp("det2.csv");
  run_scenario_json(orb, opt);
  CHECK(slurp("det2.csv") == ocsv);
  std::remove("det2.csv");
  std::remove("det2.json");
}
