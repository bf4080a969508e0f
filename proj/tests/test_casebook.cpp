#include "doctest.h"
#include "rieszkit/casebook.hpp"

using namespace rieszkit;

namespace {

bool all_checks_pass(const Report& r) {
  for (const auto& c : r.certificate["checks"])
    if (!c["pass"].get<bool>()) return false;
  return true;
}

}  // namespace

TEST_CASE("directedness counterexample") {
  auto r = run_directedness_counterexample();
  CHECK(r.verdict == "not directed");
  CHECK(r.verified);
  CHECK(all_checks_pass(r));
  CHECK_FALSE(r.oracle["dominating_search"]["found"].get<bool>());
  CHECK(r.certificate["obstruction"]["monotone_limit"]["verdict"] == "diverges");
}

TEST_CASE("non-regular order continuous operator") {
  auto r = run_nonregular_oc_example();
  CHECK(r.verified);
  CHECK(all_checks_pass(r));
  CHECK_FALSE(r.refuted);
  CHECK(r.certificate["positive_part"]["in_F"] == false);
  CHECK(r.oracle["majorant_growth"]["table"].size() == 8);
}

TEST_CASE("projection demo") {
  auto r = run_projection_demo(42);
  CHECK(r.verdict == "all band checks pass");
  CHECK(all_checks_pass(r));
  CHECK_THROWS_AS(run_case("nope"), InvalidIndex);
}

TEST_CASE("reports serialize deterministically") {
  auto a = run_projection_demo(7).to_json().dump();
  auto b = run_projection_demo(7).to_json().dump();
  CHECK(a == b);
  auto j = run_directedness_counterexample().to_json();
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"command", "verdict", "theorem_refs", "certificate", "oracle", "engine_version"});
  CHECK(run_nonregular_oc_example().to_markdown().find("**Verdict:**") != std::string::npos);
}
