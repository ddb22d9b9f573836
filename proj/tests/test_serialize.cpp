#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tcqed/serialize.hpp"

using namespace tcqed;
using namespace tcqed::testing;

TEST_SUITE("serialize") {

TEST_CASE("field state round trip") {
  std::mt19937_64 rng(12);
  const FieldState f = random_field_state(rng, 9, 6);
  const json j = to_json(f);
  CHECK(j["dim"] == 9);
  CHECK(j["amplitudes"].size() == 9);
  CHECK(j["amplitudes"][0].size() == 2);
  const FieldState back = field_from_json(json::parse(j.dump()));
  CHECK(max_abs_diff(back.amplitudes(), f.amplitudes()) == 0);
  CHECK_THROWS(field_from_json(json{{"dim", 3}, {"amplitudes", {{1, 0}}}}));
}

TEST_CASE("joint state round trip") {
  std::mt19937_64 rng(13);
  const JointState s = random_joint_state(rng, 7, 5);
  const json j = to_json(s);
  for (const char* label : {"ee", "eg", "ge", "gg"}) CHECK(j["branches"][label].size() == 7);
  CHECK(max_abs_diff(joint_from_json(json::parse(j.dump())).branches(), s.branches()) == 0);
}

TEST_CASE("density layout") {
  const TwoQubitDensity rho = analytic_density(superpose({{3, 1.0}, {4, 1.0}}, 8), 1.1);
  const json j = to_json(rho);
  CHECK(j["basis"] == json({"ee", "eg", "ge", "gg"}));
  CHECK(j["matrix"].size() == 4);
  CHECK(j["matrix"][1][0][1].get<double>() == rho(1, 0).imag());
  CHECK(max_abs_diff(density_from_json(json::parse(j.dump())), rho) == 0);
}

TEST_CASE("plan documents") {
  const ProtocolPlan plan = bell2_plan(1);
  const json doc = plan_document(plan, verify_plan(plan));
  CHECK(doc["protocol"] == "bell2");
  CHECK(doc["params"]["l"] == 1);
  CHECK(doc["gt"].size() == 1);
  CHECK(doc["predicted"]["w"] == 0.5);
  CHECK(doc["field"]["dim"] == 8);
  CHECK(doc["verification"]["passed"] == true);
  CHECK(doc["verification"]["target"]["kind"] == "bell2");
}

}  // TEST_SUITE
