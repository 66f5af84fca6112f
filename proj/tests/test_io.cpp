// Copyright 2026 The emergent-space Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "emergent/io.hpp"

using namespace emergent;
using namespace emergent::io;

namespace {

std::string data(const std::string& name) { return std::string(EMERGENT_DATA_DIR) + "/" + name; }

SchemaError schema_error(const std::string& text, auto&& parse) {
  try {
    parse(parse_text(text));
  } catch (const SchemaError& e) {
    return e;
  }
  FAIL("expected SchemaError");
  return SchemaError("", "", "");
}

}  // namespace

TEST_CASE("system file round trip") {
  auto sys = parse_system(read_file(data("shift5.json")));
  CHECK(sys.size() == 5);
  CHECK(sys.time().horizon == 1);
  auto again = parse_system(system_to_json(sys));
  CHECK(again.step_map() == sys.step_map());
  CHECK(again.elements() == sys.elements());
  auto ints = parse_system(read_file(data("shift2.json")));
  CHECK(ints.time().kind == TimeKind::GroupSteps);
  CHECK(evolve(ints, "1", 1) == "3");
}

TEST_CASE("missing transition is reported at its pointer") {
  auto e = schema_error(R"({"elements":[1,2,3],"transitions":{"1":"2","2":"3"}})",
                        [](const json& j) { parse_system(j); });
  CHECK(e.path == "/transitions/3");
  CHECK(e.got == "missing");
}

TEST_CASE("schema errors name the field") {
  CHECK(schema_error(R"({"transitions":{}})", [](const json& j) { parse_system(j); }).path ==
        "/elements");
  CHECK(schema_error(R"({"elements":[1],"transitions":{"1":"1","9":"1"}})",
                     [](const json& j) { parse_system(j); })
            .path == "/transitions/9");
  CHECK(schema_error(R"({"elements":[1],"transitions":{"1":"1"},"time":{"kind":"monoid","horizon":-1}})",
                     [](const json& j) { parse_system(j); })
            .path == "/time/horizon");
  CHECK(schema_error(R"({"name":"p","truth":{"1":2}})", [](const json& j) { parse_property(j); })
            .path == "/truth/1");
  CHECK(schema_error(R"([[1, [0, "x"]]])", [](const json& j) { parse_matrix(j); }).path ==
        "/0/1/1");
  try {
    parse_text("{\"elements\": [1,\n 2,,]}");
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("matrices accept pairs and plain numbers") {
  auto m = parse_matrix(parse_text(R"([[0, [0, -1]], [[0, 1], 0]])"));
  CHECK(max_abs(m - pauli(2)) == 0.0);
  CHECK(max_abs(parse_matrix(matrix_to_json(m)) - m) == 0.0);
  CHECK_THROWS_AS(parse_matrix(parse_text("[[1, 2], [3]]")), SchemaError);
}

TEST_CASE("observables, states and algebras") {
  auto obs = parse_observable(read_file(data("sigma1.json")));
  CHECK(obs.name() == "sigma1");
  try {
    parse_observable(read_file(data("nonhermitian.json")));
    FAIL("expected NotSelfAdjoint");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotSelfAdjoint);
    CHECK(std::string(e.what()).find("1.0") != std::string::npos);
  }
  CHECK(parse_state(read_file(data("down.json"))).density()(0, 0) == Complex{1.0, 0.0});
  CHECK(parse_state(read_file(data("mixed2.json"))).dim() == 2);
  CHECK(parse_algebra(read_file(data("m2.json"))).size() == 4);
}

TEST_CASE("properties and measures") {
  auto props = parse_properties(read_file(data("even_prime.json")));
  REQUIRE(props.size() == 2);
  auto sigma = generate_sigma(props, Elements({"1", "2", "3", "4", "5"}));
  auto doc = read_file(data("even_prime_weights.json"));
  auto m = parse_measure(doc, sigma);
  CHECK(validate_measure(m).normalized);
  CHECK(expectation(parse_function(doc.at("function"), "/function"), m) == Catch::Approx(3.0));
}

TEST_CASE("subset and vector text") {
  Elements e({"1", "2", "3"});
  CHECK(parse_subset(e, " 1, 3 ").bits() == 0b101);
  CHECK(parse_subset(e, "").is_empty());
  CHECK(parse_vec3("0, 0,1") == Vec3(0, 0, 1));
  CHECK_THROWS_AS(parse_vec3("0,0"), SchemaError);
  CHECK_THROWS_AS(parse_vec3("0,a,1"), SchemaError);
}

TEST_CASE("orbit csv uses 17 significant digits") {
  SpinSystem sys({1, 0, 0});
  auto orbit = reachability_orbit(sys, SpinState::down(), 0.1, 130);
  const auto csv = orbit_csv(orbit);
  CHECK(csv.rfind("t,bx,by,bz\n", 0) == 0);
  CHECK(csv.find("0.10000000000000001,") != std::string::npos);
}
