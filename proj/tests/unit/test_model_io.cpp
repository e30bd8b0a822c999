/*
 * Copyright (c) 2026, The gcaverify Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <filesystem>
#include <string>

#include "gcaverify/errors.hpp"
#include "gcaverify/model_io.hpp"

using namespace gcaverify;

namespace {

const char* kBase = R"yaml(name: base
redundancy: 2
domain: intervals
pattern:
  arrays:
    - {name: a, domain: [0, 3]}
  actions:
    - "a[x] <- 1"
    - send(a[x])
    - receive(a)
properties:
  ok: "G(m1.a <= 3)"
)yaml";

// Error message of building `text`, or "" when it builds.
std::string error_of(const std::string& text) {
  try {
    build_model(parse_model_spec(text, "m.yaml"));
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("every shipped model round-trips through the emitter") {
  int models = 0;
  for (const auto& entry : std::filesystem::directory_iterator(GCAVERIFY_MODELS_DIR)) {
    if (entry.path().extension() != ".yaml") continue;
    CAPTURE(entry.path().string());
    const ModelSpec spec = load_model_spec(entry.path().string());
    const ModelSpec again = parse_model_spec(emit_model_spec(spec));
    CHECK(again == spec);
    CHECK(emit_model_spec(again) == emit_model_spec(spec));
    CHECK_NOTHROW(build_model(spec));
    ++models;
  }
  CHECK(models >= 8);
}

TEST_CASE("the base model builds") {
  const Model m = build_model(parse_model_spec(kBase));
  CHECK(m.system.n() == 2);
  CHECK(m.system.k() == 3);
  CHECK(m.system.mode == AnalysisMode::kIntervals);
  REQUIRE(m.properties.size() == 1);
  CHECK(m.properties[0].name == "ok");
  CHECK(m.automaton.is_fault_free(0));
}

TEST_CASE("schema errors carry the source line") {
  CHECK(error_of(replace(kBase, "redundancy: 2", "redundancy: 2\ncolour: blue")) == "m.yaml:3: unknown key 'colour' in model");
  CHECK(error_of(replace(kBase, "[0, 3]", "[3, 0]")).rfind("m.yaml:6:", 0) == 0);
  CHECK(error_of(replace(kBase, "\"a[x] <- 1\"", "\"a[x] <- 1 +\"")).rfind("m.yaml:8:", 0) == 0);
  CHECK(error_of(replace(kBase, "\"a[x] <- 1\"", "\"zz[x] <- 1\"")).rfind("m.yaml:8:", 0) == 0);
  CHECK(error_of(replace(kBase, "send(a[x])", "send(q[x])")).rfind("m.yaml:9:", 0) == 0);
  CHECK(error_of(replace(kBase, "G(m1.a <= 3)", "G(m1.a <= ")).rfind("m.yaml:12:", 0) == 0);
  CHECK(error_of(replace(kBase, "redundancy: 2", "redundancy: two")).rfind("m.yaml:2:", 0) == 0);
  CHECK(error_of(replace(kBase, "domain: intervals", "domain: reals")).rfind("m.yaml:3:", 0) == 0);
  CHECK(error_of("name: [unclosed").rfind("m.yaml:", 0) == 0);
}

TEST_CASE("fault section errors") {
  const std::string faults = std::string(kBase) + R"yaml(faults:
  locations:
    - {name: ok, active: [], initial: true}
    - {name: hit, active: [f]}
  specs:
    - {name: drop, act: f, type: MessageLoss, machine: 1, position: 2, k: 2}
)yaml";
  CHECK(error_of(faults) == "");
  CHECK(error_of(replace(faults, "MessageLoss", "Gremlin")).rfind("m.yaml:18:", 0) == 0);
  CHECK(error_of(replace(faults, "position: 2", "position: 1")).find("drop") != std::string::npos);
  CHECK(error_of(replace(faults, "position: 2", "action: nowhere")).rfind("m.yaml:18:", 0) == 0);
  CHECK(error_of(replace(faults, "active: [f]}", "active: [f], next: [elsewhere]}")).rfind("m.yaml:16:", 0) == 0);
}

TEST_CASE("inadmissible properties are rejected") {
  CHECK(error_of(replace(kBase, "G(m1.a <= 3)", "X(m1.a = 1)")).find("m.yaml:12:") == 0);
  CHECK(error_of(replace(kBase, "G(m1.a <= 3)", "G(m1.a = m2.a)")).find("m.yaml:12:") == 0);
}

TEST_CASE("interval mode needs domains") {
  CHECK(error_of(replace(kBase, "{name: a, domain: [0, 3]}", "{name: a}")).rfind("m.yaml:6:", 0) == 0);
  const std::string fa = replace(replace(kBase, "domain: intervals", "domain: fault-abstraction"),
                                 "{name: a, domain: [0, 3]}", "{name: a}");
  CHECK(error_of(replace(fa, "G(m1.a <= 3)", "G(m1.a = 0)")) == "");
}

TEST_CASE("schedules") {
  const std::string with = replace(kBase, "redundancy: 2", "redundancy: 2\nperiod: 10") + "schedule:\n  tau_net: 0.5\n  machines:\n    - [[0, 1], [1.1, 2.1], [2.7, 3.7]]\n";
  const Model m = build_model(parse_model_spec(with));
  REQUIRE(m.schedule);
  CHECK(m.schedule->actions.size() == 2);
  CHECK(m.schedule->actions[1][2].start == doctest::Approx(2.7));
  CHECK(m.schedule->tau_net == doctest::Approx(0.5));
  CHECK(error_of(replace(with, "[2.7, 3.7]", "[2.7, 1.0]")).rfind("m.yaml:15:", 0) == 0);
  CHECK(error_of(replace(with, ", [2.7, 3.7]", "")).rfind("m.yaml:15:", 0) == 0);
}
