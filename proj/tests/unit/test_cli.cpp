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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>

#include "gcaverify/model_io.hpp"

using namespace gcaverify;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::filesystem::path scratch() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / ("gcaverify_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Run cli(const std::string& args) {
  const auto out = scratch() / "out.txt";
  const auto err = scratch() / "err.txt";
  const std::string cmd = std::string(GCAVERIFY_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return Run{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string model(const std::string& name) { return std::string(GCAVERIFY_MODELS_DIR) + "/" + name; }

// Machine 1's own values after every step of a simulated trace, rebuilt from
// the reported changes.
std::vector<std::map<std::string, std::string>> machine1_values(const nlohmann::json& trace) {
  std::vector<std::map<std::string, std::string>> out{{}};
  for (const auto& step : trace["steps"]) {
    auto next = out.back();
    for (const auto& c : step["changes"]) {
      if (c["machine"] == 1) next[c["array"].get<std::string>() + "[" + std::to_string(c["slot"].get<int>()) + "]"] = c["to"];
    }
    out.push_back(next);
  }
  return out;
}

template <typename T>
std::vector<T> collapse(const std::vector<T>& w) {
  std::vector<T> out;
  for (const auto& x : w) {
    if (out.empty() || out.back() != x) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("check exit codes") {
  CHECK(cli("check " + model("balanced_rod_faulty.yaml")).code == 1);
  const Run fixed = cli("check " + model("balanced_rod_fixed.yaml"));
  CHECK(fixed.code == 0);
  CHECK(fixed.out.find("holds") != std::string::npos);
  CHECK(cli("check " + model("pipeline_demo.yaml") + " --property sum_bounded").code == 0);
  CHECK(cli("check " + model("pipeline_demo.yaml") + " --property nope").code == 2);
  CHECK(cli("check " + model("missing.yaml")).code == 2);
  CHECK(cli("check " + model("pipeline_demo.yaml") + " --bogus").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("--help").code == 0);
  CHECK(cli("check --help").code == 0);
}

TEST_CASE("a model without properties warns and exits 0") {
  const Run r = cli("check " + model("window_schedule.yaml"));
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("a malformed model exits 2 with a located message") {
  const auto path = scratch() / "broken.yaml";
  std::ofstream(path) << "name: broken\nredundancy: 2\nwibble: 1\n";
  const Run r = cli("check " + path.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("broken.yaml:3:") != std::string::npos);
}

TEST_CASE("machine-readable check output") {
  const Run r = cli("check " + model("balanced_rod_faulty.yaml") + " --format machine-readable");
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["properties"].size() == 1);
  CHECK(j["properties"][0]["verdict"] == "violated");
  CHECK(j["properties"][0]["formula"] == "G((m1.Trigger = 0) -> (m1.DigOutput = 0))");
  CHECK(j["properties"][0].contains("counterexample"));
}

TEST_CASE("crossvalidate exit codes") {
  CHECK(cli("crossvalidate " + model("pipeline_demo.yaml") + " --periods 1").code == 0);
  const Run r = cli("crossvalidate " + model("da_violating_demo.yaml"));
  CHECK(r.code == 1);
  CHECK(r.out.find("divergence") != std::string::npos);
  CHECK(cli("crossvalidate " + model("pipeline_demo.yaml") + " --periods 0").code == 2);
}

TEST_CASE("dacheck exit codes") {
  CHECK(cli("dacheck " + model("window_schedule.yaml")).code == 0);
  const Run bad = cli("dacheck " + model("early_receive.yaml"));
  CHECK(bad.code == 1);
  CHECK(bad.out.find("slack -0.1") != std::string::npos);
  CHECK(cli("dacheck " + model("pipeline_demo.yaml")).code == 2);
  const Run synth = cli("dacheck " + model("pipeline_demo.yaml") + " --synthesize-window");
  CHECK(synth.code == 0);
  CHECK(synth.out.find("schedule:") != std::string::npos);
  CHECK(cli("dacheck " + model("pipeline_demo.yaml") + " --synthesize-window --tau-net 20").code == 1);
}

TEST_CASE("simulate is deterministic per seed") {
  const std::string args = "simulate " + model("balanced_rod_faulty.yaml") + " --periods 3 --seed 9";
  const Run a = cli(args);
  const Run b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Run aa = cli(args + " --async");
  CHECK(aa.out == cli(args + " --async").out);
  CHECK(cli(args + " --async --sync").code == 2);
}

TEST_CASE("asynchronous and lockstep simulations agree on machine 1 up to stuttering") {
  for (const char* m : {"pipeline_demo.yaml", "balanced_rod_fixed.yaml", "heartbeat_demo.yaml"}) {
    for (int seed = 1; seed <= 5; ++seed) {
      const std::string args =
          "simulate " + model(m) + " --periods 3 --format machine-readable --seed " + std::to_string(seed);
      const auto sync = nlohmann::json::parse(cli(args + " --sync").out);
      const auto async = nlohmann::json::parse(cli(args + " --async").out);
      CAPTURE(m);
      CAPTURE(seed);
      CHECK(collapse(machine1_values(sync["trace"])) == collapse(machine1_values(async["trace"])));
    }
  }
}

TEST_CASE("without faults the TMR trigger stays on machine 1") {
  ModelSpec spec = load_model_spec(model("balanced_rod_faulty.yaml"));
  spec.faults = FaultsSpec{};
  spec.properties.clear();
  for (int m = 1; m <= 3; ++m) {
    spec.properties.push_back({"trigger_m" + std::to_string(m), "G(m" + std::to_string(m) + ".Trigger = 0)", {}});
  }
  const auto path = scratch() / "tmr_fault_free.yaml";
  std::ofstream(path) << emit_model_spec(spec);
  const Run r = cli("check " + path.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("violated") == std::string::npos);
}
