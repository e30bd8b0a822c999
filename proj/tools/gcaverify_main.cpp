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

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <thread>

#include "gcaverify/commands.hpp"

using namespace gcaverify;

namespace {

int emit(const CommandResult& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gcaverify: verification workbench for redundant periodic systems"};
  app.require_subcommand(1);

  std::string model;
  std::string format = "text";
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("model", model, "Model file")->required();
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "machine-readable"}));
  };

  CheckOptions check;
  auto* c_check = app.add_subcommand("check", "Model check the properties of a model");
  add_common(c_check);
  c_check->add_option("--property", check.property, "Check only the named property");
  c_check->add_option("--threads", check.threads, "Worker threads for state exploration")
      ->check(CLI::Range(1u, 256u));
  c_check->add_option("--cap", check.node_cap, "Node cap for state exploration");

  CrossValidateOptions cv;
  auto* c_cv = app.add_subcommand("crossvalidate", "Compare asynchronous runs with their lockstep twins");
  add_common(c_cv);
  c_cv->add_option("--periods", cv.periods, "Periods per run")->check(CLI::Range(1, 64));
  c_cv->add_option("--cap", cv.cap, "Maximum number of asynchronous traces");

  DaCheckOptions da;
  double tau = 0;
  auto* c_da = app.add_subcommand("dacheck", "Check a timed schedule against the deterministic assumption");
  add_common(c_da);
  c_da->add_flag("--synthesize-window", da.synthesize_window, "Synthesize and check a window schedule");
  auto* tau_opt = c_da->add_option("--tau-net", tau, "Network delay used for synthesis");

  SimulateOptions sim;
  auto* c_sim = app.add_subcommand("simulate", "Dump one random run");
  add_common(c_sim);
  c_sim->add_option("--periods", sim.periods, "Periods to run")->check(CLI::Range(1, 1000));
  c_sim->add_option("--seed", sim.seed, "Random seed");
  auto* async_flag = c_sim->add_flag("--async", sim.async, "Asynchronous run with a sampled interleaving");
  auto* sync_flag = c_sim->add_flag("--sync", "Lockstep run (default)");
  async_flag->excludes(sync_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  const OutputFormat fmt = *parse_output_format(format);
  if (c_check->parsed()) {
    check.format = fmt;
    return emit(cmd_check(model, check));
  }
  if (c_cv->parsed()) {
    cv.format = fmt;
    return emit(cmd_crossvalidate(model, cv));
  }
  if (c_da->parsed()) {
    da.format = fmt;
    if (tau_opt->count()) da.tau_net = tau;
    return emit(cmd_dacheck(model, da));
  }
  sim.format = fmt;
  return emit(cmd_simulate(model, sim));
}
