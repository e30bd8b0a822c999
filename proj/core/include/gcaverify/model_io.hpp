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

#ifndef GCAVERIFY_MODEL_IO_HPP_
#define GCAVERIFY_MODEL_IO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "gcaverify/expr.hpp"
#include "gcaverify/faults.hpp"
#include "gcaverify/logic.hpp"
#include "gcaverify/pattern.hpp"
#include "gcaverify/schedules.hpp"

namespace gcaverify {

// Source line of a model-file item (1-based, 0 when unknown). Compares equal
// to every other line so that round-tripped specs compare equal.
struct SourceLine {
  int value = 0;
  bool operator==(const SourceLine&) const { return true; }
};

struct DomainSpec {
  bool fault_abstraction = true;
  Value lo = 0;
  Value hi = 1;
  bool operator==(const DomainSpec&) const = default;
};

struct ArraySpec {
  std::string name;
  std::optional<DomainSpec> domain;
  Value init = 0;
  SourceLine line;
  bool operator==(const ArraySpec&) const = default;
};

struct EnvSpec {
  std::string name;
  std::optional<DomainSpec> domain;
  Value init = 0;
  std::vector<std::string> update;
  SourceLine line;
  bool operator==(const EnvSpec&) const = default;
};

struct TaskOutputSpec {
  std::string name;
  std::string expr;
  std::vector<std::string> depends;  // input names; used when has_implication
  bool operator==(const TaskOutputSpec&) const = default;
};

struct TaskSpec {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<TaskOutputSpec> outputs;
  bool has_implication = false;
  SourceLine line;
  bool operator==(const TaskSpec&) const = default;
};

struct TriggerSpec {
  std::string name;
  std::vector<FaultConfiguration> configurations;
  SourceLine line;
  bool operator==(const TriggerSpec& o) const {
    if (name != o.name || configurations.size() != o.configurations.size()) return false;
    for (std::size_t i = 0; i < configurations.size(); ++i) {
      const auto& a = configurations[i];
      const auto& b = o.configurations[i];
      if (a.name != b.name || a.faulty != b.faulty || a.responsible != b.responsible) return false;
    }
    return true;
  }
};

// One entry of the action list: a plain action or a mechanism macro.
struct ActionSpec {
  enum class Kind { kAssign, kSend, kReceive, kMacro };
  Kind kind = Kind::kAssign;
  std::string array;
  std::string expr;   // kAssign
  std::string label;
  // kMacro: TestPortAbsolute(port), TestLiveness(port = name), MedianUnify(port),
  // RedundancyTrigger(table, target, statuses | test).
  std::string macro;
  std::string port;
  std::string table;
  std::string target;
  std::vector<std::string> statuses;
  std::string test;
  SourceLine line;
  bool operator==(const ActionSpec&) const = default;
};

struct LocationSpec {
  std::string name;
  std::vector<std::string> active;
  bool initial = false;
  std::vector<std::string> next;  // empty: every location
  SourceLine line;
  bool operator==(const LocationSpec&) const = default;
};

struct FaultSpecText {
  std::string name;
  std::string act;
  std::string type;
  int machine = 1;
  int position = 0;    // 0: use `action`
  std::string action;  // action label
  int k = 0;
  int k_prime = 0;
  std::string psi;
  SourceLine line;
  bool operator==(const FaultSpecText&) const = default;
};

struct FaultsSpec {
  std::vector<LocationSpec> locations;
  std::vector<FaultSpecText> specs;
  std::optional<double> ltbf;
  bool operator==(const FaultsSpec&) const = default;
};

struct PropertySpec {
  std::string name;
  std::string formula;
  SourceLine line;
  bool operator==(const PropertySpec&) const = default;
};

struct ScheduleSpec {
  double tau_net = 0;
  // Per machine, per action: [start, end]. A single row applies to all machines.
  std::vector<std::vector<std::pair<double, double>>> machines;
  SourceLine line;
  bool operator==(const ScheduleSpec&) const = default;
};

// In-memory form of a model file, before macro expansion.
struct ModelSpec {
  std::string name;
  std::string source;  // path or "<string>", not serialized
  int n = 3;
  double period = 1.0;
  bool interval_mode = false;
  bool flush_queues_at_jump = false;
  bool unconstrained_interleavings = false;
  std::vector<ArraySpec> arrays;
  std::vector<EnvSpec> envs;
  std::vector<TaskSpec> tasks;
  std::vector<TriggerSpec> triggers;
  std::vector<ActionSpec> actions;
  FaultsSpec faults;
  std::vector<PropertySpec> properties;
  std::optional<ScheduleSpec> schedule;

  bool operator==(const ModelSpec& o) const {
    return name == o.name && n == o.n && period == o.period && interval_mode == o.interval_mode &&
           flush_queues_at_jump == o.flush_queues_at_jump &&
           unconstrained_interleavings == o.unconstrained_interleavings && arrays == o.arrays &&
           envs == o.envs && tasks == o.tasks && triggers == o.triggers && actions == o.actions &&
           faults == o.faults && properties == o.properties && schedule == o.schedule;
  }
};

// Parses YAML text. Schema errors are ModelErrors prefixed "source:line:".
ModelSpec parse_model_spec(const std::string& text, const std::string& source = "<string>");
ModelSpec load_model_spec(const std::string& path);
std::string emit_model_spec(const ModelSpec& spec);

struct Model {
  ModelSpec spec;
  GCASystem system;
  FaultAutomaton automaton;  // as declared
  FaultAutomaton gated;      // with the LTBF gate applied
  std::vector<NamedProperty> properties;
  std::optional<TimedSchedule> schedule;
};

// Expands macros, binds every name and validates the fault automaton.
Model build_model(const ModelSpec& spec);
Model load_model(const std::string& path);

}  // namespace gcaverify

#endif  // GCAVERIFY_MODEL_IO_HPP_
