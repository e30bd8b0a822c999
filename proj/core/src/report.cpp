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

#include "gcaverify/report.hpp"

#include <sstream>

#include "report_json.hpp"

namespace gcaverify {

std::optional<OutputFormat> parse_output_format(const std::string& text) {
  if (text == "text") return OutputFormat::kText;
  if (text == "machine-readable" || text == "json") return OutputFormat::kMachineReadable;
  return std::nullopt;
}

std::string leaf_name(const AtomLeaf& leaf, const GCASystem& system) {
  const std::string m = "m" + std::to_string(leaf.machine + 1);
  if (leaf.array < 0) return m + ".next";
  return m + "." + system.pattern.arrays[leaf.array].name + "[" + std::to_string(leaf.slot + 1) + "]";
}

std::string leaf_value(const AtomLeaf& leaf, const GCASystem& system, const SystemConfig& config) {
  const MachineState& ms = config.machines[leaf.machine];
  if (leaf.array < 0) return ms.next == 0 ? "null" : "σ" + std::to_string(ms.next);
  return format_value(system.array_domain(leaf.array), ms.value(leaf.array, leaf.slot, system.n()));
}

namespace {

struct Change {
  std::size_t machine;
  int array;
  int slot;
  Value from;
  Value to;
};

std::vector<Change> changes(const GCASystem& system, const SystemConfig& a, const SystemConfig& b,
                            const std::vector<std::size_t>& machines) {
  std::vector<Change> out;
  const int n = system.n();
  for (std::size_t m : machines) {
    for (int arr = 0; arr < static_cast<int>(system.array_count()); ++arr) {
      for (int s = 0; s < n; ++s) {
        const Value x = a.machines[m].value(arr, s, n);
        const Value y = b.machines[m].value(arr, s, n);
        if (x != y) out.push_back({m, arr, s, x, y});
      }
    }
  }
  return out;
}

std::string change_text(const GCASystem& system, const Change& c) {
  const Domain& d = system.array_domain(c.array);
  return "m" + std::to_string(c.machine + 1) + "." + system.pattern.arrays[c.array].name + "[" +
         std::to_string(c.slot + 1) + "]: " + format_value(d, c.from) + " -> " + format_value(d, c.to);
}

std::string summary(const GCASystem& system, const SystemConfig& config, const std::vector<AtomLeaf>& watch) {
  std::string out;
  for (const auto& leaf : watch) {
    if (!out.empty()) out += ", ";
    out += leaf_name(leaf, system) + " = " + leaf_value(leaf, system, config);
  }
  return out;
}

}  // namespace

std::string narrate_trace(const Trace& trace, const GCASystem& system, const FaultAutomaton& automaton,
                          const std::vector<std::size_t>& machines, const std::vector<AtomLeaf>& watch,
                          const std::string& indent) {
  std::ostringstream out;
  int period = 1;
  // A period header is printed once the period has something to show.
  std::optional<int> pending;
  auto open = [&] {
    if (!pending) return;
    out << indent << "period " << period << ", fault location " << automaton.locations[*pending].name << "\n";
    pending.reset();
  };
  // Runs of steps that only move cursors are folded into one line.
  std::size_t quiet = 0;
  int quiet_from = 0;
  int quiet_to = 0;
  auto flush = [&] {
    if (quiet > 0) open();
    if (quiet == 1) {
      out << indent << "  σ" << quiet_from << ", no value change\n";
    } else if (quiet > 1) {
      out << indent << "  " << quiet << " steps without value change (σ" << quiet_from;
      if (quiet_to != quiet_from) out << " .. σ" << quiet_to;
      out << ")\n";
    }
    quiet = 0;
  };
  pending = trace.initial_location;
  for (std::size_t i = 0; i < trace.labels.size(); ++i) {
    const StepLabel& l = trace.labels[i];
    const auto diff = changes(system, trace.states[i], trace.states[i + 1], machines);
    const bool at_loop = trace.loop_start && *trace.loop_start == i;
    if (l.kind != StepKind::kJump && l.faults.empty() && diff.empty() && !at_loop) {
      if (quiet == 0) quiet_from = l.position;
      quiet_to = l.position;
      ++quiet;
      continue;
    }
    flush();
    open();
    if (at_loop) out << indent << "  -- loop starts here --\n";
    if (l.kind == StepKind::kJump) {
      if (!watch.empty()) out << indent << "  end of period " << period << ": " << summary(system, trace.states[i], watch) << "\n";
      out << indent << "  " << describe(l, system, automaton) << "\n";
      ++period;
      pending = l.location;
      continue;
    }
    out << indent << "  " << describe(l, system, automaton) << "\n";
    for (const auto& c : diff) out << indent << "      " << change_text(system, c) << "\n";
  }
  flush();
  if (trace.loop_start) {
    if (*trace.loop_start == trace.labels.size()) {
      open();
      out << indent << "  -- loop starts here --\n";
    }
    out << indent << "  then repeats from the loop start";
    if (trace.loop_label) out << " via " << describe(*trace.loop_label, system, automaton);
    out << "\n";
  }
  if (!watch.empty() && !trace.states.empty() && !trace.loop_start) {
    out << indent << "final state: " << summary(system, trace.states.back(), watch) << "\n";
  }
  return out.str();
}

namespace detail {

namespace {

nlohmann::ordered_json label_json(const StepLabel& l, const GCASystem& system, const FaultAutomaton& automaton) {
  nlohmann::ordered_json j;
  switch (l.kind) {
    case StepKind::kAction:
      j["kind"] = "action";
      j["machine"] = l.machine + 1;
      j["position"] = l.position;
      j["action"] = to_string(system.pattern.actions[l.position - 1]);
      break;
    case StepKind::kComposite:
      j["kind"] = "composite";
      j["position"] = l.position;
      j["action"] = to_string(system.pattern.actions[l.position - 1]);
      j["variant"] = l.variant;
      break;
    case StepKind::kJump:
      j["kind"] = "jump";
      j["env_choice"] = l.env_choice;
      break;
  }
  j["location"] = automaton.locations[l.location].name;
  j["faults"] = l.faults;
  return j;
}

nlohmann::ordered_json watch_json(const GCASystem& system, const SystemConfig& config,
                                  const std::vector<AtomLeaf>& watch) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& leaf : watch) j[leaf_name(leaf, system)] = leaf_value(leaf, system, config);
  return j;
}

}  // namespace

nlohmann::ordered_json trace_json(const Trace& trace, const GCASystem& system, const FaultAutomaton& automaton,
                                  const std::vector<std::size_t>& machines, const std::vector<AtomLeaf>& watch) {
  nlohmann::ordered_json j;
  j["initial_location"] = automaton.locations[trace.initial_location].name;
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  int period = 1;
  for (std::size_t i = 0; i < trace.labels.size(); ++i) {
    const StepLabel& l = trace.labels[i];
    nlohmann::ordered_json s = label_json(l, system, automaton);
    s["period"] = period;
    nlohmann::ordered_json ch = nlohmann::ordered_json::array();
    for (const auto& c : changes(system, trace.states[i], trace.states[i + 1], machines)) {
      const Domain& d = system.array_domain(c.array);
      ch.push_back({{"machine", c.machine + 1},
                    {"array", system.pattern.arrays[c.array].name},
                    {"slot", c.slot + 1},
                    {"from", format_value(d, c.from)},
                    {"to", format_value(d, c.to)}});
    }
    s["changes"] = std::move(ch);
    if (l.kind == StepKind::kJump) {
      s["end_of_period"] = watch_json(system, trace.states[i], watch);
      ++period;
    }
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  j["loop_start"] = trace.loop_start ? nlohmann::ordered_json(*trace.loop_start) : nlohmann::ordered_json();
  if (trace.loop_label) j["loop_step"] = label_json(*trace.loop_label, system, automaton);
  if (!trace.states.empty()) j["final"] = watch_json(system, trace.states.back(), watch);
  return j;
}

}  // namespace detail

}  // namespace gcaverify
