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

#include "gcaverify/traces.hpp"

#include <map>

namespace gcaverify {

ProjectedState project_state(const SystemConfig& config, std::size_t machine) {
  const MachineState& m = config.machines.at(machine);
  return ProjectedState{m.values, m.next};
}

ProjectedTrace project(const Trace& trace, std::size_t machine) {
  ProjectedTrace out;
  out.reserve(trace.states.size());
  for (const auto& s : trace.states) out.push_back(project_state(s, machine));
  return out;
}

std::set<int> classify_valid_receives(const std::vector<ActionTemplate>& sequence) {
  std::set<int> valid;
  std::map<std::string, int> last_send;
  std::map<std::string, int> last_receive;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const int pos = static_cast<int>(i) + 1;
    const auto& a = sequence[i];
    if (a.kind == ActionKind::kSend) {
      last_send[a.array] = pos;
    } else if (a.kind == ActionKind::kReceive) {
      auto s = last_send.find(a.array);
      const int rec = last_receive.count(a.array) ? last_receive[a.array] : 0;
      if (s != last_send.end() && s->second >= rec) valid.insert(pos);
      last_receive[a.array] = pos;
    }
  }
  return valid;
}

Trace prune_counterexample(const Trace& trace, std::size_t machine) {
  Trace out;
  out.initial_location = trace.initial_location;
  if (trace.states.empty()) return out;
  out.states.push_back(trace.states.front());
  // covering[i]: pruned index of the last kept state at or before state i.
  std::vector<std::size_t> covering(trace.states.size(), 0);
  for (std::size_t i = 0; i < trace.labels.size(); ++i) {
    const StepLabel& l = trace.labels[i];
    const bool changes =
        !(project_state(trace.states[i], machine) == project_state(trace.states[i + 1], machine));
    if (changes || l.kind == StepKind::kJump || !l.faults.empty()) {
      out.labels.push_back(l);
      out.states.push_back(trace.states[i + 1]);
    }
    covering[i + 1] = out.states.size() - 1;
  }
  if (trace.loop_start) out.loop_start = covering.at(*trace.loop_start);
  out.loop_label = trace.loop_label;
  return out;
}

}  // namespace gcaverify
