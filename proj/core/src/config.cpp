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

#include "gcaverify/config.hpp"

#include <cstring>

#include "gcaverify/pattern.hpp"

namespace gcaverify {

bool SystemConfig::all_done() const {
  for (const auto& m : machines) {
    if (!m.done()) return false;
  }
  return true;
}

SystemConfig initial_config(const GCASystem& system) {
  const int n = system.n();
  SystemConfig config;
  config.machines.resize(n);
  for (auto& m : config.machines) {
    m.values.resize(system.pattern.arrays.size() * n);
    for (std::size_t a = 0; a < system.pattern.arrays.size(); ++a) {
      for (int s = 0; s < n; ++s) m.values[a * n + s] = system.pattern.arrays[a].init;
    }
    for (const auto& e : system.pattern.envs) m.env.push_back(e.init);
    m.next = system.k() > 0 ? 1 : 0;
  }
  return config;
}

namespace {

template <typename T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

}  // namespace

std::string canonical_key(const SystemConfig& config) {
  std::string out;
  for (const auto& m : config.machines) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(m.values.size()));
    for (Value v : m.values) put(out, v);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(m.env.size()));
    for (Value v : m.env) put(out, v);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(m.queue.size()));
    for (const auto& msg : m.queue) {
      put<std::int32_t>(out, msg.array);
      put<std::int32_t>(out, msg.slot);
      put(out, msg.payload);
      put<std::int32_t>(out, msg.origin);
    }
    put<std::int32_t>(out, m.next);
  }
  return out;
}

std::string describe_machine(const GCASystem& system, const MachineState& machine) {
  const int n = system.n();
  std::string out;
  for (std::size_t a = 0; a < system.pattern.arrays.size(); ++a) {
    const auto& decl = system.pattern.arrays[a];
    if (!out.empty()) out += " ";
    out += decl.name + "=[";
    for (int s = 0; s < n; ++s) {
      if (s) out += ", ";
      out += format_value(decl.domain, machine.value(static_cast<int>(a), s, n));
    }
    out += "]";
  }
  for (std::size_t e = 0; e < system.pattern.envs.size(); ++e) {
    out += " " + system.pattern.envs[e].name + "=" +
           format_value(system.pattern.envs[e].domain, machine.env[e]);
  }
  out += " next=" + (machine.next == 0 ? std::string("null") : "σ" + std::to_string(machine.next));
  if (!machine.queue.empty()) {
    out += " queue=[";
    for (std::size_t i = 0; i < machine.queue.size(); ++i) {
      const auto& msg = machine.queue[i];
      if (i) out += ", ";
      const auto& decl = system.pattern.arrays[msg.array];
      out += "(" + decl.name + "[" + std::to_string(msg.slot + 1) + "], " +
             format_value(decl.domain, msg.payload) + ")";
    }
    out += "]";
  }
  return out;
}

}  // namespace gcaverify
