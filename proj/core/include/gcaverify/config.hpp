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

#ifndef GCAVERIFY_CONFIG_HPP_
#define GCAVERIFY_CONFIG_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "gcaverify/value.hpp"

namespace gcaverify {

struct GCASystem;

// Queued message (a[slot], payload). `slot` is the claimed sender slot that a
// receive matches on; `origin` is the machine that actually sent it, which
// differs from `slot` only for masqueraded messages.
struct Message {
  int array = 0;
  int slot = 0;
  Value payload = 0;
  int origin = 0;

  auto operator<=>(const Message&) const = default;
};

struct MachineState {
  // Array-major valuation: values[array * n + slot], slots 0-based.
  std::vector<Value> values;
  std::vector<Value> env;
  std::vector<Message> queue;
  // Position of the next action (1..k); 0 encodes null.
  int next = 0;

  Value value(int array, int slot, int n) const { return values[array * n + slot]; }
  Value& value(int array, int slot, int n) { return values[array * n + slot]; }
  bool done() const { return next == 0; }

  auto operator<=>(const MachineState&) const = default;
};

// Configuration of the GCA system. The global clock is abstracted to the
// period counter `tick` and the number of actions executed in the current
// period `micro`.
struct SystemConfig {
  std::vector<MachineState> machines;
  std::uint64_t tick = 0;
  std::uint32_t micro = 0;

  bool all_done() const;

  auto operator<=>(const SystemConfig&) const = default;
};

SystemConfig initial_config(const GCASystem& system);

// Byte string identifying the configuration up to the clock, i.e. ignoring
// `tick` and `micro`. Equal keys iff the machine states are equal.
std::string canonical_key(const SystemConfig& config);

// Human-readable dump of one machine, e.g. "a=[1, 0, 0] next=σ2 queue=[...]".
std::string describe_machine(const GCASystem& system, const MachineState& machine);

}  // namespace gcaverify

#endif  // GCAVERIFY_CONFIG_HPP_
