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

#ifndef GCAVERIFY_FAULTS_HPP_
#define GCAVERIFY_FAULTS_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gcaverify/config.hpp"
#include "gcaverify/expr.hpp"
#include "gcaverify/pattern.hpp"

namespace gcaverify {

enum class FaultType { kWrongResult, kFailSilent, kMessageLoss, kCorruption, kMasquerade };

std::string to_string(FaultType type);
std::optional<FaultType> parse_fault_type(const std::string& text);

// Fault tuple (act, type, σ, i, j, k, k', ψ). σ is identified by its position
// j; machine indices are 1-based as in model files.
struct FaultSpec {
  std::string name;
  std::string act;
  FaultType type = FaultType::kWrongResult;
  int machine = 1;   // i
  int position = 1;  // j
  int k = 0;
  int k_prime = 0;
  // Error function over the parameter `value`. Ignored under fault
  // abstraction, where ψ always yields Erroneous.
  Expr psi;
  Expr bound_psi;  // filled by validate_faults
};

struct FaultLocation {
  std::string name;
  std::vector<std::string> active;  // Σ(location)
};

// Tick-level fault automaton: one location per period, one edge per jump.
struct FaultAutomaton {
  std::vector<FaultLocation> locations;
  std::vector<std::vector<int>> edges;  // successor location indices
  std::vector<int> initial;
  std::vector<FaultSpec> faults;
  std::optional<double> ltbf;  // η in time units

  // One location, no flags, self loop.
  static FaultAutomaton fault_free();

  int location_index(const std::string& name) const;
  bool is_active(int location, const std::string& act) const;
  bool is_fault_free(int location) const;
};

// Checks flags, indices and the type/action compatibility and binds ψ.
// Throws ModelError.
void validate_faults(FaultAutomaton& automaton, const GCASystem& system);

std::vector<int> step_fault_automaton(const FaultAutomaton& automaton, int location);

// The fault that perturbs action `position` (1-based) of `machine` (0-based)
// in a period spent in `location`, or null. The first declared match wins.
const FaultSpec* firing_fault(const FaultAutomaton& automaton, int location, std::size_t machine,
                              int position);

// A message produced by a send, before it is appended to `target`'s queue.
struct Delivery {
  int target = 0;
  Message message;
};

// Local effect of the next action of `machine` under an optional fault: the
// returned config has the machine's values and cursor updated but no queue
// appended yet; `deliveries` lists the messages in target order.
struct ActionOutcome {
  SystemConfig config;
  std::vector<Delivery> deliveries;
};

ActionOutcome action_outcome(const GCASystem& system, const SystemConfig& config, std::size_t machine,
                             const FaultSpec* fault);

// Executes the next action of `machine` under `fault` (which must attach to
// that action instance). With fault == nullptr this equals exec_action.
SystemConfig apply_fault(const GCASystem& system, const SystemConfig& config, const FaultSpec* fault,
                         std::size_t machine);

// Tick abstraction of a least time between failures η for period T.
struct LtbfBudget {
  int cap = 1;                // faults per period, ⌈T/η⌉
  std::optional<int> spacing;  // clean periods after a faulty one, ⌊η/T⌋-1 when η > 3T
};

LtbfBudget ltbf_budget(double eta, double period);

// Product of the automaton with the LTBF gate. Locations with more active
// flags than the cap are dropped; after a faulty period `spacing` fault-free
// periods are forced. The result has no ltbf. Unchanged if ltbf is unset.
FaultAutomaton gate_automaton(const FaultAutomaton& automaton, double period);

// Per period: the fault location and the (machine 0-based, position) action
// instances that were actually perturbed.
struct FaultRun {
  std::vector<int> locations;
  std::vector<std::set<std::pair<int, int>>> actuating;
};

// True iff both runs span the same periods and perturb the same action
// instances in every period. Order inside a period is irrelevant.
bool effect_indistinguishable(const FaultRun& a, const FaultRun& b);

}  // namespace gcaverify

#endif  // GCAVERIFY_FAULTS_HPP_
