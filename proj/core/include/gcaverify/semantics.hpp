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

#ifndef GCAVERIFY_SEMANTICS_HPP_
#define GCAVERIFY_SEMANTICS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "gcaverify/config.hpp"
#include "gcaverify/expr.hpp"
#include "gcaverify/pattern.hpp"

namespace gcaverify {

// Result of evaluating an expression. `fault_abstract` marks values in the
// {Correct, Erroneous} domain; `undefined` marks the division-by-zero error
// value, which propagates through every operator.
struct EvalResult {
  Value value = 0;
  bool fault_abstract = false;
  bool undefined = false;
};

struct EvalContext {
  const GCASystem& system;
  const MachineState& machine;
  int x = 0;  // 0-based machine index
  std::span<const Value> params = {};
  bool params_fault_abstract = false;
};

EvalResult evaluate(const Expr& expr, const EvalContext& ctx);

// Converts an evaluation result into a storable value of the target domain:
// undefined becomes Erroneous (fault abstraction) or the domain top.
Value store_value(const Domain& target, const EvalResult& result);

// Executes the next action of `machine` (0-based) exactly as the atomic action
// semantics prescribe. Throws PeriodViolation if the cursor is null.
SystemConfig exec_action(const GCASystem& system, const SystemConfig& config, std::size_t machine);

// Building blocks shared with the fault engine.
void advance_cursor(MachineState& machine, std::size_t k);
// Receive of `array` on machine `self` (0-based): for every other slot, drop
// all related messages and keep the last payload.
void receive_into(MachineState& machine, int array, int self, int n);
Value assigned_value(const GCASystem& system, const MachineState& machine, std::size_t x,
                     const ConcreteAction& action);

// Number of alternatives the global jump may pick for one machine.
std::size_t env_choices_per_machine(const GCASystem& system);
// Total number of joint env choices across machines.
std::size_t env_choice_count(const GCASystem& system);

struct JumpSuccessor {
  std::size_t choice = 0;  // joint choice index, mixed radix over machines
  SystemConfig config;
};

// Global periodic jump. Requires every cursor to be null (throws
// PeriodViolation otherwise); updates the environment from the own slots,
// resets cursors to σ1 and increments the tick. One successor per joint env
// choice; choices producing identical configurations are merged (the lowest
// choice index is kept).
std::vector<JumpSuccessor> global_jump(const GCASystem& system, const SystemConfig& config);

// The jump for one particular joint choice.
SystemConfig global_jump_with(const GCASystem& system, const SystemConfig& config, std::size_t choice);

}  // namespace gcaverify

#endif  // GCAVERIFY_SEMANTICS_HPP_
