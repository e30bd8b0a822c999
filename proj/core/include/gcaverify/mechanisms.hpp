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

#ifndef GCAVERIFY_MECHANISMS_HPP_
#define GCAVERIFY_MECHANISMS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gcaverify/expr.hpp"
#include "gcaverify/value.hpp"

namespace gcaverify {

struct ActionTemplate;
struct ArrayDecl;

// ---------------------------------------------------------------------------
// Tasks and fault propagation

// Task-implication graph: for each output, the input indices it depends on.
struct ImplicationGraph {
  std::vector<std::vector<int>> depends;
};

struct TaskOutput {
  std::string name;
  // Interval-mode definition over the task parameters.
  Expr expr;
};

// Opaque user task (e.g. a PID controller). In fault-abstraction mode only its
// dependency structure matters; in interval mode each output has an expression.
struct TaskDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<TaskOutput> outputs;
  std::optional<ImplicationGraph> implication;

  int output_index(std::string_view output) const;
};

// Without an implication graph every output becomes Erroneous as soon as one
// input is Erroneous; with a graph only outputs depending on an Erroneous input
// do. Returns one status per output.
std::vector<Value> propagate_fault_abstraction(std::size_t output_count,
                                               std::span<const Value> inputs,
                                               const std::optional<ImplicationGraph>& implication);

// ---------------------------------------------------------------------------
// TestPortAbsolute two-round voting

// Judgment array of one machine: entry m is true when machine m is judged
// faulty. The own entry is always false.
using Judgments = std::vector<bool>;

// Per machine, the final "judged faulty" decision.
using FaultStatusVector = std::vector<bool>;

// Round one on machine `self` (0-based): a sender whose value differs from the
// local one, or whose value is missing, is judged faulty.
Judgments test_port_absolute_round1(std::size_t self, Value own,
                                    std::span<const std::optional<Value>> received);

// Round two: machine m is faulty iff a strict majority of the opinions about m
// say so. A missing opinion array counts as judging everybody faulty.
FaultStatusVector test_port_absolute_round2(std::span<const std::optional<Judgments>> opinions,
                                            std::size_t n);

// ---------------------------------------------------------------------------
// Redundancy trigger

struct FaultConfiguration {
  std::string name;
  std::vector<int> faulty;  // 1-based machine indices judged faulty
  int responsible = 1;      // 1-based
};

struct TriggerTable {
  std::string name;
  int n = 3;
  std::vector<FaultConfiguration> configurations;

  // Index of the configuration matching the status vector, if any.
  std::optional<std::size_t> match(const FaultStatusVector& statuses) const;
};

struct TriggerState {
  // Responsible machine (1-based); empty after an undefined configuration.
  std::optional<int> responsible = 1;
  std::string configuration = "initial";

  bool operator==(const TriggerState&) const = default;
};

TriggerState redundancy_trigger(const TriggerTable& table, const TriggerState& state,
                                const FaultStatusVector& statuses);

// Encoding of the trigger inside a model port: responsible machine r is stored
// as r-1 (so 0 means machine 1); an undefined configuration is stored as n.
Value encode_trigger(const TriggerState& state, int n);

// The balanced-rod TMR table: All_correct→1, 1_2_correct→1, 2_3_correct→2,
// 1_3_correct→1.
TriggerTable tmr_trigger_table();

// ---------------------------------------------------------------------------
// Value unification and interval evaluation

// Median over the own value and the received ones; requires an odd count.
// Under fault abstraction (Correct < Erroneous) this is the majority value.
Value median_unify(Value own, std::span<const Value> received);

// Result of exact enumeration over a finite valuation.
struct IntervalResult {
  std::set<Value> values;
  bool undefined = false;  // some valuation divided by zero
  bool bounded = false;    // valuation space exceeded the cap; values partial
};

// Domains of the leaves of an expression, keyed by their printed form
// (e.g. "a[x+1]", "In", "value").
using IntervalValuation = std::vector<std::pair<std::string, Domain>>;

// Exact value set of `expr` over every valuation of its leaves. Supports
// constants, leaves, + * / unary minus and the value-level builtins.
IntervalResult eval_interval(const Expr& expr, const IntervalValuation& valuation,
                             std::uint64_t cap = 1'000'000);

// Concrete evaluation with a leaf lookup; empty on division by zero.
std::optional<Value> eval_concrete(const Expr& expr,
                                   const std::function<Value(const Expr& leaf)>& leaf_value);

// ---------------------------------------------------------------------------
// Builtins

struct BuiltinInfo {
  Builtin id;
  std::string_view name;
  int min_args;
  int max_args;  // -1: variadic
};

std::optional<BuiltinInfo> find_builtin(std::string_view name);

// Value-level evaluation; empty result signals an undefined value.
std::optional<Value> apply_builtin(Builtin id, std::span<const Value> args);

// ---------------------------------------------------------------------------
// Mechanism macros, expanded into ordinary pattern actions

struct MacroExpansion {
  std::vector<ArrayDecl> arrays;
  std::vector<ActionTemplate> actions;
};

// Array holding machine x's final opinion about machine m (1-based) after
// TestPortAbsolute on `port`.
std::string tpa_status_array(const std::string& port, int m);
std::string tpa_judgment_array(const std::string& port, int m);
std::string liveness_status_array(const std::string& name, int m);

// send(port); receive(port); round-1 judgments; exchange of judgment arrays;
// round-2 majority into the status arrays.
MacroExpansion expand_test_port_absolute(const std::string& port, int n);

// Per-period heartbeat: toggle, send, receive, then judge every machine whose
// heartbeat copy differs from the own one as faulty (its message is missing).
MacroExpansion expand_test_liveness(const std::string& name, int n);

// send(port); receive(port); port[x] <- median(port[x+1..x+n]).
MacroExpansion expand_median_unify(const std::string& port, int n);

// target[x] <- RedundancyTrigger.<table>(status_1[x], ..., status_n[x], target[x]).
// `status_arrays` names the n status arrays in machine order.
MacroExpansion expand_redundancy_trigger(const std::string& table, const std::string& target,
                                         const std::vector<std::string>& status_arrays, int n);

}  // namespace gcaverify

#endif  // GCAVERIFY_MECHANISMS_HPP_
