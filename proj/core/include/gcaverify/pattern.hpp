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

#ifndef GCAVERIFY_PATTERN_HPP_
#define GCAVERIFY_PATTERN_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gcaverify/expr.hpp"
#include "gcaverify/mechanisms.hpp"
#include "gcaverify/value.hpp"

namespace gcaverify {

enum class ActionKind { kAssign, kSend, kReceive };

std::string to_string(ActionKind kind);

// Action template σ_j of the machine pattern, parameterized by machine x.
//   kAssign:  array[x] <- expr
//   kSend:    send(array[x])
//   kReceive: receive(array[x+1], ..., array[x+n])
struct ActionTemplate {
  ActionKind kind = ActionKind::kAssign;
  std::string array;
  Expr expr;
  std::string label;

  static ActionTemplate assign(std::string array, Expr expr, std::string label = {});
  static ActionTemplate send(std::string array, std::string label = {});
  static ActionTemplate receive(std::string array, std::string label = {});
};

std::string to_string(const ActionTemplate& action);

struct ArrayDecl {
  std::string name;
  Domain domain;
  Value init = 0;
};

// Environment variable of V_env_x. `update` lists the alternatives the global
// jump may choose from; empty means the value is kept.
struct EnvDecl {
  std::string name;
  Domain domain;
  Value init = 0;
  std::vector<Expr> update;
};

struct Pattern {
  std::vector<ArrayDecl> arrays;
  std::vector<EnvDecl> envs;
  std::vector<ActionTemplate> actions;
  int n = 1;

  int array_index(const std::string& name) const;
  int env_index(const std::string& name) const;
  std::size_t k() const { return actions.size(); }
};

enum class AnalysisMode { kFaultAbstraction, kIntervals };

// σ_j instantiated for one machine: all indices resolved to 0-based slots and
// all names bound to declaration indices.
struct ConcreteAction {
  ActionKind kind = ActionKind::kAssign;
  int array = -1;
  int position = 0;  // 1-based position j in the sequence
  Expr expr;         // bound; only for kAssign
};

// GCA system: the redundant pattern plus global-jump parameters.
struct GCASystem {
  Pattern pattern;
  double period = 1.0;
  AnalysisMode mode = AnalysisMode::kFaultAbstraction;
  std::vector<TaskDecl> tasks;
  std::vector<TriggerTable> triggers;
  bool flush_queues_at_jump = false;

  // Filled by finalize(): per-machine instantiated sequences and bound env
  // update alternatives (indexed [env]).
  std::vector<std::vector<ConcreteAction>> instances;
  std::vector<std::vector<Expr>> env_updates;

  int n() const { return pattern.n; }
  std::size_t k() const { return pattern.actions.size(); }
  std::size_t array_count() const { return pattern.arrays.size(); }
  const Domain& array_domain(int array) const { return pattern.arrays[array].domain; }

  // Validates the declarations, binds every expression and instantiates the
  // pattern for n machines. Throws ModelError.
  void finalize();
};

// Instantiates the pattern for n machines: machine i's sequence is σ̄ with
// x := i. Indices are resolved modulo n; the returned expressions are unbound.
// Throws ModelError for indices outside 1..n.
std::vector<std::vector<ActionTemplate>> instantiate(const Pattern& pattern, int n);

// Resolves an index for machine x (1-based) to a 1-based slot.
int resolve_index(const IndexSpec& index, int x, int n);

// Binds names in `expr` against the system declarations. `params` are the
// names visible as parameters (task inputs, or "value" for error functions).
Expr bind_expr(const Expr& expr, const GCASystem& system,
               const std::vector<std::string>& params = {});

// Rewrites relative indices of a bound expression into absolute slots for
// machine x (1-based) and replaces the machine index leaf by its value.
Expr resolve_for_machine(const Expr& expr, int x, int n);

}  // namespace gcaverify

#endif  // GCAVERIFY_PATTERN_HPP_
