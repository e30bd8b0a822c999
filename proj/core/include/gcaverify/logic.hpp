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

#ifndef GCAVERIFY_LOGIC_HPP_
#define GCAVERIFY_LOGIC_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gcaverify/expr.hpp"
#include "gcaverify/pattern.hpp"
#include "gcaverify/traces.hpp"

namespace gcaverify {

enum class FormulaKind {
  kTrue,
  kFalse,
  kAtom,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kNext,
  kGlobally,
  kFinally,
  kUntil,
};

enum class Relation { kEq, kLt, kLe };

// PLTL formula. Atoms compare two arithmetic expressions whose variables are
// `mI.Array` (machine I's own slot), `mI.Array[s]` (slot s of machine I's
// copy) and `mI.next` (cursor position, 0 when the period is finished).
struct Formula {
  FormulaKind kind = FormulaKind::kTrue;
  Relation rel = Relation::kEq;
  Expr lhs;
  Expr rhs;
  std::vector<Formula> sub;

  static Formula truth(bool value);
  static Formula atom(Expr lhs, Relation rel, Expr rhs);
  static Formula unary(FormulaKind kind, Formula operand);
  static Formula binary(FormulaKind kind, Formula lhs, Formula rhs);

  bool is_temporal() const;
  // No temporal operator anywhere below.
  bool is_propositional() const;

  bool operator==(const Formula& other) const;
};

// Operators: ! & | -> <-> (binding from tight to loose), the unary temporal
// operators G F X (AG is read as G) and the binary U, which binds tighter than
// the boolean connectives. Throws SyntaxError.
Formula parse_formula(std::string_view text);

// Fully parenthesized; parse_formula(to_string(f)) == f.
std::string to_string(const Formula& formula);

struct NamedProperty {
  std::string name;
  std::string text;
  Formula formula;
};

// A variable occurrence resolved against a system.
struct AtomLeaf {
  int machine = 0;  // 0-based
  int array = -1;   // -1: the cursor
  int slot = 0;     // 0-based
};

// Formula bound to a system and checked for admissibility: atoms range over a
// single machine's valuation and cursor, no X, no queues or environment.
struct CompiledFormula {
  Formula formula;  // leaves rewritten to parameters indexing `leaves`
  std::vector<AtomLeaf> leaves;
  int machine = 0;  // 0-based
  int n = 1;
  // Uses < or <=, which lie outside the equality atoms the stutter argument
  // covers. Only allowed in interval mode.
  bool extended = false;
};

// Throws AdmissibilityError (X, several machines, queue or environment
// atoms, order atoms under fault abstraction) or ModelError (unknown names).
CompiledFormula compile_formula(const Formula& formula, const GCASystem& system);

// Evaluates a propositional formula on one projected state. Atoms whose
// evaluation divides by zero are false.
bool eval_state(const CompiledFormula& compiled, const ProjectedState& state);

// Truth at position 0 of the lasso states[0..] with states.back() followed by
// states[loop_start]. A finite trace is a lasso with loop_start = size - 1.
bool eval_lasso(const CompiledFormula& compiled, const std::vector<ProjectedState>& states,
                std::size_t loop_start);

// Evaluates over the compiled machine's projection of a trace.
bool eval_trace(const CompiledFormula& compiled, const Trace& trace);

}  // namespace gcaverify

#endif  // GCAVERIFY_LOGIC_HPP_
