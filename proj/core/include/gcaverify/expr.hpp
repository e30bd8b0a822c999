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

#ifndef GCAVERIFY_EXPR_HPP_
#define GCAVERIFY_EXPR_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gcaverify/value.hpp"

namespace gcaverify {

enum class ExprKind {
  kConst,
  kSlot,   // array element a[x+i] or a[i]
  kEnv,    // environment variable of the executing machine
  kSelf,   // the machine index x (1-based)
  kParam,  // task parameter or the argument of an error function
  kNeg,
  kAdd,
  kMul,
  kDiv,
  kCall,
};

// Index of an array element inside a pattern. Relative indices denote x⊕offset
// (offset 0 is x itself); absolute indices name slot `offset` directly.
struct IndexSpec {
  bool relative = true;
  int offset = 0;

  bool operator==(const IndexSpec&) const = default;
};

enum class CallKind { kUnbound, kBuiltin, kTask, kTrigger };

enum class Builtin { kEq, kDiffer, kLt, kLe, kIte, kMajority, kMedian };

struct ExprNode;

// Immutable expression tree with value semantics; copies share structure.
class Expr {
 public:
  Expr() = default;

  static Expr constant(Value v);
  static Expr slot(std::string array, IndexSpec index);
  static Expr env(std::string name);
  static Expr self();
  static Expr param(std::string name, int index = -1);
  static Expr neg(Expr operand);
  static Expr add(Expr lhs, Expr rhs);
  static Expr mul(Expr lhs, Expr rhs);
  static Expr div(Expr lhs, Expr rhs);
  static Expr call(std::string name, std::vector<Expr> args);

  bool empty() const { return node_ == nullptr; }
  explicit operator bool() const { return node_ != nullptr; }
  const ExprNode& node() const { return *node_; }
  ExprKind kind() const;

  // Structural equality, ignoring binding ids.
  bool operator==(const Expr& other) const;

  static Expr from_node(ExprNode node);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  ExprKind kind = ExprKind::kConst;
  Value constant = 0;
  std::string name;
  IndexSpec index;
  // Filled in by binding: array/env/param index, builtin/task/trigger index.
  int id = -1;
  // Task output index for task calls.
  int sub = -1;
  CallKind call = CallKind::kUnbound;
  std::vector<Expr> args;
};

// Parses the pattern expression language:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | primary
//   primary := number | Correct | Erroneous | x | name '[' index ']'
//            | name '(' expr, ... ')' | name | '(' expr ')'
//   index   := x | x '+' number | x '-' number | number
// Names may contain one dot (task outputs such as PIDCtrl.Result).
// Throws SyntaxError.
Expr parse_expr(std::string_view text);

// Inverse of parse_expr up to whitespace and redundant parentheses.
std::string to_string(const Expr& expr);
std::string to_string(const IndexSpec& index);

// Collects the names of every array referenced by the expression.
void collect_arrays(const Expr& expr, std::vector<std::string>& out);

}  // namespace gcaverify

#endif  // GCAVERIFY_EXPR_HPP_
