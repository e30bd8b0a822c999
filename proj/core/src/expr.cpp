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

#include "gcaverify/expr.hpp"

#include <stdexcept>
#include <utility>

#include "gcaverify/errors.hpp"
#include "lexer.hpp"

namespace gcaverify {

using detail::Lexer;
using detail::Tok;
using detail::Token;

ExprKind Expr::kind() const { return node_->kind; }

Expr Expr::from_node(ExprNode node) {
  return Expr(std::make_shared<const ExprNode>(std::move(node)));
}

Expr Expr::constant(Value v) {
  ExprNode n;
  n.kind = ExprKind::kConst;
  n.constant = v;
  return from_node(std::move(n));
}

Expr Expr::slot(std::string array, IndexSpec index) {
  ExprNode n;
  n.kind = ExprKind::kSlot;
  n.name = std::move(array);
  n.index = index;
  return from_node(std::move(n));
}

Expr Expr::env(std::string name) {
  ExprNode n;
  n.kind = ExprKind::kEnv;
  n.name = std::move(name);
  return from_node(std::move(n));
}

Expr Expr::self() {
  ExprNode n;
  n.kind = ExprKind::kSelf;
  return from_node(std::move(n));
}

Expr Expr::param(std::string name, int index) {
  ExprNode n;
  n.kind = ExprKind::kParam;
  n.name = std::move(name);
  n.id = index;
  return from_node(std::move(n));
}

Expr Expr::neg(Expr operand) {
  ExprNode n;
  n.kind = ExprKind::kNeg;
  n.args.push_back(std::move(operand));
  return from_node(std::move(n));
}

namespace {

Expr make_binary(ExprKind kind, Expr lhs, Expr rhs) {
  ExprNode n;
  n.kind = kind;
  n.args.push_back(std::move(lhs));
  n.args.push_back(std::move(rhs));
  return Expr::from_node(std::move(n));
}

}  // namespace

Expr Expr::add(Expr lhs, Expr rhs) { return make_binary(ExprKind::kAdd, std::move(lhs), std::move(rhs)); }
Expr Expr::mul(Expr lhs, Expr rhs) { return make_binary(ExprKind::kMul, std::move(lhs), std::move(rhs)); }
Expr Expr::div(Expr lhs, Expr rhs) { return make_binary(ExprKind::kDiv, std::move(lhs), std::move(rhs)); }

Expr Expr::call(std::string name, std::vector<Expr> args) {
  ExprNode n;
  n.kind = ExprKind::kCall;
  n.name = std::move(name);
  n.args = std::move(args);
  return from_node(std::move(n));
}

bool Expr::operator==(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  const ExprNode& a = *node_;
  const ExprNode& b = *other.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::kConst:
      return a.constant == b.constant;
    case ExprKind::kSlot:
      return a.name == b.name && a.index == b.index;
    case ExprKind::kEnv:
    case ExprKind::kParam:
      return a.name == b.name;
    case ExprKind::kSelf:
      return true;
    default:
      return a.name == b.name && a.args == b.args;
  }
}

namespace {

Value parse_number(const std::string& text) {
  try {
    return std::stoll(text);
  } catch (const std::out_of_range&) {
    throw SyntaxError("number '" + text + "' out of range", 0);
  }
}

class ExprParser {
 public:
  explicit ExprParser(Lexer& lex) : lex_(lex) {}

  Expr parse_all() {
    Expr e = parse_sum();
    if (lex_.peek().kind != Tok::kEnd) {
      throw SyntaxError("unexpected '" + lex_.peek().text + "'", lex_.peek().pos);
    }
    return e;
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    for (;;) {
      if (lex_.accept(Tok::kPlus)) {
        lhs = Expr::add(lhs, parse_product());
      } else if (lex_.accept(Tok::kMinus)) {
        lhs = Expr::add(lhs, Expr::neg(parse_product()));
      } else {
        return lhs;
      }
    }
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    for (;;) {
      if (lex_.accept(Tok::kStar)) {
        lhs = Expr::mul(lhs, parse_unary());
      } else if (lex_.accept(Tok::kSlash)) {
        lhs = Expr::div(lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (lex_.accept(Tok::kMinus)) return Expr::neg(parse_unary());
    return parse_primary();
  }

  Expr parse_primary() {
    const auto& t = lex_.peek();
    if (t.kind == Tok::kNumber) return Expr::constant(parse_number(lex_.take().text));
    if (lex_.accept(Tok::kLParen)) {
      Expr e = parse_sum();
      lex_.expect(Tok::kRParen, "')'");
      return e;
    }
    if (t.kind != Tok::kIdent) {
      throw SyntaxError("expected an expression, found '" +
                            (t.kind == Tok::kEnd ? std::string("end of input") : t.text) + "'",
                        t.pos);
    }
    Token id = lex_.take();
    if (id.text == "Correct") return Expr::constant(kCorrect);
    if (id.text == "Erroneous") return Expr::constant(kErroneous);
    if (id.text == "x") return Expr::self();
    if (lex_.accept(Tok::kLBracket)) {
      IndexSpec index = parse_index();
      lex_.expect(Tok::kRBracket, "']'");
      return Expr::slot(id.text, index);
    }
    if (lex_.accept(Tok::kLParen)) {
      std::vector<Expr> args;
      if (!lex_.accept(Tok::kRParen)) {
        do {
          args.push_back(parse_sum());
        } while (lex_.accept(Tok::kComma));
        lex_.expect(Tok::kRParen, "')'");
      }
      return Expr::call(id.text, std::move(args));
    }
    // Bare names are environment variables or parameters; binding decides.
    return Expr::env(id.text);
  }

  IndexSpec parse_index() {
    const auto& t = lex_.peek();
    if (t.kind == Tok::kNumber) {
      return IndexSpec{false, static_cast<int>(parse_number(lex_.take().text))};
    }
    if (t.kind == Tok::kIdent && t.text == "x") {
      lex_.take();
      if (lex_.accept(Tok::kPlus)) {
        return IndexSpec{true, static_cast<int>(parse_number(lex_.expect(Tok::kNumber, "offset").text))};
      }
      if (lex_.accept(Tok::kMinus)) {
        return IndexSpec{true, -static_cast<int>(parse_number(lex_.expect(Tok::kNumber, "offset").text))};
      }
      return IndexSpec{true, 0};
    }
    throw SyntaxError("array index must be x, x+i, x-i or a slot number", t.pos);
  }

  Lexer& lex_;
};

void print(const Expr& e, std::string& out, bool top) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprKind::kConst:
      if (n.constant < 0) {
        out += "(" + std::to_string(n.constant) + ")";
      } else {
        out += std::to_string(n.constant);
      }
      return;
    case ExprKind::kSlot:
      out += n.name + "[" + to_string(n.index) + "]";
      return;
    case ExprKind::kEnv:
    case ExprKind::kParam:
      out += n.name;
      return;
    case ExprKind::kSelf:
      out += "x";
      return;
    case ExprKind::kNeg:
      out += "-";
      print(n.args[0], out, false);
      return;
    case ExprKind::kAdd:
    case ExprKind::kMul:
    case ExprKind::kDiv: {
      if (!top) out += "(";
      print(n.args[0], out, false);
      out += n.kind == ExprKind::kAdd ? " + " : n.kind == ExprKind::kMul ? " * " : " / ";
      print(n.args[1], out, false);
      if (!top) out += ")";
      return;
    }
    case ExprKind::kCall:
      out += n.name + "(";
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print(n.args[i], out, true);
      }
      out += ")";
      return;
  }
}

}  // namespace

Expr parse_expr(std::string_view text) {
  Lexer lex(text);
  return ExprParser(lex).parse_all();
}

namespace detail {

Expr parse_expr_prefix(Lexer& lex) { return ExprParser(lex).parse_sum(); }

}  // namespace detail

std::string to_string(const IndexSpec& index) {
  if (!index.relative) return std::to_string(index.offset);
  if (index.offset == 0) return "x";
  if (index.offset > 0) return "x+" + std::to_string(index.offset);
  return "x-" + std::to_string(-index.offset);
}

std::string to_string(const Expr& expr) {
  if (expr.empty()) return "<empty>";
  std::string out;
  print(expr, out, true);
  return out;
}

void collect_arrays(const Expr& expr, std::vector<std::string>& out) {
  if (expr.empty()) return;
  const ExprNode& n = expr.node();
  if (n.kind == ExprKind::kSlot) out.push_back(n.name);
  for (const auto& a : n.args) collect_arrays(a, out);
}

}  // namespace gcaverify
