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

#include "gcaverify/logic.hpp"

#include <cctype>
#include <optional>

#include "gcaverify/errors.hpp"
#include "gcaverify/mechanisms.hpp"
#include "lexer.hpp"

namespace gcaverify {

using detail::Lexer;
using detail::Tok;

Formula Formula::truth(bool value) {
  Formula f;
  f.kind = value ? FormulaKind::kTrue : FormulaKind::kFalse;
  return f;
}

Formula Formula::atom(Expr lhs, Relation rel, Expr rhs) {
  Formula f;
  f.kind = FormulaKind::kAtom;
  f.lhs = std::move(lhs);
  f.rel = rel;
  f.rhs = std::move(rhs);
  return f;
}

Formula Formula::unary(FormulaKind kind, Formula operand) {
  Formula f;
  f.kind = kind;
  f.sub.push_back(std::move(operand));
  return f;
}

Formula Formula::binary(FormulaKind kind, Formula lhs, Formula rhs) {
  Formula f;
  f.kind = kind;
  f.sub.push_back(std::move(lhs));
  f.sub.push_back(std::move(rhs));
  return f;
}

bool Formula::is_temporal() const {
  return kind == FormulaKind::kNext || kind == FormulaKind::kGlobally || kind == FormulaKind::kFinally ||
         kind == FormulaKind::kUntil;
}

bool Formula::is_propositional() const {
  if (is_temporal()) return false;
  for (const auto& s : sub) {
    if (!s.is_propositional()) return false;
  }
  return true;
}

bool Formula::operator==(const Formula& other) const {
  if (kind != other.kind) return false;
  if (kind == FormulaKind::kAtom) return rel == other.rel && lhs == other.lhs && rhs == other.rhs;
  return sub == other.sub;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_keyword(const detail::Token& t, const char* word) {
  return t.kind == Tok::kIdent && t.text == word;
}

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : lex_(text) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (lex_.peek().kind != Tok::kEnd) {
      throw SyntaxError("unexpected '" + lex_.peek().text + "'", lex_.peek().pos);
    }
    return f;
  }

 private:
  Formula parse_iff() {
    Formula lhs = parse_implies();
    while (lex_.accept(Tok::kIff)) lhs = Formula::binary(FormulaKind::kIff, lhs, parse_implies());
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (lex_.accept(Tok::kImplies)) return Formula::binary(FormulaKind::kImplies, lhs, parse_implies());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (lex_.accept(Tok::kOr)) lhs = Formula::binary(FormulaKind::kOr, lhs, parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_until();
    while (lex_.accept(Tok::kAnd)) lhs = Formula::binary(FormulaKind::kAnd, lhs, parse_until());
    return lhs;
  }

  Formula parse_until() {
    Formula lhs = parse_unary();
    if (is_keyword(lex_.peek(), "U")) {
      lex_.take();
      return Formula::binary(FormulaKind::kUntil, lhs, parse_until());
    }
    return lhs;
  }

  Formula parse_unary() {
    if (lex_.accept(Tok::kNot)) return Formula::unary(FormulaKind::kNot, parse_unary());
    const auto& t = lex_.peek();
    if (t.kind == Tok::kIdent) {
      if (t.text == "G" || t.text == "AG") {
        lex_.take();
        return Formula::unary(FormulaKind::kGlobally, parse_unary());
      }
      if (t.text == "F") {
        lex_.take();
        return Formula::unary(FormulaKind::kFinally, parse_unary());
      }
      if (t.text == "X") {
        lex_.take();
        return Formula::unary(FormulaKind::kNext, parse_unary());
      }
    }
    return parse_primary();
  }

  Formula parse_primary() {
    const auto& t = lex_.peek();
    if (is_keyword(t, "true")) {
      lex_.take();
      return Formula::truth(true);
    }
    if (is_keyword(t, "false")) {
      lex_.take();
      return Formula::truth(false);
    }
    if (t.kind == Tok::kLParen) {
      // Either a parenthesized formula or an atom whose left side starts with
      // a parenthesized expression; try the former first.
      Lexer saved = lex_;
      try {
        lex_.take();
        Formula f = parse_iff();
        lex_.expect(Tok::kRParen, "')'");
        switch (lex_.peek().kind) {
          case Tok::kPlus:
          case Tok::kMinus:
          case Tok::kStar:
          case Tok::kSlash:
          case Tok::kEq:
          case Tok::kLt:
          case Tok::kLe:
            throw SyntaxError("arithmetic continues", lex_.peek().pos);
          default:
            return f;
        }
      } catch (const SyntaxError&) {
        lex_ = saved;
      }
    }
    return parse_atom();
  }

  Formula parse_atom() {
    Expr lhs = detail::parse_expr_prefix(lex_);
    Relation rel;
    const auto& t = lex_.peek();
    switch (t.kind) {
      case Tok::kEq: rel = Relation::kEq; break;
      case Tok::kLt: rel = Relation::kLt; break;
      case Tok::kLe: rel = Relation::kLe; break;
      default:
        throw SyntaxError("expected '=', '<' or '<=' in atom, found '" +
                              (t.kind == Tok::kEnd ? std::string("end of input") : t.text) + "'",
                          t.pos);
    }
    lex_.take();
    Expr rhs = detail::parse_expr_prefix(lex_);
    return Formula::atom(std::move(lhs), rel, std::move(rhs));
  }

  Lexer lex_;
};

const char* op_text(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::kAnd: return " & ";
    case FormulaKind::kOr: return " | ";
    case FormulaKind::kImplies: return " -> ";
    case FormulaKind::kIff: return " <-> ";
    case FormulaKind::kUntil: return " U ";
    default: return "?";
  }
}

const char* rel_text(Relation rel) {
  switch (rel) {
    case Relation::kEq: return " = ";
    case Relation::kLt: return " < ";
    case Relation::kLe: return " <= ";
  }
  return "?";
}

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse_all(); }

std::string to_string(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::kTrue: return "true";
    case FormulaKind::kFalse: return "false";
    case FormulaKind::kAtom: return "(" + to_string(f.lhs) + rel_text(f.rel) + to_string(f.rhs) + ")";
    case FormulaKind::kNot: return "!" + to_string(f.sub[0]);
    case FormulaKind::kNext: return "X(" + to_string(f.sub[0]) + ")";
    case FormulaKind::kGlobally: return "G(" + to_string(f.sub[0]) + ")";
    case FormulaKind::kFinally: return "F(" + to_string(f.sub[0]) + ")";
    default:
      return "(" + to_string(f.sub[0]) + op_text(f.kind) + to_string(f.sub[1]) + ")";
  }
}

// ---------------------------------------------------------------------------
// Binding

namespace {

struct Binder {
  const GCASystem& system;
  CompiledFormula& out;
  std::optional<int> machine;
  std::string machine_witness;

  // Splits "m3.Result" into (2, "Result").
  std::pair<int, std::string> split(const std::string& name) {
    const auto dot = name.find('.');
    bool ok = dot != std::string::npos && dot > 1 && name[0] == 'm';
    for (std::size_t i = 1; ok && i < dot; ++i) ok = std::isdigit(static_cast<unsigned char>(name[i]));
    if (!ok) {
      throw ModelError("unknown identifier '" + name + "' (properties name variables as mI.Port)");
    }
    const int m = std::stoi(name.substr(1, dot - 1));
    if (m < 1 || m > system.n()) throw ModelError("machine index in '" + name + "' outside 1..n");
    return {m - 1, name.substr(dot + 1)};
  }

  void claim(int m, const std::string& name) {
    if (machine && *machine != m) {
      throw AdmissibilityError("atoms mix machines: '" + machine_witness + "' and '" + name +
                               "' (properties must be local to one machine)");
    }
    machine = m;
    machine_witness = name;
  }

  Expr leaf(AtomLeaf l, const std::string& name) {
    out.leaves.push_back(l);
    return Expr::param(name, static_cast<int>(out.leaves.size()) - 1);
  }

  Expr bind(const Expr& e) {
    const ExprNode& node = e.node();
    switch (node.kind) {
      case ExprKind::kConst:
        return e;
      case ExprKind::kSelf:
        throw ModelError("the machine index x cannot appear in a property");
      case ExprKind::kParam:
      case ExprKind::kCall:
        throw ModelError("'" + node.name + "' cannot appear in a property atom");
      case ExprKind::kEnv:
      case ExprKind::kSlot: {
        auto [m, rest] = split(node.name);
        claim(m, node.name);
        if (rest == "queue") {
          throw AdmissibilityError("'" + node.name + "' refers to a message queue; properties are local");
        }
        if (rest == "next") {
          if (node.kind == ExprKind::kSlot) throw ModelError("'" + node.name + "' is not an array");
          return leaf(AtomLeaf{m, -1, 0}, node.name);
        }
        if (system.pattern.env_index(rest) >= 0) {
          throw AdmissibilityError("'" + node.name + "' is an environment variable; properties range over "
                                   "ports and the cursor only");
        }
        const int array = system.pattern.array_index(rest);
        if (array < 0) throw ModelError("unknown identifier '" + node.name + "'");
        int slot = m;
        if (node.kind == ExprKind::kSlot) {
          if (node.index.relative) throw ModelError("use absolute slots in properties: '" + node.name + "'");
          slot = resolve_index(node.index, m + 1, system.n()) - 1;
        }
        return leaf(AtomLeaf{m, array, slot}, node.name + (node.kind == ExprKind::kSlot
                                                               ? "[" + to_string(node.index) + "]"
                                                               : std::string()));
      }
      default: {
        ExprNode copy = node;
        for (auto& a : copy.args) a = bind(a);
        return Expr::from_node(std::move(copy));
      }
    }
  }

  Formula bind(const Formula& f) {
    if (f.kind == FormulaKind::kNext) {
      throw AdmissibilityError("the next operator X is not preserved by the lockstep model");
    }
    if (f.kind == FormulaKind::kAtom) {
      if (f.rel != Relation::kEq) {
        if (system.mode == AnalysisMode::kFaultAbstraction) {
          throw AdmissibilityError("order atoms are only available in interval analysis");
        }
        out.extended = true;
      }
      return Formula::atom(bind(f.lhs), f.rel, bind(f.rhs));
    }
    Formula copy = f;
    for (auto& s : copy.sub) s = bind(s);
    return copy;
  }
};

}  // namespace

CompiledFormula compile_formula(const Formula& formula, const GCASystem& system) {
  CompiledFormula out;
  out.n = system.n();
  Binder b{system, out, std::nullopt, {}};
  out.formula = b.bind(formula);
  out.machine = b.machine.value_or(0);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

std::optional<Value> eval_side(const CompiledFormula& c, const Expr& e, const ProjectedState& s) {
  return eval_concrete(e, [&](const Expr& leaf) -> Value {
    const AtomLeaf& l = c.leaves.at(leaf.node().id);
    if (l.array < 0) return s.next;
    return s.values.at(static_cast<std::size_t>(l.array) * c.n + l.slot);
  });
}

bool eval_atom(const CompiledFormula& c, const Formula& atom, const ProjectedState& s) {
  auto l = eval_side(c, atom.lhs, s);
  auto r = eval_side(c, atom.rhs, s);
  if (!l || !r) return false;
  switch (atom.rel) {
    case Relation::kEq: return *l == *r;
    case Relation::kLt: return *l < *r;
    case Relation::kLe: return *l <= *r;
  }
  return false;
}

bool eval_prop(const CompiledFormula& c, const Formula& f, const ProjectedState& s) {
  switch (f.kind) {
    case FormulaKind::kTrue: return true;
    case FormulaKind::kFalse: return false;
    case FormulaKind::kAtom: return eval_atom(c, f, s);
    case FormulaKind::kNot: return !eval_prop(c, f.sub[0], s);
    case FormulaKind::kAnd: return eval_prop(c, f.sub[0], s) && eval_prop(c, f.sub[1], s);
    case FormulaKind::kOr: return eval_prop(c, f.sub[0], s) || eval_prop(c, f.sub[1], s);
    case FormulaKind::kImplies: return !eval_prop(c, f.sub[0], s) || eval_prop(c, f.sub[1], s);
    case FormulaKind::kIff: return eval_prop(c, f.sub[0], s) == eval_prop(c, f.sub[1], s);
    default: throw Error("temporal operator in a state formula");
  }
}

// Truth values of `f` at every lasso position.
std::vector<char> eval_positions(const CompiledFormula& c, const Formula& f,
                                 const std::vector<ProjectedState>& states, std::size_t loop) {
  const std::size_t m = states.size();
  auto succ = [&](std::size_t i) { return i + 1 < m ? i + 1 : loop; };
  std::vector<char> out(m, 0);
  switch (f.kind) {
    case FormulaKind::kTrue:
    case FormulaKind::kFalse:
    case FormulaKind::kAtom:
      for (std::size_t i = 0; i < m; ++i) out[i] = eval_prop(c, f, states[i]);
      return out;
    case FormulaKind::kNot: {
      auto a = eval_positions(c, f.sub[0], states, loop);
      for (std::size_t i = 0; i < m; ++i) out[i] = !a[i];
      return out;
    }
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImplies:
    case FormulaKind::kIff: {
      auto a = eval_positions(c, f.sub[0], states, loop);
      auto b = eval_positions(c, f.sub[1], states, loop);
      for (std::size_t i = 0; i < m; ++i) {
        switch (f.kind) {
          case FormulaKind::kAnd: out[i] = a[i] && b[i]; break;
          case FormulaKind::kOr: out[i] = a[i] || b[i]; break;
          case FormulaKind::kImplies: out[i] = !a[i] || b[i]; break;
          default: out[i] = a[i] == b[i]; break;
        }
      }
      return out;
    }
    case FormulaKind::kNext: {
      auto a = eval_positions(c, f.sub[0], states, loop);
      for (std::size_t i = 0; i < m; ++i) out[i] = a[succ(i)];
      return out;
    }
    case FormulaKind::kGlobally:
    case FormulaKind::kFinally:
    case FormulaKind::kUntil: {
      std::vector<char> hold(m, 1);  // left operand of U
      std::vector<char> goal;        // right operand of U
      if (f.kind == FormulaKind::kUntil) {
        hold = eval_positions(c, f.sub[0], states, loop);
        goal = eval_positions(c, f.sub[1], states, loop);
      } else {
        goal = eval_positions(c, f.sub[0], states, loop);
      }
      if (f.kind == FormulaKind::kGlobally) {
        // Greatest fixpoint of G a = a & X G a.
        out.assign(m, 1);
        for (bool changed = true; changed;) {
          changed = false;
          for (std::size_t i = m; i-- > 0;) {
            const char v = goal[i] && out[succ(i)];
            if (v != out[i]) {
              out[i] = v;
              changed = true;
            }
          }
        }
        return out;
      }
      // Least fixpoint of a U b = b | (a & X(a U b)).
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = m; i-- > 0;) {
          const char v = goal[i] || (hold[i] && out[succ(i)]);
          if (v != out[i]) {
            out[i] = v;
            changed = true;
          }
        }
      }
      return out;
    }
  }
  return out;
}

}  // namespace

bool eval_state(const CompiledFormula& compiled, const ProjectedState& state) {
  return eval_prop(compiled, compiled.formula, state);
}

bool eval_lasso(const CompiledFormula& compiled, const std::vector<ProjectedState>& states,
                std::size_t loop_start) {
  if (states.empty()) throw Error("cannot evaluate a formula on an empty trace");
  if (loop_start >= states.size()) throw Error("lasso loop start out of range");
  return eval_positions(compiled, compiled.formula, states, loop_start)[0];
}

bool eval_trace(const CompiledFormula& compiled, const Trace& trace) {
  ProjectedTrace p = project(trace, compiled.machine);
  return eval_lasso(compiled, p, trace.loop_start.value_or(p.size() - 1));
}

}  // namespace gcaverify
