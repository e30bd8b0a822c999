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

#include "gcaverify/mechanisms.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "gcaverify/errors.hpp"
#include "gcaverify/pattern.hpp"

namespace gcaverify {

int TaskDecl::output_index(std::string_view output) const {
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (outputs[i].name == output) return static_cast<int>(i);
  }
  return -1;
}

std::vector<Value> propagate_fault_abstraction(std::size_t output_count,
                                               std::span<const Value> inputs,
                                               const std::optional<ImplicationGraph>& implication) {
  std::vector<Value> out(output_count, kCorrect);
  if (!implication) {
    const bool any = std::any_of(inputs.begin(), inputs.end(), [](Value v) { return v != kCorrect; });
    std::fill(out.begin(), out.end(), any ? kErroneous : kCorrect);
    return out;
  }
  for (std::size_t o = 0; o < output_count && o < implication->depends.size(); ++o) {
    for (int i : implication->depends[o]) {
      if (i >= 0 && static_cast<std::size_t>(i) < inputs.size() && inputs[i] != kCorrect) {
        out[o] = kErroneous;
      }
    }
  }
  return out;
}

Judgments test_port_absolute_round1(std::size_t self, Value own,
                                    std::span<const std::optional<Value>> received) {
  Judgments out(received.size(), false);
  for (std::size_t m = 0; m < received.size(); ++m) {
    if (m == self) continue;
    out[m] = !received[m] || *received[m] != own;
  }
  return out;
}

FaultStatusVector test_port_absolute_round2(std::span<const std::optional<Judgments>> opinions,
                                            std::size_t n) {
  FaultStatusVector out(n, false);
  for (std::size_t m = 0; m < n; ++m) {
    std::size_t votes = 0;
    for (const auto& op : opinions) {
      if (!op || m >= op->size() || (*op)[m]) ++votes;
    }
    out[m] = 2 * votes > opinions.size();
  }
  return out;
}

std::optional<std::size_t> TriggerTable::match(const FaultStatusVector& statuses) const {
  for (std::size_t c = 0; c < configurations.size(); ++c) {
    FaultStatusVector expect(statuses.size(), false);
    for (int f : configurations[c].faulty) {
      if (f >= 1 && static_cast<std::size_t>(f) <= expect.size()) expect[f - 1] = true;
    }
    if (expect == statuses) return c;
  }
  return std::nullopt;
}

TriggerState redundancy_trigger(const TriggerTable& table, const TriggerState& /*state*/,
                                const FaultStatusVector& statuses) {
  auto c = table.match(statuses);
  if (!c) return TriggerState{std::nullopt, "undefined"};
  const auto& conf = table.configurations[*c];
  return TriggerState{conf.responsible, conf.name};
}

Value encode_trigger(const TriggerState& state, int n) {
  return state.responsible ? *state.responsible - 1 : n;
}

TriggerTable tmr_trigger_table() {
  TriggerTable t;
  t.name = "TMR";
  t.n = 3;
  t.configurations = {
      {"All_correct", {}, 1},
      {"1_2_correct", {3}, 1},
      {"2_3_correct", {1}, 2},
      {"1_3_correct", {2}, 1},
  };
  return t;
}

Value median_unify(Value own, std::span<const Value> received) {
  std::vector<Value> all(received.begin(), received.end());
  all.push_back(own);
  if (all.size() % 2 == 0) throw ModelError("median unification needs an odd number of values");
  std::nth_element(all.begin(), all.begin() + all.size() / 2, all.end());
  return all[all.size() / 2];
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<BuiltinInfo, 7> kBuiltins{{
    {Builtin::kEq, "eq", 2, 2},
    {Builtin::kDiffer, "differ", 2, 2},
    {Builtin::kLt, "lt", 2, 2},
    {Builtin::kLe, "le", 2, 2},
    {Builtin::kIte, "ite", 3, 3},
    {Builtin::kMajority, "majority", 1, -1},
    {Builtin::kMedian, "median", 1, -1},
}};

}  // namespace

std::optional<BuiltinInfo> find_builtin(std::string_view name) {
  for (const auto& b : kBuiltins) {
    if (b.name == name) return b;
  }
  return std::nullopt;
}

std::optional<Value> apply_builtin(Builtin id, std::span<const Value> args) {
  switch (id) {
    case Builtin::kEq: return args[0] == args[1] ? 1 : 0;
    case Builtin::kDiffer: return args[0] != args[1] ? 1 : 0;
    case Builtin::kLt: return args[0] < args[1] ? 1 : 0;
    case Builtin::kLe: return args[0] <= args[1] ? 1 : 0;
    case Builtin::kIte: return args[0] != 0 ? args[1] : args[2];
    case Builtin::kMajority: {
      const auto yes = std::count_if(args.begin(), args.end(), [](Value v) { return v != 0; });
      return 2 * static_cast<std::size_t>(yes) > args.size() ? 1 : 0;
    }
    case Builtin::kMedian: {
      if (args.size() % 2 == 0) return std::nullopt;
      std::vector<Value> v(args.begin(), args.end());
      std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
      return v[v.size() / 2];
    }
  }
  return std::nullopt;
}

std::optional<Value> eval_concrete(const Expr& expr,
                                   const std::function<Value(const Expr& leaf)>& leaf_value) {
  const ExprNode& node = expr.node();
  switch (node.kind) {
    case ExprKind::kConst:
      return node.constant;
    case ExprKind::kSlot:
    case ExprKind::kEnv:
    case ExprKind::kSelf:
    case ExprKind::kParam:
      return leaf_value(expr);
    case ExprKind::kNeg: {
      auto a = eval_concrete(node.args[0], leaf_value);
      Value out;
      if (!a || __builtin_sub_overflow(Value{0}, *a, &out)) return std::nullopt;
      return out;
    }
    case ExprKind::kAdd:
    case ExprKind::kMul:
    case ExprKind::kDiv: {
      auto a = eval_concrete(node.args[0], leaf_value);
      auto b = eval_concrete(node.args[1], leaf_value);
      if (!a || !b) return std::nullopt;
      Value out;
      if (node.kind == ExprKind::kAdd) {
        if (__builtin_add_overflow(*a, *b, &out)) return std::nullopt;
      } else if (node.kind == ExprKind::kMul) {
        if (__builtin_mul_overflow(*a, *b, &out)) return std::nullopt;
      } else {
        if (*b == 0) return std::nullopt;
        out = *a / *b;
      }
      return out;
    }
    case ExprKind::kCall: {
      auto info = find_builtin(node.name);
      if (!info) throw ModelError("'" + node.name + "' cannot be evaluated concretely");
      if (info->id == Builtin::kIte) {
        auto c = eval_concrete(node.args[0], leaf_value);
        if (!c) return std::nullopt;
        return eval_concrete(node.args[*c != 0 ? 1 : 2], leaf_value);
      }
      std::vector<Value> vals;
      for (const auto& a : node.args) {
        auto v = eval_concrete(a, leaf_value);
        if (!v) return std::nullopt;
        vals.push_back(*v);
      }
      return apply_builtin(info->id, vals);
    }
  }
  return std::nullopt;
}

namespace {

void collect_leaves(const Expr& e, std::vector<std::string>& out) {
  const ExprNode& node = e.node();
  switch (node.kind) {
    case ExprKind::kSlot:
    case ExprKind::kEnv:
    case ExprKind::kSelf:
    case ExprKind::kParam: {
      std::string key = to_string(e);
      if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(std::move(key));
      return;
    }
    default:
      for (const auto& a : node.args) collect_leaves(a, out);
  }
}

}  // namespace

IntervalResult eval_interval(const Expr& expr, const IntervalValuation& valuation, std::uint64_t cap) {
  std::vector<std::string> leaves;
  collect_leaves(expr, leaves);
  std::vector<Domain> domains;
  std::uint64_t space = 1;
  bool overflow = false;
  for (const auto& leaf : leaves) {
    auto it = std::find_if(valuation.begin(), valuation.end(),
                           [&](const auto& p) { return p.first == leaf; });
    if (it == valuation.end()) throw ModelError("no domain given for '" + leaf + "'");
    domains.push_back(it->second);
    const std::uint64_t size = it->second.size();
    if (size != 0 && space > cap / size) overflow = true;
    space = overflow ? cap + 1 : space * size;
  }
  IntervalResult result;
  result.bounded = space > cap;
  std::vector<Value> point(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) point[i] = domains[i].lo();
  auto lookup = [&](const Expr& leaf) {
    const std::string key = to_string(leaf);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (leaves[i] == key) return point[i];
    }
    return Value{0};
  };
  std::uint64_t visited = 0;
  while (true) {
    if (visited++ >= cap) break;
    auto v = eval_concrete(expr, lookup);
    if (v) result.values.insert(*v); else result.undefined = true;
    // Odometer step, last leaf fastest.
    std::size_t i = leaves.size();
    while (i > 0) {
      --i;
      if (point[i] < domains[i].hi()) {
        ++point[i];
        break;
      }
      point[i] = domains[i].lo();
      if (i == 0) return result;
    }
    if (leaves.empty()) return result;
  }
  return result;
}

// ---------------------------------------------------------------------------

std::string tpa_status_array(const std::string& port, int m) {
  return "TPA_" + port + "_S" + std::to_string(m);
}

std::string tpa_judgment_array(const std::string& port, int m) {
  return "TPA_" + port + "_J" + std::to_string(m);
}

std::string liveness_status_array(const std::string& name, int m) {
  return "LV_" + name + "_S" + std::to_string(m);
}

namespace {

Expr abs_slot(const std::string& array, int m) { return Expr::slot(array, IndexSpec{false, m}); }
Expr own_slot(const std::string& array) { return Expr::slot(array, IndexSpec{true, 0}); }

}  // namespace

MacroExpansion expand_test_port_absolute(const std::string& port, int n) {
  MacroExpansion out;
  const std::string label = "TestPortAbsolute(" + port + ")";
  for (int m = 1; m <= n; ++m) {
    out.arrays.push_back(ArrayDecl{tpa_judgment_array(port, m), Domain::fault_abstraction(), kCorrect});
  }
  for (int m = 1; m <= n; ++m) {
    out.arrays.push_back(ArrayDecl{tpa_status_array(port, m), Domain::fault_abstraction(), kCorrect});
  }
  out.actions.push_back(ActionTemplate::send(port, label));
  out.actions.push_back(ActionTemplate::receive(port, label));
  for (int m = 1; m <= n; ++m) {
    out.actions.push_back(ActionTemplate::assign(
        tpa_judgment_array(port, m),
        Expr::call("differ", {abs_slot(port, m), own_slot(port)}), label));
  }
  for (int m = 1; m <= n; ++m) {
    out.actions.push_back(ActionTemplate::send(tpa_judgment_array(port, m), label));
    out.actions.push_back(ActionTemplate::receive(tpa_judgment_array(port, m), label));
  }
  for (int m = 1; m <= n; ++m) {
    std::vector<Expr> opinions;
    for (int s = 1; s <= n; ++s) opinions.push_back(abs_slot(tpa_judgment_array(port, m), s));
    out.actions.push_back(ActionTemplate::assign(tpa_status_array(port, m),
                                                 Expr::call("majority", std::move(opinions)), label));
  }
  return out;
}

MacroExpansion expand_test_liveness(const std::string& name, int n) {
  MacroExpansion out;
  const std::string label = "TestLiveness(" + name + ")";
  const std::string hb = "LV_" + name + "_hb";
  out.arrays.push_back(ArrayDecl{hb, Domain::bounded(0, 1), 0});
  for (int m = 1; m <= n; ++m) {
    out.arrays.push_back(
        ArrayDecl{liveness_status_array(name, m), Domain::fault_abstraction(), kCorrect});
  }
  out.actions.push_back(ActionTemplate::assign(
      hb, Expr::add(Expr::constant(1), Expr::neg(own_slot(hb))), label));
  out.actions.push_back(ActionTemplate::send(hb, label));
  out.actions.push_back(ActionTemplate::receive(hb, label));
  for (int m = 1; m <= n; ++m) {
    out.actions.push_back(ActionTemplate::assign(
        liveness_status_array(name, m), Expr::call("differ", {abs_slot(hb, m), own_slot(hb)}), label));
  }
  return out;
}

MacroExpansion expand_median_unify(const std::string& port, int n) {
  if (n % 2 == 0) throw ModelError("MedianUnify needs an odd redundancy, got n = " + std::to_string(n));
  MacroExpansion out;
  const std::string label = "MedianUnify(" + port + ")";
  out.actions.push_back(ActionTemplate::send(port, label));
  out.actions.push_back(ActionTemplate::receive(port, label));
  std::vector<Expr> all;
  for (int s = 1; s <= n; ++s) all.push_back(abs_slot(port, s));
  out.actions.push_back(ActionTemplate::assign(port, Expr::call("median", std::move(all)), label));
  return out;
}

MacroExpansion expand_redundancy_trigger(const std::string& table, const std::string& target,
                                         const std::vector<std::string>& status_arrays, int n) {
  if (static_cast<int>(status_arrays.size()) != n) {
    throw ModelError("RedundancyTrigger needs " + std::to_string(n) + " status arrays");
  }
  MacroExpansion out;
  out.arrays.push_back(ArrayDecl{target, Domain::bounded(0, n), 0});
  std::vector<Expr> args;
  for (const auto& s : status_arrays) args.push_back(own_slot(s));
  args.push_back(own_slot(target));
  out.actions.push_back(ActionTemplate::assign(
      target, Expr::call("RedundancyTrigger." + table, std::move(args)), "RedundancyTrigger(" + table + ")"));
  return out;
}

}  // namespace gcaverify
