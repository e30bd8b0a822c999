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

#include "gcaverify/pattern.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "gcaverify/errors.hpp"

namespace gcaverify {

std::string to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::kAssign: return "assign";
    case ActionKind::kSend: return "send";
    case ActionKind::kReceive: return "receive";
  }
  return "?";
}

ActionTemplate ActionTemplate::assign(std::string array, Expr expr, std::string label) {
  return ActionTemplate{ActionKind::kAssign, std::move(array), std::move(expr), std::move(label)};
}

ActionTemplate ActionTemplate::send(std::string array, std::string label) {
  return ActionTemplate{ActionKind::kSend, std::move(array), Expr(), std::move(label)};
}

ActionTemplate ActionTemplate::receive(std::string array, std::string label) {
  return ActionTemplate{ActionKind::kReceive, std::move(array), Expr(), std::move(label)};
}

std::string to_string(const ActionTemplate& action) {
  switch (action.kind) {
    case ActionKind::kAssign:
      return action.array + "[x] <- " + to_string(action.expr);
    case ActionKind::kSend:
      return "send(" + action.array + "[x])";
    case ActionKind::kReceive:
      return "receive(" + action.array + ")";
  }
  return "?";
}

int Pattern::array_index(const std::string& name) const {
  for (std::size_t i = 0; i < arrays.size(); ++i) {
    if (arrays[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int Pattern::env_index(const std::string& name) const {
  for (std::size_t i = 0; i < envs.size(); ++i) {
    if (envs[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int resolve_index(const IndexSpec& index, int x, int n) {
  if (!index.relative) {
    if (index.offset < 1 || index.offset > n) {
      throw ModelError("malformed pattern: slot " + std::to_string(index.offset) +
                       " outside 1.." + std::to_string(n));
    }
    return index.offset;
  }
  if (index.offset < -n || index.offset > n) {
    throw ModelError("malformed pattern: index " + to_string(index) + " outside x⊕1..x⊕" +
                     std::to_string(n));
  }
  return (((x - 1 + index.offset) % n) + n) % n + 1;
}

namespace {

void check_indices(const Expr& e, int n) {
  if (e.empty()) return;
  const ExprNode& node = e.node();
  if (node.kind == ExprKind::kSlot) resolve_index(node.index, 1, n);
  for (const auto& a : node.args) check_indices(a, n);
}

Expr resolve_unbound(const Expr& e, int x, int n) {
  const ExprNode& node = e.node();
  if (node.kind == ExprKind::kSlot) {
    ExprNode copy = node;
    copy.index = IndexSpec{false, resolve_index(node.index, x, n)};
    return Expr::from_node(std::move(copy));
  }
  if (node.kind == ExprKind::kSelf) return Expr::constant(x);
  if (node.args.empty()) return e;
  ExprNode copy = node;
  for (auto& a : copy.args) a = resolve_unbound(a, x, n);
  return Expr::from_node(std::move(copy));
}

}  // namespace

std::vector<std::vector<ActionTemplate>> instantiate(const Pattern& pattern, int n) {
  if (n < 1) throw ModelError("redundancy n must be at least 1");
  for (const auto& a : pattern.actions) {
    if (a.kind == ActionKind::kAssign) check_indices(a.expr, n);
  }
  std::vector<std::vector<ActionTemplate>> out(n);
  for (int x = 1; x <= n; ++x) {
    for (const auto& a : pattern.actions) {
      ActionTemplate c = a;
      if (c.kind == ActionKind::kAssign) c.expr = resolve_unbound(a.expr, x, n);
      out[x - 1].push_back(std::move(c));
    }
  }
  return out;
}

Expr resolve_for_machine(const Expr& expr, int x, int n) { return resolve_unbound(expr, x, n); }

Expr bind_expr(const Expr& expr, const GCASystem& system, const std::vector<std::string>& params) {
  const ExprNode& node = expr.node();
  const int n = system.n();
  ExprNode b = node;
  for (auto& a : b.args) a = bind_expr(a, system, params);
  switch (node.kind) {
    case ExprKind::kSlot: {
      b.id = system.pattern.array_index(node.name);
      if (b.id < 0) throw ModelError("unknown array '" + node.name + "'");
      resolve_index(node.index, 1, n);
      break;
    }
    case ExprKind::kEnv:
    case ExprKind::kParam: {
      auto it = std::find(params.begin(), params.end(), node.name);
      if (it != params.end()) {
        b.kind = ExprKind::kParam;
        b.id = static_cast<int>(it - params.begin());
        break;
      }
      if (node.kind == ExprKind::kParam) {
        throw ModelError("unknown parameter '" + node.name + "'");
      }
      b.id = system.pattern.env_index(node.name);
      if (b.id < 0) {
        if (system.pattern.array_index(node.name) >= 0) {
          throw ModelError("array '" + node.name + "' used without an index");
        }
        throw ModelError("unknown identifier '" + node.name + "'");
      }
      break;
    }
    case ExprKind::kCall: {
      const int argc = static_cast<int>(node.args.size());
      if (auto info = find_builtin(node.name)) {
        if (argc < info->min_args || (info->max_args >= 0 && argc > info->max_args)) {
          throw ModelError("wrong number of arguments to " + node.name);
        }
        if (info->id == Builtin::kMedian && argc % 2 == 0) {
          throw ModelError("median needs an odd number of values, got " + std::to_string(argc));
        }
        b.call = CallKind::kBuiltin;
        b.id = static_cast<int>(info->id);
        break;
      }
      const auto dot = node.name.find('.');
      if (dot == std::string::npos) throw ModelError("unknown function '" + node.name + "'");
      const std::string head = node.name.substr(0, dot);
      const std::string tail = node.name.substr(dot + 1);
      if (head == "RedundancyTrigger") {
        for (std::size_t t = 0; t < system.triggers.size(); ++t) {
          if (system.triggers[t].name != tail) continue;
          if (argc != n + 1) {
            throw ModelError(node.name + " expects " + std::to_string(n + 1) +
                             " arguments (n statuses and the current value)");
          }
          b.call = CallKind::kTrigger;
          b.id = static_cast<int>(t);
          break;
        }
        if (b.call != CallKind::kTrigger) throw ModelError("unknown trigger table '" + tail + "'");
        break;
      }
      for (std::size_t t = 0; t < system.tasks.size(); ++t) {
        const TaskDecl& task = system.tasks[t];
        if (task.name != head) continue;
        const int out = task.output_index(tail);
        if (out < 0) throw ModelError("task " + head + " has no output '" + tail + "'");
        if (argc != static_cast<int>(task.params.size())) {
          throw ModelError("task " + head + " expects " + std::to_string(task.params.size()) +
                           " arguments");
        }
        b.call = CallKind::kTask;
        b.id = static_cast<int>(t);
        b.sub = out;
        break;
      }
      if (b.call != CallKind::kTask) throw ModelError("unknown function '" + node.name + "'");
      break;
    }
    default:
      break;
  }
  return Expr::from_node(std::move(b));
}

void GCASystem::finalize() {
  const int n = pattern.n;
  if (n < 1) throw ModelError("redundancy n must be at least 1");
  if (!(period > 0)) throw ModelError("period must be positive");

  std::set<std::string> names;
  for (const auto& a : pattern.arrays) {
    if (!names.insert(a.name).second) throw ModelError("duplicate variable '" + a.name + "'");
    if (!a.domain.contains(a.init)) {
      throw ModelError("initial value of '" + a.name + "' outside its domain");
    }
  }
  for (const auto& e : pattern.envs) {
    if (!names.insert(e.name).second) throw ModelError("duplicate variable '" + e.name + "'");
    if (!e.domain.contains(e.init)) {
      throw ModelError("initial value of '" + e.name + "' outside its domain");
    }
  }
  for (const auto& t : triggers) {
    if (t.n != n) throw ModelError("trigger table " + t.name + " is for a different n");
  }
  for (const auto& task : tasks) {
    if (task.implication) {
      if (task.implication->depends.size() != task.outputs.size()) {
        throw ModelError("implication graph of " + task.name + " must list every output");
      }
      for (const auto& deps : task.implication->depends) {
        for (int d : deps) {
          if (d < 0 || d >= static_cast<int>(task.params.size())) {
            throw ModelError("implication graph of " + task.name + " names an unknown input");
          }
        }
      }
    }
  }
  for (auto& task : tasks) {
    for (auto& out : task.outputs) {
      if (!out.expr.empty()) {
        out.expr = bind_expr(out.expr, *this, task.params);
      } else if (mode == AnalysisMode::kIntervals) {
        throw ModelError("task output " + task.name + "." + out.name +
                         " needs an expression in interval mode");
      }
    }
  }

  std::vector<Expr> bound(pattern.actions.size());
  for (std::size_t j = 0; j < pattern.actions.size(); ++j) {
    const auto& a = pattern.actions[j];
    if (pattern.array_index(a.array) < 0) {
      throw ModelError("action " + std::to_string(j + 1) + " refers to unknown array '" +
                       a.array + "'");
    }
    if (a.kind == ActionKind::kAssign) {
      if (a.expr.empty()) throw ModelError("assignment without expression");
      bound[j] = bind_expr(a.expr, *this);
    }
  }

  instances.assign(n, {});
  for (int x = 1; x <= n; ++x) {
    for (std::size_t j = 0; j < pattern.actions.size(); ++j) {
      const auto& a = pattern.actions[j];
      ConcreteAction c;
      c.kind = a.kind;
      c.array = pattern.array_index(a.array);
      c.position = static_cast<int>(j) + 1;
      if (a.kind == ActionKind::kAssign) c.expr = resolve_for_machine(bound[j], x, n);
      instances[x - 1].push_back(std::move(c));
    }
  }

  env_updates.assign(pattern.envs.size(), {});
  for (std::size_t e = 0; e < pattern.envs.size(); ++e) {
    for (const auto& u : pattern.envs[e].update) env_updates[e].push_back(bind_expr(u, *this));
  }
}

}  // namespace gcaverify
