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

#include "gcaverify/semantics.hpp"

#include <algorithm>
#include <map>

#include "gcaverify/errors.hpp"
#include "gcaverify/mechanisms.hpp"

namespace gcaverify {

namespace {

EvalResult undefined_result(bool fa) { return EvalResult{0, fa, true}; }

EvalResult arithmetic(const ExprNode& node, const EvalContext& ctx) {
  std::vector<EvalResult> args;
  args.reserve(node.args.size());
  bool any_fa = false;
  bool any_undef = false;
  for (const auto& a : node.args) {
    args.push_back(evaluate(a, ctx));
    any_fa |= args.back().fault_abstract;
    any_undef |= args.back().undefined;
  }
  if (any_fa) {
    // Fault propagation: the result is Erroneous iff some data operand is.
    bool erroneous = any_undef;
    for (const auto& r : args) {
      if (r.fault_abstract && r.value != kCorrect) erroneous = true;
    }
    return EvalResult{erroneous ? kErroneous : kCorrect, true, false};
  }
  if (any_undef) return undefined_result(false);
  Value out = 0;
  switch (node.kind) {
    case ExprKind::kNeg:
      if (__builtin_sub_overflow(Value{0}, args[0].value, &out)) return undefined_result(false);
      break;
    case ExprKind::kAdd:
      if (__builtin_add_overflow(args[0].value, args[1].value, &out)) return undefined_result(false);
      break;
    case ExprKind::kMul:
      if (__builtin_mul_overflow(args[0].value, args[1].value, &out)) return undefined_result(false);
      break;
    case ExprKind::kDiv:
      if (args[1].value == 0) return undefined_result(false);
      out = args[0].value / args[1].value;
      break;
    default:
      break;
  }
  return EvalResult{out, false, false};
}

EvalResult call(const ExprNode& node, const EvalContext& ctx) {
  switch (node.call) {
    case CallKind::kBuiltin: {
      const auto id = static_cast<Builtin>(node.id);
      if (id == Builtin::kIte) {
        EvalResult c = evaluate(node.args[0], ctx);
        if (c.undefined) return undefined_result(false);
        return evaluate(node.args[c.value != 0 ? 1 : 2], ctx);
      }
      std::vector<Value> values;
      bool any_fa = false;
      for (const auto& a : node.args) {
        EvalResult r = evaluate(a, ctx);
        if (r.undefined) return undefined_result(r.fault_abstract);
        any_fa |= r.fault_abstract;
        values.push_back(r.value);
      }
      auto v = apply_builtin(id, values);
      const bool fa = id == Builtin::kMedian && any_fa;
      if (!v) return undefined_result(fa);
      return EvalResult{*v, fa, false};
    }
    case CallKind::kTask: {
      const TaskDecl& task = ctx.system.tasks[node.id];
      std::vector<EvalResult> args;
      for (const auto& a : node.args) args.push_back(evaluate(a, ctx));
      if (ctx.system.mode == AnalysisMode::kFaultAbstraction) {
        std::vector<Value> statuses;
        for (const auto& r : args) {
          const bool bad = r.undefined || (r.fault_abstract && r.value != kCorrect);
          statuses.push_back(bad ? kErroneous : kCorrect);
        }
        auto outs = propagate_fault_abstraction(task.outputs.size(), statuses, task.implication);
        return EvalResult{outs[node.sub], true, false};
      }
      std::vector<Value> params;
      for (const auto& r : args) {
        if (r.undefined) return undefined_result(false);
        params.push_back(r.value);
      }
      EvalContext inner{ctx.system, ctx.machine, ctx.x, params, false};
      return evaluate(task.outputs[node.sub].expr, inner);
    }
    case CallKind::kTrigger: {
      const TriggerTable& table = ctx.system.triggers[node.id];
      const int n = ctx.system.n();
      FaultStatusVector statuses;
      for (int m = 0; m < n; ++m) {
        EvalResult r = evaluate(node.args[m], ctx);
        statuses.push_back(r.undefined || r.value != 0);
      }
      EvalResult cur = evaluate(node.args[n], ctx);
      TriggerState state;
      if (cur.undefined || cur.value < 0 || cur.value >= n) {
        state.responsible.reset();
      } else {
        state.responsible = static_cast<int>(cur.value) + 1;
      }
      return EvalResult{encode_trigger(redundancy_trigger(table, state, statuses), n), false, false};
    }
    case CallKind::kUnbound:
      break;
  }
  throw ModelError("unbound function call '" + node.name + "'");
}

}  // namespace

EvalResult evaluate(const Expr& expr, const EvalContext& ctx) {
  const ExprNode& node = expr.node();
  const int n = ctx.system.n();
  switch (node.kind) {
    case ExprKind::kConst:
      return EvalResult{node.constant, false, false};
    case ExprKind::kSlot: {
      if (node.id < 0) throw ModelError("unbound array '" + node.name + "'");
      const int slot = resolve_index(node.index, ctx.x + 1, n) - 1;
      return EvalResult{ctx.machine.value(node.id, slot, n),
                        ctx.system.array_domain(node.id).is_fault_abstraction(), false};
    }
    case ExprKind::kEnv:
      if (node.id < 0) throw ModelError("unbound identifier '" + node.name + "'");
      return EvalResult{ctx.machine.env[node.id],
                        ctx.system.pattern.envs[node.id].domain.is_fault_abstraction(), false};
    case ExprKind::kSelf:
      return EvalResult{ctx.x + 1, false, false};
    case ExprKind::kParam:
      if (node.id < 0 || node.id >= static_cast<int>(ctx.params.size())) {
        throw ModelError("unbound parameter '" + node.name + "'");
      }
      return EvalResult{ctx.params[node.id], ctx.params_fault_abstract, false};
    case ExprKind::kNeg:
    case ExprKind::kAdd:
    case ExprKind::kMul:
    case ExprKind::kDiv:
      return arithmetic(node, ctx);
    case ExprKind::kCall:
      return call(node, ctx);
  }
  return EvalResult{};
}

Value store_value(const Domain& target, const EvalResult& result) {
  if (result.undefined) return target.is_fault_abstraction() ? kErroneous : target.top();
  return target.clamp(result.value);
}

void advance_cursor(MachineState& machine, std::size_t k) {
  machine.next = static_cast<std::size_t>(machine.next) >= k ? 0 : machine.next + 1;
}

void receive_into(MachineState& machine, int array, int self, int n) {
  for (int other = 0; other < n; ++other) {
    if (other == self) continue;
    bool found = false;
    Value last = 0;
    std::erase_if(machine.queue, [&](const Message& m) {
      if (m.array != array || m.slot != other) return false;
      found = true;
      last = m.payload;
      return true;
    });
    if (found) machine.value(array, other, n) = last;
  }
}

Value assigned_value(const GCASystem& system, const MachineState& machine, std::size_t x,
                     const ConcreteAction& action) {
  EvalContext ctx{system, machine, static_cast<int>(x)};
  return store_value(system.array_domain(action.array), evaluate(action.expr, ctx));
}

SystemConfig exec_action(const GCASystem& system, const SystemConfig& config, std::size_t machine) {
  const MachineState& cur = config.machines.at(machine);
  if (cur.done()) {
    throw PeriodViolation("machine " + std::to_string(machine + 1) +
                          " has no pending action in this period");
  }
  const int n = system.n();
  const int self = static_cast<int>(machine);
  const ConcreteAction& action = system.instances[machine][cur.next - 1];
  SystemConfig next = config;
  MachineState& m = next.machines[machine];
  switch (action.kind) {
    case ActionKind::kAssign:
      m.value(action.array, self, n) = assigned_value(system, cur, machine, action);
      break;
    case ActionKind::kSend: {
      const Value payload = cur.value(action.array, self, n);
      for (int k = 0; k < n; ++k) {
        if (k == self) continue;
        next.machines[k].queue.push_back(Message{action.array, self, payload, self});
      }
      break;
    }
    case ActionKind::kReceive:
      receive_into(m, action.array, self, n);
      break;
  }
  advance_cursor(m, system.k());
  ++next.micro;
  return next;
}

std::size_t env_choices_per_machine(const GCASystem& system) {
  std::size_t count = 1;
  for (const auto& u : system.env_updates) count *= std::max<std::size_t>(1, u.size());
  return count;
}

std::size_t env_choice_count(const GCASystem& system) {
  std::size_t per = env_choices_per_machine(system);
  std::size_t total = 1;
  for (int m = 0; m < system.n(); ++m) total *= per;
  return total;
}

SystemConfig global_jump_with(const GCASystem& system, const SystemConfig& config, std::size_t choice) {
  if (!config.all_done()) {
    throw PeriodViolation("global jump while some machine has not finished its period");
  }
  const int n = system.n();
  const std::size_t per = env_choices_per_machine(system);
  SystemConfig next = config;
  // Machine 0 is the most significant digit of the joint choice.
  std::vector<std::size_t> digits(n);
  for (int m = n - 1; m >= 0; --m) {
    digits[m] = choice % per;
    choice /= per;
  }
  for (int m = 0; m < n; ++m) {
    const MachineState& before = config.machines[m];
    MachineState& after = next.machines[m];
    std::size_t digit = digits[m];
    // Env variable 0 is the most significant digit within a machine.
    std::vector<std::size_t> picks(system.env_updates.size(), 0);
    for (std::size_t e = system.env_updates.size(); e-- > 0;) {
      const std::size_t c = std::max<std::size_t>(1, system.env_updates[e].size());
      picks[e] = digit % c;
      digit /= c;
    }
    EvalContext ctx{system, before, m};
    for (std::size_t e = 0; e < system.env_updates.size(); ++e) {
      if (system.env_updates[e].empty()) continue;
      after.env[e] = store_value(system.pattern.envs[e].domain,
                                 evaluate(system.env_updates[e][picks[e]], ctx));
    }
    after.next = system.k() > 0 ? 1 : 0;
    if (system.flush_queues_at_jump) after.queue.clear();
  }
  ++next.tick;
  next.micro = 0;
  return next;
}

std::vector<JumpSuccessor> global_jump(const GCASystem& system, const SystemConfig& config) {
  if (!config.all_done()) {
    throw PeriodViolation("global jump while some machine has not finished its period");
  }
  std::vector<JumpSuccessor> out;
  std::map<std::string, bool> seen;
  const std::size_t total = env_choice_count(system);
  for (std::size_t c = 0; c < total; ++c) {
    SystemConfig next = global_jump_with(system, config, c);
    if (!seen.emplace(canonical_key(next), true).second) continue;
    out.push_back(JumpSuccessor{c, std::move(next)});
  }
  return out;
}

}  // namespace gcaverify
