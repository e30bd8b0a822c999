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

#include "gcaverify/faults.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gcaverify/errors.hpp"
#include "gcaverify/semantics.hpp"

namespace gcaverify {

std::string to_string(FaultType type) {
  switch (type) {
    case FaultType::kWrongResult: return "WrongResult";
    case FaultType::kFailSilent: return "FailSilent";
    case FaultType::kMessageLoss: return "MessageLoss";
    case FaultType::kCorruption: return "Corruption";
    case FaultType::kMasquerade: return "Masquerade";
  }
  return "?";
}

std::optional<FaultType> parse_fault_type(const std::string& text) {
  for (auto t : {FaultType::kWrongResult, FaultType::kFailSilent, FaultType::kMessageLoss,
                 FaultType::kCorruption, FaultType::kMasquerade}) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

FaultAutomaton FaultAutomaton::fault_free() {
  FaultAutomaton a;
  a.locations.push_back(FaultLocation{"fault_free", {}});
  a.edges.push_back({0});
  a.initial.push_back(0);
  return a;
}

int FaultAutomaton::location_index(const std::string& name) const {
  for (std::size_t i = 0; i < locations.size(); ++i) {
    if (locations[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

bool FaultAutomaton::is_active(int location, const std::string& act) const {
  const auto& flags = locations[location].active;
  return std::find(flags.begin(), flags.end(), act) != flags.end();
}

bool FaultAutomaton::is_fault_free(int location) const { return locations[location].active.empty(); }

void validate_faults(FaultAutomaton& automaton, const GCASystem& system) {
  const int n = system.n();
  const int k = static_cast<int>(system.k());
  if (automaton.locations.empty()) throw ModelError("fault automaton has no locations");
  if (automaton.edges.size() != automaton.locations.size()) {
    throw ModelError("fault automaton: edge list does not match the locations");
  }
  if (automaton.initial.empty()) throw ModelError("fault automaton has no initial location");
  const int locs = static_cast<int>(automaton.locations.size());
  for (int l : automaton.initial) {
    if (l < 0 || l >= locs) throw ModelError("fault automaton: bad initial location");
  }
  for (int l = 0; l < locs; ++l) {
    if (automaton.edges[l].empty()) {
      throw ModelError("fault location '" + automaton.locations[l].name + "' has no successor");
    }
    for (int s : automaton.edges[l]) {
      if (s < 0 || s >= locs) throw ModelError("fault automaton: bad edge target");
    }
  }
  std::set<std::string> acts;
  std::set<std::string> names;
  for (auto& f : automaton.faults) {
    if (!names.insert(f.name).second) throw ModelError("duplicate fault '" + f.name + "'");
    acts.insert(f.act);
    const std::string where = "fault '" + f.name + "': ";
    if (f.machine < 1 || f.machine > n) throw ModelError(where + "machine outside 1..n");
    if (f.position < 1 || f.position > k) throw ModelError(where + "position outside 1..k");
    const ActionKind kind = system.pattern.actions[f.position - 1].kind;
    switch (f.type) {
      case FaultType::kWrongResult:
        if (kind != ActionKind::kAssign) throw ModelError(where + "WrongResult attaches to an assignment");
        break;
      case FaultType::kFailSilent:
        break;
      case FaultType::kMessageLoss:
      case FaultType::kCorruption:
        if (kind != ActionKind::kSend) throw ModelError(where + to_string(f.type) + " attaches to a send");
        if (f.k < 1 || f.k > n || f.k == f.machine) throw ModelError(where + "k must name another machine");
        break;
      case FaultType::kMasquerade:
        if (kind != ActionKind::kSend) throw ModelError(where + "Masquerade attaches to a send");
        if (f.k < 1 || f.k > n) throw ModelError(where + "k outside 1..n");
        if (f.k_prime < 1 || f.k_prime > n || f.k_prime == f.machine) {
          throw ModelError(where + "k' must name another machine");
        }
        if (f.k == f.k_prime) throw ModelError(where + "a message cannot claim to come from its receiver");
        break;
    }
    const bool needs_psi = f.type == FaultType::kWrongResult || f.type == FaultType::kCorruption;
    if (needs_psi && system.mode == AnalysisMode::kIntervals) {
      if (f.psi.empty()) throw ModelError(where + "interval analysis needs an error function psi");
      f.bound_psi = bind_expr(f.psi, system, {"value"});
    }
  }
  for (const auto& loc : automaton.locations) {
    for (const auto& a : loc.active) {
      if (!acts.count(a)) {
        throw ModelError("fault location '" + loc.name + "' activates unknown flag '" + a + "'");
      }
    }
  }
  if (automaton.ltbf && !(*automaton.ltbf > 0)) throw ModelError("ltbf must be positive");
}

std::vector<int> step_fault_automaton(const FaultAutomaton& automaton, int location) {
  return automaton.edges.at(location);
}

const FaultSpec* firing_fault(const FaultAutomaton& automaton, int location, std::size_t machine,
                              int position) {
  if (automaton.is_fault_free(location)) return nullptr;
  for (const auto& f : automaton.faults) {
    if (f.machine - 1 == static_cast<int>(machine) && f.position == position &&
        automaton.is_active(location, f.act)) {
      return &f;
    }
  }
  return nullptr;
}

namespace {

Value psi_value(const GCASystem& system, const MachineState& machine, std::size_t x, const FaultSpec& f,
                const Domain& domain, const EvalResult& input) {
  if (system.mode == AnalysisMode::kFaultAbstraction || domain.is_fault_abstraction()) {
    return domain.is_fault_abstraction() ? kErroneous : domain.top();
  }
  if (input.undefined) return domain.top();
  const Value params[1] = {input.value};
  EvalContext ctx{system, machine, static_cast<int>(x), params, false};
  return store_value(domain, evaluate(f.bound_psi, ctx));
}

}  // namespace

ActionOutcome action_outcome(const GCASystem& system, const SystemConfig& config, std::size_t machine,
                             const FaultSpec* fault) {
  const MachineState& cur = config.machines.at(machine);
  if (cur.done()) {
    throw PeriodViolation("machine " + std::to_string(machine + 1) +
                          " has no pending action in this period");
  }
  const int n = system.n();
  const int self = static_cast<int>(machine);
  const ConcreteAction& action = system.instances[machine][cur.next - 1];
  ActionOutcome out{config, {}};
  MachineState& m = out.config.machines[machine];
  const bool silent = fault && fault->type == FaultType::kFailSilent;
  if (!silent) {
    switch (action.kind) {
      case ActionKind::kAssign: {
        const Domain& domain = system.array_domain(action.array);
        EvalContext ctx{system, cur, self};
        const EvalResult r = evaluate(action.expr, ctx);
        m.value(action.array, self, n) = fault && fault->type == FaultType::kWrongResult
                                             ? psi_value(system, cur, machine, *fault, domain, r)
                                             : store_value(domain, r);
        break;
      }
      case ActionKind::kSend: {
        const Value payload = cur.value(action.array, self, n);
        const Domain& domain = system.array_domain(action.array);
        for (int t = 0; t < n; ++t) {
          if (t == self) continue;
          Message msg{action.array, self, payload, self};
          if (fault) {
            switch (fault->type) {
              case FaultType::kMessageLoss:
                if (t == fault->k - 1) continue;
                break;
              case FaultType::kCorruption:
                if (t == fault->k - 1) {
                  msg.payload = psi_value(system, cur, machine, *fault, domain, EvalResult{payload});
                }
                break;
              case FaultType::kMasquerade:
                if (t == fault->k_prime - 1) msg.slot = fault->k - 1;
                break;
              default:
                break;
            }
          }
          out.deliveries.push_back(Delivery{t, msg});
        }
        break;
      }
      case ActionKind::kReceive:
        receive_into(m, action.array, self, n);
        break;
    }
  }
  advance_cursor(m, system.k());
  ++out.config.micro;
  return out;
}

SystemConfig apply_fault(const GCASystem& system, const SystemConfig& config, const FaultSpec* fault,
                         std::size_t machine) {
  ActionOutcome out = action_outcome(system, config, machine, fault);
  for (const auto& d : out.deliveries) out.config.machines[d.target].queue.push_back(d.message);
  return std::move(out.config);
}

LtbfBudget ltbf_budget(double eta, double period) {
  if (!(eta > 0) || !(period > 0)) throw ModelError("ltbf and period must be positive");
  LtbfBudget b;
  b.cap = static_cast<int>(std::ceil(period / eta));
  if (eta > 3 * period) b.spacing = static_cast<int>(std::floor(eta / period)) - 1;
  return b;
}

FaultAutomaton gate_automaton(const FaultAutomaton& automaton, double period) {
  if (!automaton.ltbf) return automaton;
  const LtbfBudget budget = ltbf_budget(*automaton.ltbf, period);
  const int spacing = budget.spacing.value_or(0);
  const int locs = static_cast<int>(automaton.locations.size());
  auto allowed = [&](int l) {
    return static_cast<int>(automaton.locations[l].active.size()) <= budget.cap;
  };
  // Product states (location, cooldown) explored from the initial ones.
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> order;
  auto intern = [&](std::pair<int, int> s) {
    auto [it, fresh] = index.emplace(s, static_cast<int>(order.size()));
    if (fresh) order.push_back(s);
    return it->second;
  };
  FaultAutomaton out;
  out.faults = automaton.faults;
  for (int l : automaton.initial) {
    if (allowed(l)) out.initial.push_back(intern({l, automaton.is_fault_free(l) ? 0 : spacing}));
  }
  if (out.initial.empty()) throw ModelError("LTBF gate removes every initial fault location");
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [l, cooldown] = order[i];
    std::vector<int> succ;
    for (int s : automaton.edges[l]) {
      if (s < 0 || s >= locs || !allowed(s)) continue;
      const bool faulty = !automaton.is_fault_free(s);
      if (cooldown > 0 && faulty) continue;
      const int next = cooldown > 0 ? cooldown - 1 : (faulty ? spacing : 0);
      succ.push_back(intern({s, next}));
    }
    out.edges.resize(order.size());
    out.edges[i] = std::move(succ);
  }
  out.edges.resize(order.size());
  for (const auto& [l, cooldown] : order) {
    FaultLocation loc = automaton.locations[l];
    if (cooldown > 0) loc.name += "/cooldown" + std::to_string(cooldown);
    out.locations.push_back(std::move(loc));
  }
  for (std::size_t i = 0; i < out.edges.size(); ++i) {
    if (out.edges[i].empty()) {
      throw ModelError("LTBF gate leaves fault location '" + out.locations[i].name +
                       "' without a successor");
    }
  }
  return out;
}

bool effect_indistinguishable(const FaultRun& a, const FaultRun& b) {
  return a.actuating == b.actuating;
}

}  // namespace gcaverify
