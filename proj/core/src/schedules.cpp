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

#include "gcaverify/schedules.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <unordered_map>

#include "gcaverify/errors.hpp"
#include "gcaverify/semantics.hpp"

namespace gcaverify {

// ---------------------------------------------------------------------------
// Interleavings

namespace {

// Nearest send of `array` strictly before / after position p (1-based); 0 if none.
int pred_send(const Pattern& pattern, const std::string& array, int p) {
  for (int q = p - 1; q >= 1; --q) {
    const auto& a = pattern.actions[q - 1];
    if (a.kind == ActionKind::kSend && a.array == array) return q;
  }
  return 0;
}

int succ_send(const Pattern& pattern, const std::string& array, int p) {
  const int k = static_cast<int>(pattern.k());
  for (int q = p + 1; q <= k; ++q) {
    const auto& a = pattern.actions[q - 1];
    if (a.kind == ActionKind::kSend && a.array == array) return q;
  }
  return 0;
}

class DaLattice {
 public:
  DaLattice(const Pattern& pattern, int n)
      : n_(n), k_(static_cast<int>(pattern.k())), barrier_(da_barriers(pattern)) {}

  int n() const { return n_; }
  int k() const { return k_; }

  bool enabled(const std::vector<int>& done, int m) const {
    if (done[m] >= k_) return false;
    const int lowest = *std::min_element(done.begin(), done.end());
    return lowest >= barrier_[done[m] + 1];
  }

  std::uint64_t key(const std::vector<int>& done) const {
    std::uint64_t key = 0;
    for (int c : done) key = key * static_cast<std::uint64_t>(k_ + 1) + static_cast<std::uint64_t>(c);
    return key;
  }

  // Number of completions from `done`, as a double for sampling weights.
  double weight(std::vector<int>& done) {
    const auto key_v = key(done);
    if (auto it = weights_.find(key_v); it != weights_.end()) return it->second;
    double total = 0;
    bool finished = true;
    for (int m = 0; m < n_; ++m) {
      if (done[m] < k_) finished = false;
      if (!enabled(done, m)) continue;
      ++done[m];
      total += weight(done);
      --done[m];
    }
    if (finished) total = 1;
    weights_.emplace(key_v, total);
    return total;
  }

  std::uint64_t count(std::vector<int>& done, std::uint64_t cap) {
    const auto key_v = key(done);
    if (auto it = counts_.find(key_v); it != counts_.end()) return it->second;
    std::uint64_t total = 0;
    bool finished = true;
    for (int m = 0; m < n_; ++m) {
      if (done[m] < k_) finished = false;
      if (!enabled(done, m)) continue;
      ++done[m];
      const std::uint64_t sub = count(done, cap);
      --done[m];
      total = sub > cap - total ? cap : total + sub;
    }
    if (finished) total = 1;
    counts_.emplace(key_v, total);
    return total;
  }

 private:
  int n_;
  int k_;
  std::vector<int> barrier_;
  std::unordered_map<std::uint64_t, double> weights_;
  std::unordered_map<std::uint64_t, std::uint64_t> counts_;
};

}  // namespace

std::vector<int> da_barriers(const Pattern& pattern) {
  const int k = static_cast<int>(pattern.k());
  std::vector<int> barrier(k + 1, 0);
  for (int p = 1; p <= k; ++p) {
    const auto& a = pattern.actions[p - 1];
    if (a.kind != ActionKind::kReceive) continue;
    barrier[p] = std::max(barrier[p], pred_send(pattern, a.array, p));
    if (int g = succ_send(pattern, a.array, p)) barrier[g] = std::max(barrier[g], p);
  }
  return barrier;
}

bool satisfies_da(const Pattern& pattern, int n, const Interleaving& order) {
  const int k = static_cast<int>(pattern.k());
  if (static_cast<int>(order.size()) != n * k) return false;
  std::vector<std::vector<int>> when(n, std::vector<int>(k + 1, -1));
  std::vector<int> next(n, 1);
  for (std::size_t t = 0; t < order.size(); ++t) {
    const Step& s = order[t];
    if (s.machine < 0 || s.machine >= n || s.position != next[s.machine]) return false;
    when[s.machine][s.position] = static_cast<int>(t);
    ++next[s.machine];
  }
  for (int b = 1; b <= k; ++b) {
    const auto& a = pattern.actions[b - 1];
    if (a.kind != ActionKind::kReceive) continue;
    const int alpha = pred_send(pattern, a.array, b);
    const int gamma = succ_send(pattern, a.array, b);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (alpha && !(when[i][alpha] < when[j][b])) return false;
        if (gamma && !(when[j][b] < when[i][gamma])) return false;
      }
    }
  }
  return true;
}

std::uint64_t count_da_interleavings(const Pattern& pattern, int n, std::uint64_t cap) {
  DaLattice lattice(pattern, n);
  std::vector<int> done(n, 0);
  return lattice.count(done, cap);
}

std::uint64_t for_each_da_interleaving(const Pattern& pattern, int n,
                                       const std::function<bool(const Interleaving&)>& visit) {
  DaLattice lattice(pattern, n);
  std::vector<int> done(n, 0);
  Interleaving path;
  std::uint64_t visited = 0;
  bool stop = false;
  std::function<void()> dfs = [&]() {
    if (stop) return;
    if (static_cast<int>(path.size()) == n * lattice.k()) {
      ++visited;
      if (!visit(path)) stop = true;
      return;
    }
    for (int m = 0; m < n && !stop; ++m) {
      if (!lattice.enabled(done, m)) continue;
      ++done[m];
      path.push_back(Step{m, done[m]});
      dfs();
      path.pop_back();
      --done[m];
    }
  };
  dfs();
  return visited;
}

Interleaving sample_da_interleaving(const Pattern& pattern, int n, std::mt19937_64& rng) {
  DaLattice lattice(pattern, n);
  std::vector<int> done(n, 0);
  Interleaving out;
  while (static_cast<int>(out.size()) < n * lattice.k()) {
    std::vector<double> w(n, 0.0);
    for (int m = 0; m < n; ++m) {
      if (!lattice.enabled(done, m)) continue;
      ++done[m];
      w[m] = lattice.weight(done);
      --done[m];
    }
    std::discrete_distribution<int> pick(w.begin(), w.end());
    const int m = pick(rng);
    ++done[m];
    out.push_back(Step{m, done[m]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Traces

std::string describe(const StepLabel& label, const GCASystem& system, const FaultAutomaton& automaton) {
  std::string out;
  switch (label.kind) {
    case StepKind::kAction:
      out = "machine " + std::to_string(label.machine + 1) + " σ" + std::to_string(label.position) +
            " " + to_string(system.pattern.actions[label.position - 1]);
      break;
    case StepKind::kComposite:
      out = "all machines σ" + std::to_string(label.position) + " " +
            to_string(system.pattern.actions[label.position - 1]);
      if (label.variant) out += " (message order variant " + std::to_string(label.variant) + ")";
      break;
    case StepKind::kJump:
      out = "global jump, env choice " + std::to_string(label.env_choice) + ", fault location " +
            automaton.locations[label.location].name;
      break;
  }
  if (!label.faults.empty()) {
    out += " [fault:";
    for (const auto& f : label.faults) out += " " + f;
    out += "]";
  }
  return out;
}

SystemConfig step_machine(const GCASystem& system, const FaultAutomaton& automaton, int location,
                          const SystemConfig& config, std::size_t machine, StepLabel& label) {
  const int position = config.machines.at(machine).next;
  const FaultSpec* fault = firing_fault(automaton, location, machine, position);
  label = StepLabel{};
  label.kind = StepKind::kAction;
  label.machine = static_cast<int>(machine);
  label.position = position;
  label.location = location;
  if (fault) label.faults.push_back(fault->name);
  return apply_fault(system, config, fault, machine);
}

std::vector<CompositeSuccessor> composite_step(const GCASystem& system, const FaultAutomaton& automaton,
                                               int location, const SystemConfig& config) {
  const int n = system.n();
  const int position = config.machines.at(0).next;
  for (const auto& m : config.machines) {
    if (m.next != position) throw PeriodViolation("lockstep step with machines at different positions");
  }
  StepLabel label;
  label.kind = StepKind::kComposite;
  label.position = position;
  label.location = location;
  std::vector<SystemConfig> branches{config};
  for (int m = 0; m < n; ++m) {
    const FaultSpec* fault = firing_fault(automaton, location, m, position);
    if (fault) label.faults.push_back(fault->name);
    std::vector<SystemConfig> next;
    for (const auto& b : branches) {
      ActionOutcome out = action_outcome(system, b, m, fault);
      out.config.micro = b.micro;
      std::vector<SystemConfig> variants{std::move(out.config)};
      for (const auto& d : out.deliveries) {
        std::vector<SystemConfig> grown;
        for (auto& v : variants) {
          auto& q = v.machines[d.target].queue;
          auto last = std::find_if(q.rbegin(), q.rend(), [&](const Message& msg) {
            return msg.array == d.message.array && msg.slot == d.message.slot;
          });
          if (last != q.rend() && last->origin != d.message.origin) {
            SystemConfig before = v;
            auto& q2 = before.machines[d.target].queue;
            q2.insert(q2.begin() + (q.rend() - last - 1), d.message);
            q.push_back(d.message);
            grown.push_back(std::move(v));
            grown.push_back(std::move(before));
          } else {
            q.push_back(d.message);
            grown.push_back(std::move(v));
          }
        }
        variants = std::move(grown);
      }
      for (auto& v : variants) next.push_back(std::move(v));
    }
    branches = std::move(next);
  }
  std::vector<CompositeSuccessor> out;
  for (std::size_t v = 0; v < branches.size(); ++v) {
    branches[v].micro = config.micro + static_cast<std::uint32_t>(n);
    StepLabel l = label;
    l.variant = static_cast<int>(v);
    out.push_back(CompositeSuccessor{std::move(branches[v]), std::move(l)});
  }
  return out;
}

namespace {

std::vector<int> resolve_locations(const FaultAutomaton& automaton, int periods,
                                   const ChoiceSequence& choices) {
  std::vector<int> locs;
  for (int p = 0; p < periods; ++p) {
    int l;
    if (static_cast<std::size_t>(p) < choices.locations.size()) {
      l = choices.locations[p];
    } else {
      l = p == 0 ? automaton.initial.at(0) : automaton.edges.at(locs.back()).at(0);
    }
    const auto& allowed = p == 0 ? automaton.initial : automaton.edges.at(locs.back());
    if (std::find(allowed.begin(), allowed.end(), l) == allowed.end()) {
      throw ModelError("fault location sequence not admitted by the automaton");
    }
    locs.push_back(l);
  }
  return locs;
}

std::size_t env_choice_at(const ChoiceSequence& choices, int period) {
  return static_cast<std::size_t>(period) < choices.env_choices.size() ? choices.env_choices[period] : 0;
}

StepLabel jump_label(int location, std::size_t choice) {
  StepLabel l;
  l.kind = StepKind::kJump;
  l.location = location;
  l.env_choice = choice;
  return l;
}

}  // namespace

std::vector<Trace> run_sync(const GCASystem& system, const FaultAutomaton& automaton, int periods,
                            const ChoiceSequence& choices, std::size_t limit) {
  if (periods < 1) throw ModelError("at least one period is required");
  const std::vector<int> locs = resolve_locations(automaton, periods, choices);
  const int k = static_cast<int>(system.k());
  std::vector<Trace> out;
  Trace cur;
  cur.initial_location = locs[0];
  cur.states.push_back(initial_config(system));
  // Step index s runs over periods * (k + 1) operations.
  std::function<void(int)> dfs = [&](int s) {
    if (out.size() >= limit) return;
    if (s == periods * (k + 1)) {
      out.push_back(cur);
      return;
    }
    const int period = s / (k + 1);
    const int loc = locs[period];
    const SystemConfig& state = cur.states.back();
    if (s % (k + 1) == k) {
      const std::size_t choice = env_choice_at(choices, period);
      const int next_loc = period + 1 < periods ? locs[period + 1] : loc;
      cur.states.push_back(global_jump_with(system, state, choice));
      cur.labels.push_back(jump_label(next_loc, choice));
      dfs(s + 1);
      cur.states.pop_back();
      cur.labels.pop_back();
      return;
    }
    for (auto& succ : composite_step(system, automaton, loc, state)) {
      cur.states.push_back(std::move(succ.config));
      cur.labels.push_back(std::move(succ.label));
      dfs(s + 1);
      cur.states.pop_back();
      cur.labels.pop_back();
    }
  };
  dfs(0);
  return out;
}

std::vector<std::vector<int>> location_sequences(const FaultAutomaton& automaton, int periods,
                                                 std::size_t limit) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void()> dfs = [&]() {
    if (out.size() >= limit) return;
    if (static_cast<int>(cur.size()) == periods) {
      out.push_back(cur);
      return;
    }
    const auto& next = cur.empty() ? automaton.initial : automaton.edges[cur.back()];
    for (int l : next) {
      cur.push_back(l);
      dfs();
      cur.pop_back();
    }
  };
  dfs();
  return out;
}

std::vector<Trace> run_sync_all(const GCASystem& system, const FaultAutomaton& automaton, int periods,
                                std::size_t limit, bool* truncated) {
  std::vector<Trace> out;
  bool hit = false;
  const std::size_t env = env_choice_count(system);
  for (const auto& locs : location_sequences(automaton, periods, limit + 1)) {
    std::vector<std::size_t> envs(periods, 0);
    while (true) {
      if (out.size() >= limit) {
        hit = true;
        break;
      }
      for (auto& t : run_sync(system, automaton, periods, ChoiceSequence{locs, envs}, limit - out.size())) {
        out.push_back(std::move(t));
      }
      int p = periods - 1;
      while (p >= 0 && ++envs[p] == env) envs[p--] = 0;
      if (p < 0) break;
    }
    if (hit) break;
  }
  if (truncated) *truncated = hit;
  return out;
}

Trace run_async(const GCASystem& system, const FaultAutomaton& automaton,
                const std::vector<Interleaving>& periods, const ChoiceSequence& choices) {
  const int count = static_cast<int>(periods.size());
  if (count < 1) throw ModelError("at least one period is required");
  const std::vector<int> locs = resolve_locations(automaton, count, choices);
  Trace t;
  t.initial_location = locs[0];
  t.states.push_back(initial_config(system));
  for (int p = 0; p < count; ++p) {
    for (const Step& s : periods[p]) {
      if (t.states.back().machines.at(s.machine).next != s.position) {
        throw ModelError("interleaving does not follow the action order");
      }
      StepLabel label;
      t.states.push_back(step_machine(system, automaton, locs[p], t.states.back(), s.machine, label));
      t.labels.push_back(std::move(label));
    }
    const std::size_t choice = env_choice_at(choices, p);
    t.states.push_back(global_jump_with(system, t.states.back(), choice));
    t.labels.push_back(jump_label(p + 1 < count ? locs[p + 1] : locs[p], choice));
  }
  return t;
}

std::uint64_t enumerate_da_traces(const GCASystem& system, const FaultAutomaton& automaton, int periods,
                                  const ChoiceSequence& choices, std::uint64_t limit,
                                  const std::function<bool(const Trace&)>& visit, bool* truncated) {
  if (periods < 1) throw ModelError("at least one period is required");
  const std::vector<int> locs = resolve_locations(automaton, periods, choices);
  DaLattice lattice(system.pattern, system.n());
  const int n = system.n();
  const int k = static_cast<int>(system.k());
  Trace cur;
  cur.initial_location = locs[0];
  cur.states.push_back(initial_config(system));
  std::vector<int> done(n, 0);
  std::uint64_t visited = 0;
  bool stop = false;
  bool hit = false;
  std::function<void(int, int)> dfs = [&](int period, int steps) {
    if (stop) return;
    if (steps == n * k) {
      const std::size_t choice = env_choice_at(choices, period);
      cur.states.push_back(global_jump_with(system, cur.states.back(), choice));
      cur.labels.push_back(jump_label(period + 1 < periods ? locs[period + 1] : locs[period], choice));
      if (period + 1 == periods) {
        if (visited >= limit) {
          hit = stop = true;
        } else {
          ++visited;
          if (!visit(cur)) stop = true;
        }
      } else {
        std::vector<int> saved = done;
        std::fill(done.begin(), done.end(), 0);
        dfs(period + 1, 0);
        done = saved;
      }
      cur.states.pop_back();
      cur.labels.pop_back();
      return;
    }
    for (int m = 0; m < n && !stop; ++m) {
      if (!lattice.enabled(done, m)) continue;
      StepLabel label;
      SystemConfig next = step_machine(system, automaton, locs[period], cur.states.back(), m, label);
      ++done[m];
      cur.states.push_back(std::move(next));
      cur.labels.push_back(std::move(label));
      dfs(period, steps + 1);
      cur.states.pop_back();
      cur.labels.pop_back();
      --done[m];
    }
  };
  dfs(0, 0);
  if (truncated) *truncated = hit;
  return visited;
}

FaultRun fault_run_of(const Trace& trace, const GCASystem& system, const FaultAutomaton& automaton) {
  FaultRun run;
  int loc = trace.initial_location;
  run.locations.push_back(loc);
  run.actuating.emplace_back();
  for (std::size_t i = 0; i < trace.labels.size(); ++i) {
    const StepLabel& l = trace.labels[i];
    switch (l.kind) {
      case StepKind::kAction:
        if (firing_fault(automaton, loc, l.machine, l.position)) {
          run.actuating.back().emplace(l.machine, l.position);
        }
        break;
      case StepKind::kComposite:
        for (int m = 0; m < system.n(); ++m) {
          if (firing_fault(automaton, loc, m, l.position)) run.actuating.back().emplace(m, l.position);
        }
        break;
      case StepKind::kJump:
        if (i + 1 == trace.labels.size()) break;
        loc = l.location;
        run.locations.push_back(loc);
        run.actuating.emplace_back();
        break;
    }
  }
  return run;
}

// ---------------------------------------------------------------------------
// Timed schedules

void validate_schedule(const TimedSchedule& schedule, const Pattern& pattern) {
  const std::size_t k = pattern.k();
  if (!(schedule.period > 0)) throw ModelError("schedule period must be positive");
  if (schedule.tau_net < 0) throw ModelError("network latency must be non-negative");
  if (schedule.actions.size() != static_cast<std::size_t>(pattern.n)) {
    throw ModelError("schedule lists " + std::to_string(schedule.actions.size()) + " machines, expected " +
                     std::to_string(pattern.n));
  }
  for (std::size_t m = 0; m < schedule.actions.size(); ++m) {
    const auto& row = schedule.actions[m];
    if (row.size() != k) {
      throw ModelError("schedule for machine " + std::to_string(m + 1) + " lists " +
                       std::to_string(row.size()) + " actions, expected " + std::to_string(k));
    }
    for (std::size_t p = 0; p < k; ++p) {
      const auto& a = row[p];
      const std::string where = "schedule machine " + std::to_string(m + 1) + " σ" + std::to_string(p + 1);
      if (a.start > a.end) throw ModelError(where + ": start after end");
      if (a.start < 0 || a.end >= schedule.period) throw ModelError(where + ": outside [0, T)");
      if (p > 0 && a.start < row[p - 1].end) throw ModelError(where + ": overlaps the previous action");
    }
  }
}

std::string DaViolation::describe() const {
  char buf[256];
  if (kind == Kind::kPredecessor) {
    std::snprintf(buf, sizeof buf,
                  "SendEnd(σ%d, machine %d) + τ_net = %g is not < RecvStart(σ%d, machine %d) = %g "
                  "(slack %g)",
                  send_position, send_machine + 1, lhs, receive_position, receive_machine + 1, rhs, slack);
  } else {
    std::snprintf(buf, sizeof buf,
                  "RecvEnd(σ%d, machine %d) = %g is not < SendStart(σ%d, machine %d) = %g (slack %g)",
                  receive_position, receive_machine + 1, lhs, send_position, send_machine + 1, rhs, slack);
  }
  return buf;
}

std::vector<DaViolation> check_da_timed(const TimedSchedule& schedule, const Pattern& pattern) {
  validate_schedule(schedule, pattern);
  const int n = pattern.n;
  const int k = static_cast<int>(pattern.k());
  std::vector<DaViolation> out;
  for (int b = 1; b <= k; ++b) {
    const auto& a = pattern.actions[b - 1];
    if (a.kind != ActionKind::kReceive) continue;
    const int alpha = pred_send(pattern, a.array, b);
    const int gamma = succ_send(pattern, a.array, b);
    for (int j = 0; j < n; ++j) {
      const TimedAction& recv = schedule.actions[j][b - 1];
      for (int i = 0; alpha && i < n; ++i) {
        const double lhs = schedule.actions[i][alpha - 1].end + schedule.tau_net;
        if (!(lhs < recv.start)) {
          out.push_back(DaViolation{DaViolation::Kind::kPredecessor, alpha, b, i, j, lhs, recv.start,
                                    recv.start - lhs});
        }
      }
      for (int i = 0; gamma && i < n; ++i) {
        const double rhs = schedule.actions[i][gamma - 1].start;
        if (!(recv.end < rhs)) {
          out.push_back(
              DaViolation{DaViolation::Kind::kSuccessor, gamma, b, i, j, recv.end, rhs, rhs - recv.end});
        }
      }
    }
  }
  return out;
}

TimedSchedule synthesize_window_schedule(const Pattern& pattern, double tau_net, double period,
                                         double action_time, double gap) {
  std::map<std::string, int> sends;
  for (const auto& a : pattern.actions) {
    if (a.kind == ActionKind::kSend && ++sends[a.array] > 1) {
      throw ModelError("unsupported pattern: duplicate send of '" + a.array + "'");
    }
  }
  if (tau_net >= period) {
    throw InfeasibleSchedule("network latency " + std::to_string(tau_net) + " is not below the period " +
                             std::to_string(period));
  }
  const int k = static_cast<int>(pattern.k());
  std::vector<TimedAction> row(k);
  double t = 0;
  for (int p = 1; p <= k; ++p) {
    double start = p == 1 ? 0.0 : t + gap;
    const auto& a = pattern.actions[p - 1];
    if (a.kind == ActionKind::kReceive) {
      if (int alpha = pred_send(pattern, a.array, p)) {
        start = std::max(start, row[alpha - 1].end + tau_net + gap);
      }
    }
    row[p - 1] = TimedAction{start, start + action_time};
    t = start + action_time;
    if (t >= period) {
      throw InfeasibleSchedule("window schedule needs more than the period " + std::to_string(period) +
                               " (action " + std::to_string(p) + " ends at " + std::to_string(t) + ")");
    }
  }
  TimedSchedule s;
  s.period = period;
  s.tau_net = tau_net;
  s.actions.assign(pattern.n, row);
  return s;
}

}  // namespace gcaverify
