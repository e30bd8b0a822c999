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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gcaverify/checker.hpp"
#include "gcaverify/commands.hpp"
#include "gcaverify/crossvalidate.hpp"
#include "gcaverify/errors.hpp"
#include "gcaverify/faults.hpp"
#include "gcaverify/model_io.hpp"
#include "gcaverify/schedules.hpp"
#include "gcaverify/semantics.hpp"
#include "gcaverify/traces.hpp"
#include "random_models.hpp"

using namespace gcaverify;

namespace {

const std::string kModels = GCAVERIFY_MODELS_DIR;

// Collects the first few failed expectations of a criterion.
class Expect {
 public:
  void operator()(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failed_;
    if (notes_.size() < 4) notes_.push_back(what);
  }
  bool ok() const { return failed_ == 0 && checks_ > 0; }
  std::string summary() const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (failed_ > 0) {
      os << ", " << failed_ << " failed:";
      for (const auto& n : notes_) os << " [" << n << "]";
    }
    return os.str();
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> notes_;
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<void(Expect&)> body;
};

std::vector<CompiledProperty> compiled(const Model& m) {
  std::vector<CompiledProperty> out;
  for (const auto& p : m.properties) out.push_back({p.name, compile_formula(p.formula, m.system)});
  return out;
}

// ---------------------------------------------------------------------------
// 1, 2: lockstep twin agreement

void cross_validation_suite(Expect& expect, bool faults, int models, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  testing::RandomModelOptions o;
  o.faults = faults;
  int with_faults = 0;
  for (int trial = 0; trial < models; ++trial) {
    const auto gen = testing::random_model(rng, o);
    const int n = gen.system.n();
    expect(n >= 2 && n <= 3 && gen.system.k() <= 6, "shape " + gen.summary);
    if (!gen.automaton.faults.empty()) ++with_faults;
    CrossValidationOptions opts;
    opts.periods = 2;
    opts.cap = 20000;
    const auto r = cross_validate(gen.system, gen.automaton, gen.properties, opts);
    expect(r.async_traces > 0, "no traces " + gen.summary);
    expect(r.divergence_count() == 0, std::to_string(r.divergence_count()) + " divergences " + gen.summary);
    expect(r.stutter_equivalent == r.async_traces, "stutter " + gen.summary);
    expect(r.verdict_mismatches == 0, "verdicts " + gen.summary);
  }
  if (faults) expect(with_faults >= 10, std::to_string(with_faults) + " models carry faults");
}

// ---------------------------------------------------------------------------
// 3: fault effects on a three-machine fixture

// σ1 a[x] <- 4, σ2 send(a[x]), σ3 receive(a); ψ(value) = value + 1.
GCASystem fault_fixture() {
  GCASystem s;
  s.pattern.n = 3;
  s.mode = AnalysisMode::kIntervals;
  s.pattern.arrays = {{"a", Domain::bounded(0, 9), 0}};
  s.pattern.actions = {ActionTemplate::assign("a", parse_expr("4")), ActionTemplate::send("a"),
                       ActionTemplate::receive("a")};
  s.finalize();
  return s;
}

FaultSpec fault(FaultType type, int position, int k = 0, int k_prime = 0) {
  FaultSpec f;
  f.name = to_string(type);
  f.act = "on";
  f.type = type;
  f.machine = 1;
  f.position = position;
  f.k = k;
  f.k_prime = k_prime;
  f.psi = parse_expr("value + 1");
  return f;
}

void fault_effects(Expect& expect) {
  const GCASystem s = fault_fixture();
  FaultAutomaton fa;
  fa.locations = {{"on", {"on"}}};
  fa.edges = {{0}};
  fa.initial = {0};
  fa.faults = {fault(FaultType::kWrongResult, 1), fault(FaultType::kFailSilent, 2),
               fault(FaultType::kMessageLoss, 2, 2), fault(FaultType::kCorruption, 2, 3),
               fault(FaultType::kMasquerade, 2, 2, 3)};
  validate_faults(fa, s);

  const SystemConfig c0 = initial_config(s);
  const SystemConfig c1 = exec_action(s, c0, 0);
  const Message genuine{0, 0, 4, 0};

  // WrongResult: ψ(4) in the own slot, nothing else differs.
  {
    const SystemConfig bad = apply_fault(s, c0, &fa.faults[0], 0);
    SystemConfig want = c1;
    want.machines[0].value(0, 0, 3) = 5;
    expect(bad == want, "WrongResult diff");
  }
  // FailSilent: cursor moves, queues untouched.
  {
    const SystemConfig bad = apply_fault(s, c1, &fa.faults[1], 0);
    SystemConfig want = c1;
    want.machines[0].next = 3;
    ++want.micro;
    expect(bad == want, "FailSilent diff");
  }
  // A clean send reaches every other machine.
  const SystemConfig sent = exec_action(s, c1, 0);
  expect(sent.machines[0].queue.empty(), "clean send, own queue");
  for (int m = 1; m < 3; ++m) expect(sent.machines[m].queue == std::vector<Message>{genuine}, "clean send");
  // MessageLoss to machine 2.
  {
    const SystemConfig bad = apply_fault(s, c1, &fa.faults[2], 0);
    SystemConfig want = sent;
    want.machines[1].queue.clear();
    expect(bad == want, "MessageLoss diff");
  }
  // Corruption towards machine 3.
  {
    const SystemConfig bad = apply_fault(s, c1, &fa.faults[3], 0);
    SystemConfig want = sent;
    want.machines[2].queue = {{0, 0, 5, 0}};
    expect(bad == want, "Corruption diff");
  }
  // Masquerade: machine 3 receives the value under machine 2's slot.
  {
    const SystemConfig bad = apply_fault(s, c1, &fa.faults[4], 0);
    SystemConfig want = sent;
    want.machines[2].queue = {{0, 1, 4, 0}};
    expect(bad == want, "Masquerade diff");
  }
}

// ---------------------------------------------------------------------------
// 4, 5: the balanced rod controller

struct TmrRun {
  Model model;
  StateGraph graph;
  CheckResult result;
};

TmrRun check_tmr(const std::string& file) {
  TmrRun run{load_model(kModels + "/" + file), {}, {}};
  run.graph = build_product(run.model.system, run.model.gated);
  const CompiledFormula f = compile_formula(run.model.properties.at(0).formula, run.model.system);
  run.result = check_ltl(run.graph, f, run.model.system.k());
  return run;
}

Value m1(const Model& m, const SystemConfig& c, const std::string& array) {
  return c.machines[0].value(m.system.pattern.array_index(array), 0, m.system.n());
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

void tmr_faulty(Expect& expect) {
  const TmrRun run = check_tmr("balanced_rod_faulty.yaml");
  expect(run.result.verdict == Verdict::kViolated, "verdict " + to_string(run.result.verdict));
  if (!run.result.counterexample) return;
  const Model& m = run.model;
  const Trace& t = *run.result.counterexample;

  std::vector<std::string> locations{m.gated.locations[t.initial_location].name};
  std::vector<std::set<std::string>> fired(1);
  std::vector<std::size_t> jumps;
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    const auto& l = t.labels[i];
    if (l.kind == StepKind::kJump) {
      locations.push_back(m.gated.locations[l.location].name);
      fired.emplace_back();
      jumps.push_back(i);
    }
    fired.back().insert(l.faults.begin(), l.faults.end());
  }
  expect(locations.size() == 2, std::to_string(locations.size()) + " periods");
  if (locations.size() != 2) return;
  expect(starts_with(locations[0], "2_3_correct"), "period 1 in " + locations[0]);
  expect(starts_with(locations[1], "1_3_correct"), "period 2 in " + locations[1]);
  expect(fired[0] == std::set<std::string>{"ecu1_sample"}, "period 1 faults");
  expect(fired[1] == std::set<std::string>{"ecu2_sample"}, "period 2 faults");

  const SystemConfig& end1 = t.states[jumps[0]];
  const SystemConfig& start2 = t.states[jumps[0] + 1];
  const SystemConfig& last = t.states.back();
  // Period 1: machine 1 is judged faulty and machine 2 takes over.
  expect(m1(m, end1, "Result") == kErroneous, "period 1 Result");
  expect(m1(m, end1, "TPA_Result_S1") == kErroneous, "period 1 S1");
  expect(m1(m, end1, "Trigger") == 1, "period 1 Trigger");
  expect(m1(m, end1, "DigOutput") == kCorrect, "period 1 DigOutput");
  // ErrorSum carries the error across the jump.
  expect(m1(m, start2, "ErrorSum") == kErroneous, "ErrorSum at period 2");
  // Period 2: machine 3 is outvoted and machine 1 drives an Erroneous result.
  expect(m1(m, last, "TPA_Result_S1") == kCorrect, "period 2 S1");
  expect(m1(m, last, "TPA_Result_S3") == kErroneous, "period 2 S3");
  expect(m1(m, last, "Trigger") == 0, "period 2 Trigger");
  expect(m1(m, last, "Result") == kErroneous, "period 2 Result");
  expect(m1(m, last, "DigOutput") == kErroneous, "period 2 DigOutput");
}

void tmr_fixed(Expect& expect) {
  const TmrRun run = check_tmr("balanced_rod_fixed.yaml");
  expect(!run.graph.bounded, "graph bounded");
  expect(run.result.verdict == Verdict::kHolds, "verdict " + to_string(run.result.verdict));
  // Same fault hypothesis as the faulty design.
  const Model faulty = load_model(kModels + "/balanced_rod_faulty.yaml");
  expect(run.model.gated.locations.size() == faulty.gated.locations.size(), "fault locations");
  expect(run.model.automaton.faults.size() == faulty.automaton.faults.size(), "fault specs");
}

// ---------------------------------------------------------------------------
// 6: timed DA checking

// Moves every receive with a predecessor send to just before the earliest
// admissible start and checks the reported inequalities.
void perturb_receives(Expect& expect, const Pattern& p, const TimedSchedule& s, int& moved) {
  const int n = p.n;
  for (int j = 1; j <= static_cast<int>(p.k()); ++j) {
    const auto& recv = p.actions[j - 1];
    if (recv.kind != ActionKind::kReceive) continue;
    int pred = 0;
    for (int q = j - 1; q >= 1; --q) {
      const auto& a = p.actions[q - 1];
      if (a.kind == ActionKind::kSend && a.array == recv.array) {
        pred = q;
        break;
      }
    }
    if (pred == 0) continue;
    for (int r = 0; r < n; ++r) {
      double latest_end = 0;
      for (int m = 0; m < n; ++m) latest_end = std::max(latest_end, s.actions[m][pred - 1].end);
      TimedSchedule early = s;
      const double start = latest_end + s.tau_net - 0.05;
      early.actions[r][j - 1].start = start;
      try {
        validate_schedule(early, p);
      } catch (const ModelError&) {
        continue;
      }
      ++moved;
      const auto v = check_da_timed(early, p);
      std::set<int> senders;
      bool shape = true;
      for (const auto& x : v) {
        shape = shape && x.kind == DaViolation::Kind::kPredecessor && x.send_position == pred &&
                x.receive_position == j && x.receive_machine == r && x.slack <= 0;
        const double lhs = s.actions[x.send_machine][pred - 1].end + s.tau_net;
        shape = shape && std::abs(x.lhs - lhs) < 1e-9 && std::abs(x.rhs - start) < 1e-9;
        senders.insert(x.send_machine);
      }
      // Every sender ends at the same time in a window schedule.
      expect(shape && v.size() == static_cast<std::size_t>(n) && senders.size() == static_cast<std::size_t>(n),
             "receive σ" + std::to_string(j) + " of machine " + std::to_string(r + 1) + ": " +
                 std::to_string(v.size()) + " violations");
    }
  }
}

void timed_da(Expect& expect) {
  int moved = 0;
  for (const char* file : {"window_schedule.yaml", "balanced_rod_faulty.yaml", "pipeline_demo.yaml"}) {
    const Model m = load_model(kModels + "/" + file);
    const double tau = m.schedule ? m.schedule->tau_net : 0.5;
    const double period = std::max(m.system.period, 4.0 * static_cast<double>(m.system.k()) + 4 * tau);
    TimedSchedule s;
    try {
      s = synthesize_window_schedule(m.system.pattern, tau, period);
    } catch (const ModelError& e) {
      expect(false, std::string(file) + ": " + e.what());
      continue;
    }
    expect(check_da_timed(s, m.system.pattern).empty(), std::string(file) + " synthesized schedule");
    perturb_receives(expect, m.system.pattern, s, moved);
  }
  expect(moved > 0, "no receive was moved");
}

// ---------------------------------------------------------------------------
// 7: LTBF

// Ceiling and floor through integer search rather than library rounding.
std::pair<int, std::optional<int>> ltbf_oracle(double eta, double period) {
  int cap = 1;
  while (cap * eta < period) ++cap;
  std::optional<int> spacing;
  if (eta > 3 * period) {
    int whole = 0;
    while ((whole + 1) * period <= eta) ++whole;
    spacing = whole - 1;
  }
  return {cap, spacing};
}

void ltbf(Expect& expect) {
  std::mt19937_64 rng(7100);
  std::uniform_real_distribution<double> dist(0.1, 60.0);
  for (int i = 0; i < 100; ++i) {
    const double eta = dist(rng);
    const double period = dist(rng);
    const auto b = ltbf_budget(eta, period);
    const auto [cap, spacing] = ltbf_oracle(eta, period);
    expect(b.cap == cap && b.spacing == spacing,
           "eta " + std::to_string(eta) + " period " + std::to_string(period));
  }

  for (int trial = 0; trial < 40; ++trial) {
    FaultAutomaton fa;
    const int locs = 2 + static_cast<int>(rng() % 3);
    for (int l = 0; l < locs; ++l) {
      FaultLocation loc{"L" + std::to_string(l), {}};
      const int flags = l == 0 ? 0 : 1 + static_cast<int>(rng() % 2);
      for (int f = 0; f < flags; ++f) loc.active.push_back("f" + std::to_string(f));
      fa.locations.push_back(loc);
      std::vector<int> edges;
      for (int t = 0; t < locs; ++t) {
        if (t == 0 || rng() % 2) edges.push_back(t);
      }
      fa.edges.push_back(edges);
    }
    fa.initial = {0, 1};
    const double period = 1.0 + static_cast<double>(rng() % 4);
    fa.ltbf = period * (0.4 + static_cast<double>(rng() % 60) / 10.0);
    const auto [cap, spacing] = ltbf_oracle(*fa.ltbf, period);
    const FaultAutomaton gated = gate_automaton(fa, period);

    // Every run of 8 periods: at most `cap` flags per period, and two faulty
    // periods at least `spacing` clean periods apart.
    std::vector<int> run;
    bool ok = true;
    std::function<void(int)> walk = [&](int loc) {
      run.push_back(loc);
      const int flags = static_cast<int>(gated.locations[loc].active.size());
      ok = ok && flags <= cap;
      if (flags > 0 && spacing) {
        for (std::size_t back = 1; back <= static_cast<std::size_t>(*spacing) && back < run.size(); ++back) {
          ok = ok && gated.locations[run[run.size() - 1 - back]].active.empty();
        }
      }
      if (run.size() < 8) {
        for (int next : gated.edges[loc]) walk(next);
      }
      run.pop_back();
    };
    for (int i : gated.initial) walk(i);
    expect(ok, "gated run violates spacing, trial " + std::to_string(trial));
  }
}

// ---------------------------------------------------------------------------
// 8: stutter algebra and pruning

std::vector<char> word(const std::string& s) { return {s.begin(), s.end()}; }

bool equal_up_to_stutter(const Trace& pruned, const Trace& t, int machine) {
  const auto a = destutter(project(pruned, machine));
  const auto b = destutter(project(t, machine));
  if (a != b) return false;
  if (t.loop_start.has_value() != pruned.loop_start.has_value()) return false;
  if (!t.loop_start) return true;
  // The loops must also agree.
  const ProjectedTrace kept = project(pruned, machine);
  const ProjectedTrace full = project(t, machine);
  const ProjectedTrace loop_a(kept.begin() + static_cast<std::ptrdiff_t>(*pruned.loop_start), kept.end());
  const ProjectedTrace loop_b(full.begin() + static_cast<std::ptrdiff_t>(*t.loop_start), full.end());
  return destutter(loop_a) == destutter(loop_b);
}

void stutter(Expect& expect) {
  expect(destutter(word("xxxyyzzz")) == word("xyz"), "xxxyyzzz");
  std::mt19937_64 rng(808);
  auto random_word = [&]() {
    std::string s;
    const int len = static_cast<int>(rng() % 10);
    for (int j = 0; j < len; ++j) s.push_back(static_cast<char>('a' + rng() % 2));
    return word(s);
  };
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_word(), b = random_word(), c = random_word();
    expect(destutter(destutter(a)) == destutter(a), "idempotence");
    expect(stutter_equiv(a, a), "reflexivity");
    expect(stutter_equiv(a, b) == stutter_equiv(b, a), "symmetry");
    if (stutter_equiv(a, b) && stutter_equiv(b, c)) expect(stutter_equiv(a, c), "transitivity");
  }

  // Every counterexample the checker produces on the bundled and generated
  // models.
  std::vector<std::pair<Trace, int>> counterexamples;
  for (const char* file : {"balanced_rod_faulty.yaml", "heartbeat_demo.yaml", "pipeline_demo.yaml",
                           "da_violating_demo.yaml", "single_machine.yaml"}) {
    const Model m = load_model(kModels + "/" + file);
    const StateGraph g = build_product(m.system, m.gated);
    for (const auto& p : m.properties) {
      const CompiledFormula f = compile_formula(p.formula, m.system);
      const CheckResult r = check_ltl(g, f, m.system.k());
      if (r.counterexample) counterexamples.push_back({*r.counterexample, m.system.n()});
    }
  }
  testing::RandomModelOptions o;
  o.faults = true;
  for (int trial = 0; trial < 30; ++trial) {
    const auto gen = testing::random_model(rng, o);
    const StateGraph g = build_product(gen.system, gen.automaton);
    for (const auto& p : gen.properties) {
      const CheckResult r = check_ltl(g, p.formula, gen.system.k());
      if (r.counterexample) counterexamples.push_back({*r.counterexample, gen.system.n()});
    }
  }
  expect(counterexamples.size() >= 20, std::to_string(counterexamples.size()) + " counterexamples");
  for (const auto& [t, n] : counterexamples) {
    for (int m = 0; m < n; ++m) {
      const Trace pruned = prune_counterexample(t, static_cast<std::size_t>(m));
      expect(equal_up_to_stutter(pruned, t, m), "pruned projection of machine " + std::to_string(m + 1));
    }
  }
}

// ---------------------------------------------------------------------------
// 9: determinism and shortest counterexamples

// Breadth-first distance to the nearest node violating `prop`, from scratch.
std::optional<std::size_t> violation_distance(const StateGraph& g, const CompiledFormula& prop) {
  std::vector<int> dist(g.nodes.size(), -1);
  std::deque<int> queue;
  for (int i : g.initial) {
    if (dist[i] < 0) {
      dist[i] = 0;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (!eval_state(prop, project_state(g.nodes[v].config, prop.machine))) {
      return static_cast<std::size_t>(dist[v]);
    }
    for (const auto& e : g.edges[v]) {
      if (dist[e.target] < 0) {
        dist[e.target] = dist[v] + 1;
        queue.push_back(e.target);
      }
    }
  }
  return std::nullopt;
}

void determinism(Expect& expect) {
  for (const char* file : {"balanced_rod_faulty.yaml", "heartbeat_demo.yaml", "pipeline_demo.yaml"}) {
    const std::string path = kModels + "/" + file;
    for (OutputFormat format : {OutputFormat::kText, OutputFormat::kMachineReadable}) {
      CheckOptions one;
      one.format = format;
      CheckOptions four = one;
      four.threads = 4;
      const CommandResult a = cmd_check(path, one);
      expect(a.out == cmd_check(path, one).out, std::string(file) + " check repeat");
      const CommandResult b = cmd_check(path, four);
      expect(a.out == b.out && a.exit_code == b.exit_code, std::string(file) + " check threads");
      expect(b.out == cmd_check(path, four).out, std::string(file) + " check repeat, 4 threads");

      CrossValidateOptions cv;
      cv.format = format;
      cv.cap = 5000;
      expect(cmd_crossvalidate(path, cv).out == cmd_crossvalidate(path, cv).out, std::string(file) + " crossvalidate");
      for (bool async : {false, true}) {
        SimulateOptions sim;
        sim.format = format;
        sim.seed = 17;
        sim.async = async;
        expect(cmd_simulate(path, sim).out == cmd_simulate(path, sim).out, std::string(file) + " simulate");
      }
    }
  }

  // Shortest counterexamples: the bundled controller and violated invariants
  // on generated models.
  {
    const Model m = load_model(kModels + "/balanced_rod_faulty.yaml");
    const StateGraph g = build_product(m.system, m.gated);
    const CompiledFormula f = compile_formula(m.properties.at(0).formula, m.system);
    const CompiledFormula p = compile_formula(m.properties.at(0).formula.sub.at(0), m.system);
    const CheckResult r = check_ltl(g, f, m.system.k());
    const auto d = violation_distance(g, p);
    expect(r.counterexample && d && r.counterexample->labels.size() == *d, "TMR counterexample length");
  }
  std::mt19937_64 rng(9090);
  testing::RandomModelOptions o;
  o.faults = true;
  int compared = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto gen = testing::random_model(rng, o);
    const StateGraph g = build_product(gen.system, gen.automaton);
    const auto& target = g.nodes[rng() % g.nodes.size()].config;
    const auto& arr = gen.system.pattern.arrays[0];
    const std::string atom = "m1." + arr.name + "[1] = " +
                             std::to_string(target.machines[0].value(0, 0, gen.system.n()));
    const CompiledFormula p = compile_formula(parse_formula("!(" + atom + ")"), gen.system);
    const CompiledFormula f = compile_formula(parse_formula("G(!(" + atom + "))"), gen.system);
    BuildOptions four;
    four.threads = 4;
    const CheckResult r = check_ltl(g, f, gen.system.k());
    const CheckResult r4 = check_ltl(build_product(gen.system, gen.automaton, four), f, gen.system.k());
    const auto d = violation_distance(g, p);
    expect(r.verdict == Verdict::kViolated && r.counterexample && d && r.counterexample->labels.size() == *d,
           "shortest counterexample " + gen.summary);
    expect(r4.counterexample && r.counterexample && r4.counterexample->states == r.counterexample->states &&
               r4.counterexample->labels == r.counterexample->labels,
           "counterexample under 4 threads " + gen.summary);
    ++compared;
  }
  expect(compared == 20, "generated invariants");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "lockstep twin agreement on 20 fault-free generated models", 60,
       [](Expect& e) { cross_validation_suite(e, false, 20, 1001); }},
      {2, "lockstep twin agreement on 10 generated models with faults", 120,
       [](Expect& e) { cross_validation_suite(e, true, 10, 2002); }},
      {3, "post-state diffs of the five fault types", 5, fault_effects},
      {4, "faulty TMR controller: alternating faults, ErrorSum carry-over, machine 1 outputs Erroneous", 300,
       tmr_faulty},
      {5, "TMR controller with MedianUnify holds", 300, tmr_fixed},
      {6, "window schedule passes the timed check; early receives are reported", 1, timed_da},
      {7, "LTBF budget against a reimplementation; gated spacing", 1, ltbf},
      {8, "stutter laws and pruning soundness on every counterexample", 5, stutter},
      {9, "byte-identical reports across runs and thread counts; shortest counterexamples", 30, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Expect expect;
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body(expect);
    } catch (const std::exception& ex) {
      error = ex.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = error.empty() && expect.ok() && s <= c.limit_s;
    failed += !ok;
    std::printf("%s %d: %s (%.2f s, limit %.0f s; %s%s%s)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), s,
                c.limit_s, expect.summary().c_str(), error.empty() ? "" : "; exception: ", error.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
