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

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "gcaverify/errors.hpp"
#include "gcaverify/faults.hpp"
#include "gcaverify/schedules.hpp"

using namespace gcaverify;

namespace {

Pattern random_pattern(std::mt19937_64& rng, int n, int k) {
  Pattern p;
  p.n = n;
  p.arrays = {{"a", Domain::bounded(0, 3), 0}, {"b", Domain::bounded(0, 3), 0}};
  for (int j = 0; j < k; ++j) {
    const std::string array = rng() % 2 ? "a" : "b";
    switch (rng() % 3) {
      case 0: p.actions.push_back(ActionTemplate::send(array)); break;
      case 1: p.actions.push_back(ActionTemplate::receive(array)); break;
      default: p.actions.push_back(ActionTemplate::assign(array, parse_expr("1"))); break;
    }
  }
  return p;
}

int nearest_send(const Pattern& p, const std::string& array, int from, int step) {
  for (int j = from + step; j >= 1 && j <= static_cast<int>(p.k()); j += step) {
    const auto& a = p.actions[j - 1];
    if (a.kind == ActionKind::kSend && a.array == array) return j;
  }
  return 0;
}

// The ordering constraint checked directly on step indices.
bool da_oracle(const Pattern& p, int n, const Interleaving& order) {
  std::vector<std::vector<std::size_t>> at(n, std::vector<std::size_t>(p.k() + 1));
  for (std::size_t t = 0; t < order.size(); ++t) at[order[t].machine][order[t].position] = t;
  for (int b = 1; b <= static_cast<int>(p.k()); ++b) {
    const auto& r = p.actions[b - 1];
    if (r.kind != ActionKind::kReceive) continue;
    const int alpha = nearest_send(p, r.array, b, -1);
    const int gamma = nearest_send(p, r.array, b, +1);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        if (alpha && at[i][alpha] > at[j][b]) return false;
        if (gamma && at[i][gamma] < at[j][b]) return false;
      }
    }
  }
  return true;
}

// Every merge of n machine sequences of length k.
void all_merges(int n, int k, Interleaving& prefix, std::vector<int>& done,
                std::vector<Interleaving>& out) {
  if (static_cast<int>(prefix.size()) == n * k) {
    out.push_back(prefix);
    return;
  }
  for (int m = 0; m < n; ++m) {
    if (done[m] == k) continue;
    prefix.push_back({m, ++done[m]});
    all_merges(n, k, prefix, done, out);
    --done[m];
    prefix.pop_back();
  }
}

std::vector<Interleaving> all_merges(int n, int k) {
  std::vector<Interleaving> out;
  Interleaving prefix;
  std::vector<int> done(n, 0);
  all_merges(n, k, prefix, done, out);
  return out;
}

bool lex_less(const Interleaving& a, const Interleaving& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const Step& x, const Step& y) {
    return std::tie(x.machine, x.position) < std::tie(y.machine, y.position);
  });
}

}  // namespace

TEST_CASE("DA interleavings agree with a brute-force filter") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int k = 2 + static_cast<int>(rng() % (n == 2 ? 4 : 3));
    const Pattern p = random_pattern(rng, n, k);
    std::vector<Interleaving> expected;
    for (const auto& order : all_merges(n, k)) {
      const bool ok = da_oracle(p, n, order);
      CHECK(satisfies_da(p, n, order) == ok);
      if (ok) expected.push_back(order);
    }
    std::vector<Interleaving> visited;
    for_each_da_interleaving(p, n, [&](const Interleaving& o) {
      visited.push_back(o);
      return true;
    });
    CHECK(visited == expected);
    CHECK(std::is_sorted(visited.begin(), visited.end(), lex_less));
    CHECK(count_da_interleavings(p, n) == expected.size());
    CHECK(count_da_interleavings(p, n, 3) == std::min<std::uint64_t>(3, expected.size()));
    for (int s = 0; s < 10; ++s) CHECK(da_oracle(p, n, sample_da_interleaving(p, n, rng)));

    std::uint64_t stopped = 0;
    for_each_da_interleaving(p, n, [&](const Interleaving&) { return ++stopped < 2; });
    CHECK(stopped == std::min<std::uint64_t>(2, expected.size()));
  }
}

TEST_CASE("a lone send and receive have one ordering choice per side") {
  Pattern p;
  p.n = 2;
  p.arrays = {{"a", Domain::bounded(0, 3), 0}};
  p.actions = {ActionTemplate::send("a"), ActionTemplate::receive("a")};
  // Both sends precede both receives: 2 orders of the sends times 2 of the receives.
  CHECK(count_da_interleavings(p, 2) == 4);
}

TEST_CASE("the timed checker matches an inequality evaluator") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> len(0.1, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int k = 2 + static_cast<int>(rng() % 4);
    const Pattern p = random_pattern(rng, n, k);
    TimedSchedule s;
    s.period = 100;
    s.tau_net = static_cast<double>(rng() % 3) * 0.25;
    s.actions.assign(n, std::vector<TimedAction>(k));
    for (int m = 0; m < n; ++m) {
      double t = len(rng);
      for (int j = 0; j < k; ++j) {
        const double d = len(rng);
        s.actions[m][j] = {t, t + d};
        t += d + len(rng);
      }
    }
    std::set<std::tuple<int, int, int, int, int>> expected;
    for (int b = 1; b <= k; ++b) {
      const auto& r = p.actions[b - 1];
      if (r.kind != ActionKind::kReceive) continue;
      const int alpha = nearest_send(p, r.array, b, -1);
      const int gamma = nearest_send(p, r.array, b, +1);
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          if (alpha && s.actions[i][alpha - 1].end + s.tau_net >= s.actions[j][b - 1].start) {
            expected.insert({0, alpha, b, i, j});
          }
          if (gamma && s.actions[j][b - 1].end >= s.actions[i][gamma - 1].start) {
            expected.insert({1, gamma, b, i, j});
          }
        }
      }
    }
    std::set<std::tuple<int, int, int, int, int>> got;
    for (const auto& v : check_da_timed(s, p)) {
      CHECK(v.slack <= 0);
      got.insert({v.kind == DaViolation::Kind::kPredecessor ? 0 : 1, v.send_position, v.receive_position,
                  v.send_machine, v.receive_machine});
    }
    CHECK(got == expected);
  }
}

TEST_CASE("schedule well-formedness") {
  Pattern p;
  p.n = 2;
  p.arrays = {{"a", Domain::bounded(0, 3), 0}};
  p.actions = {ActionTemplate::send("a"), ActionTemplate::receive("a")};
  TimedSchedule s;
  s.period = 10;
  s.actions = {{{0, 1}, {2, 3}}, {{0, 1}, {2, 3}}};
  CHECK_NOTHROW(validate_schedule(s, p));
  auto bad = s;
  bad.actions[1][1] = {0.5, 1.5};  // overlaps the send
  CHECK_THROWS_AS(validate_schedule(bad, p), ModelError);
  bad = s;
  bad.actions[0][1] = {3, 2};
  CHECK_THROWS_AS(validate_schedule(bad, p), ModelError);
  bad = s;
  bad.actions[0][1] = {9, 10.5};
  CHECK_THROWS_AS(validate_schedule(bad, p), ModelError);
  bad = s;
  bad.actions.pop_back();
  CHECK_THROWS_AS(validate_schedule(bad, p), ModelError);
}

TEST_CASE("window synthesis passes the timed check and tolerates small jitter") {
  std::mt19937_64 rng(23);
  int synthesized = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    Pattern p = random_pattern(rng, n, 2 + static_cast<int>(rng() % 5));
    const double tau = static_cast<double>(rng() % 4) * 0.5;
    TimedSchedule s;
    try {
      s = synthesize_window_schedule(p, tau, 40.0);
    } catch (const ModelError&) {
      continue;  // duplicate send
    }
    ++synthesized;
    CHECK(check_da_timed(s, p).empty());
    // Shifting whole actions by less than a third of the gap keeps every
    // inequality strict.
    std::uniform_real_distribution<double> jitter(-0.03, 0.03);
    for (auto& row : s.actions) {
      for (auto& a : row) {
        const double d = std::max(jitter(rng), -a.start);
        a.start += d;
        a.end += d;
      }
    }
    CHECK(check_da_timed(s, p).empty());
  }
  CHECK(synthesized > 20);
}

TEST_CASE("window synthesis errors") {
  Pattern p;
  p.n = 3;
  p.arrays = {{"a", Domain::bounded(0, 3), 0}};
  p.actions = {ActionTemplate::send("a"), ActionTemplate::receive("a")};
  const TimedSchedule s = synthesize_window_schedule(p, 0.5, 10);
  CHECK(s.actions[0][1].start == doctest::Approx(1.6));
  auto early = s;
  early.actions[2][1].start -= 0.2;
  const auto v = check_da_timed(early, p);
  CHECK(v.size() == 3);
  for (const auto& x : v) CHECK(x.receive_machine == 2);

  CHECK_THROWS_AS(synthesize_window_schedule(p, 0.5, 2.5), InfeasibleSchedule);
  CHECK_THROWS_AS(synthesize_window_schedule(p, 10, 10), InfeasibleSchedule);
  p.actions.push_back(ActionTemplate::send("a"));
  CHECK_THROWS_AS(synthesize_window_schedule(p, 0.5, 10), ModelError);
}

TEST_CASE("a lockstep period matches hand simulation") {
  // a, b over [0, 20], In = 5:
  //   σ1 a[x] <- In + x   σ2 send(a[x])   σ3 receive(a)   σ4 b[x] <- a[x] + a[x+1]
  GCASystem s;
  s.pattern.n = 3;
  s.mode = AnalysisMode::kIntervals;
  s.pattern.arrays = {{"a", Domain::bounded(0, 20), 0}, {"b", Domain::bounded(0, 20), 0}};
  s.pattern.envs = {{"In", Domain::bounded(0, 9), 5, {}}};
  s.pattern.actions = {ActionTemplate::assign("a", parse_expr("In + x")), ActionTemplate::send("a"),
                       ActionTemplate::receive("a"), ActionTemplate::assign("b", parse_expr("a[x] + a[x+1]"))};
  s.finalize();
  const auto traces = run_sync(s, FaultAutomaton::fault_free(), 1, ChoiceSequence{});
  REQUIRE(traces.size() == 1);
  const Trace& t = traces[0];
  REQUIRE(t.labels.size() == 5);
  for (int j = 0; j < 4; ++j) {
    CHECK(t.labels[j].kind == StepKind::kComposite);
    CHECK(t.labels[j].position == j + 1);
  }
  CHECK(t.labels[4].kind == StepKind::kJump);
  const std::vector<Value> b_expected{13, 15, 14};
  for (int m = 0; m < 3; ++m) {
    const MachineState& ms = t.states.back().machines[m];
    for (int slot = 0; slot < 3; ++slot) CHECK(ms.value(0, slot, 3) == 6 + slot);
    CHECK(ms.value(1, m, 3) == b_expected[m]);
    CHECK(ms.next == 1);
    CHECK(ms.queue.empty());
  }
  // After σ2 every machine holds the other two messages.
  for (const auto& ms : t.states[2].machines) CHECK(ms.queue.size() == 2);
}

TEST_CASE("location sequences follow the automaton edges") {
  FaultAutomaton fa;
  fa.locations = {{"a", {}}, {"b", {}}, {"c", {}}};
  fa.edges = {{1}, {0, 2}, {2}};
  fa.initial = {0};
  const auto seqs = location_sequences(fa, 3);
  const std::vector<std::vector<int>> expected{{0, 1, 0}, {0, 1, 2}};
  CHECK(seqs == expected);
}
