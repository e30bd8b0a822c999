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

#ifndef GCAVERIFY_SCHEDULES_HPP_
#define GCAVERIFY_SCHEDULES_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gcaverify/config.hpp"
#include "gcaverify/faults.hpp"
#include "gcaverify/pattern.hpp"

namespace gcaverify {

// ---------------------------------------------------------------------------
// Untimed interleavings of one period

struct Step {
  int machine = 0;   // 0-based
  int position = 1;  // 1-based
  bool operator==(const Step&) const = default;
};

using Interleaving = std::vector<Step>;

// For each position p (1-based, index 0 unused): every machine must have
// executed position barrier[p] before any machine may execute p. Encodes the
// deterministic assumption with real time replaced by interleaving order.
std::vector<int> da_barriers(const Pattern& pattern);

// Direct check of the ordering constraints on a complete interleaving.
bool satisfies_da(const Pattern& pattern, int n, const Interleaving& order);

// Number of DA interleavings of one period, saturating at `cap`.
std::uint64_t count_da_interleavings(const Pattern& pattern, int n,
                                     std::uint64_t cap = UINT64_MAX);

// Visits every DA interleaving in lexicographic (machine-first) order until
// the callback returns false. Returns the number visited.
std::uint64_t for_each_da_interleaving(const Pattern& pattern, int n,
                                       const std::function<bool(const Interleaving&)>& visit);

// Uniformly random DA interleaving.
Interleaving sample_da_interleaving(const Pattern& pattern, int n, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Traces

enum class StepKind { kAction, kComposite, kJump };

struct StepLabel {
  StepKind kind = StepKind::kAction;
  int machine = -1;   // kAction: executing machine (0-based)
  int position = 0;   // kAction/kComposite: action position
  int location = 0;   // fault location of the period the step belongs to
  std::size_t env_choice = 0;  // kJump
  int variant = 0;             // kComposite: masquerade ordering variant
  std::vector<std::string> faults;  // names of the faults that fired

  bool operator==(const StepLabel&) const = default;
};

std::string describe(const StepLabel& label, const GCASystem& system, const FaultAutomaton& automaton);

// states.size() == labels.size() + 1. A lasso repeats states[loop_start..]
// forever; a finite trace repeats its last state.
struct Trace {
  std::vector<SystemConfig> states;
  std::vector<StepLabel> labels;
  int initial_location = 0;
  std::optional<std::size_t> loop_start;
  // Lassos: the step from states.back() back to states[loop_start].
  std::optional<StepLabel> loop_label;
};

// Fault choices that close a trace: the location of every period and the env
// choice of every jump. Missing entries default to 0 / the first successor.
struct ChoiceSequence {
  std::vector<int> locations;
  std::vector<std::size_t> env_choices;
};

// One asynchronous step of `machine` with the faults active in `location`.
SystemConfig step_machine(const GCASystem& system, const FaultAutomaton& automaton, int location,
                          const SystemConfig& config, std::size_t machine, StepLabel& label);

// Lockstep step: σ_j on all machines, machine 1 first. Returns one successor per
// ordering variant; a variant differs only where a message is appended to a
// queue that already holds a same-slot message from another origin, in which
// case both "which is last" orders are produced.
struct CompositeSuccessor {
  SystemConfig config;
  StepLabel label;
};
std::vector<CompositeSuccessor> composite_step(const GCASystem& system, const FaultAutomaton& automaton,
                                               int location, const SystemConfig& config);

// Synchronous runs for fixed choices; one trace per masquerade ordering
// combination (at most `limit`). Each period contributes k composite steps
// and a jump.
std::vector<Trace> run_sync(const GCASystem& system, const FaultAutomaton& automaton, int periods,
                            const ChoiceSequence& choices, std::size_t limit = 64);

// Every synchronous run: all location sequences, env choices and masquerade
// orders. Stops after `limit` traces; `truncated` reports whether it did.
std::vector<Trace> run_sync_all(const GCASystem& system, const FaultAutomaton& automaton, int periods,
                                std::size_t limit, bool* truncated = nullptr);

// Asynchronous run with one interleaving per period.
Trace run_async(const GCASystem& system, const FaultAutomaton& automaton,
                const std::vector<Interleaving>& periods, const ChoiceSequence& choices);

// Every DA-compliant asynchronous trace for fixed choices, in lexicographic
// order, until `visit` returns false or `limit` traces were produced.
// Returns the number of traces visited; `truncated` reports a hit limit.
std::uint64_t enumerate_da_traces(const GCASystem& system, const FaultAutomaton& automaton, int periods,
                                  const ChoiceSequence& choices, std::uint64_t limit,
                                  const std::function<bool(const Trace&)>& visit,
                                  bool* truncated = nullptr);

// Location sequences admitted by the automaton for `periods` periods.
std::vector<std::vector<int>> location_sequences(const FaultAutomaton& automaton, int periods,
                                                 std::size_t limit = 4096);

// The fault run realized by a trace.
FaultRun fault_run_of(const Trace& trace, const GCASystem& system, const FaultAutomaton& automaton);

// ---------------------------------------------------------------------------
// Timed schedules

struct TimedAction {
  double start = 0;
  double end = 0;
};

struct TimedSchedule {
  double period = 1.0;
  double tau_net = 0.0;
  // actions[machine][position - 1]
  std::vector<std::vector<TimedAction>> actions;
};

// Well-formedness: shape n×k, start ≤ end, per-machine order without overlap,
// all inside [0, T). Throws ModelError.
void validate_schedule(const TimedSchedule& schedule, const Pattern& pattern);

struct DaViolation {
  // kPredecessor: SendEnd(send, send_machine) + τ_net < RecvStart(recv, recv_machine)
  // kSuccessor:   RecvEnd(recv, recv_machine) < SendStart(send, send_machine)
  enum class Kind { kPredecessor, kSuccessor };
  Kind kind = Kind::kPredecessor;
  int send_position = 0;
  int receive_position = 0;
  int send_machine = 0;     // 0-based
  int receive_machine = 0;  // 0-based
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // rhs - lhs; a violation has slack ≤ 0

  std::string describe() const;
};

std::vector<DaViolation> check_da_timed(const TimedSchedule& schedule, const Pattern& pattern);

// Lockstep window schedule: actions of `action_time` separated by `gap`, every
// receive delayed until its predecessor sends ended plus τ_net. Throws
// ModelError for duplicate sends of one array and InfeasibleSchedule when the
// period is too short.
TimedSchedule synthesize_window_schedule(const Pattern& pattern, double tau_net, double period,
                                         double action_time = 1.0, double gap = 0.1);

}  // namespace gcaverify

#endif  // GCAVERIFY_SCHEDULES_HPP_
