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

#ifndef GCAVERIFY_CROSSVALIDATE_HPP_
#define GCAVERIFY_CROSSVALIDATE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gcaverify/faults.hpp"
#include "gcaverify/logic.hpp"
#include "gcaverify/schedules.hpp"

namespace gcaverify {

struct CrossValidationOptions {
  int periods = 2;
  // Maximum number of asynchronous traces, shared evenly between the choice
  // sequences.
  std::uint64_t cap = 200'000;
  // false: every interleaving, ignoring the deterministic assumption.
  bool require_da = true;
  // Only compare pairs whose fault runs are effect-indistinguishable.
  bool require_indistinguishable = true;
  std::size_t max_divergences = 8;
};

struct Divergence {
  ChoiceSequence choices;
  std::vector<Interleaving> interleavings;
  int machine = -1;        // first machine whose projection differs, or -1
  std::string property;    // property whose verdict differs, if any
  std::string detail;
};

struct PropertyTally {
  std::string name;
  std::uint64_t agree = 0;
  std::uint64_t disagree = 0;
  std::uint64_t sync_holds = 0;  // comparisons where the sync verdict was true
};

struct CrossValidationReport {
  std::uint64_t choice_sequences = 0;
  std::uint64_t sync_traces = 0;
  std::uint64_t async_traces = 0;
  std::uint64_t stutter_equivalent = 0;
  std::uint64_t stutter_mismatches = 0;
  std::uint64_t verdict_mismatches = 0;
  std::uint64_t hypothesis_not_met = 0;
  // Async traces with a stutter mismatch, a verdict mismatch or both.
  std::uint64_t divergent_traces = 0;
  bool truncated = false;
  std::vector<PropertyTally> properties;
  std::vector<Divergence> divergences;

  std::uint64_t divergence_count() const { return divergent_traces; }
};

struct CompiledProperty {
  std::string name;
  CompiledFormula formula;
};

// For every choice sequence (fault location per period, env choice per jump)
// and every admitted interleaving, compares each machine's destuttered
// projection with the lockstep twin (any message-order variant may match)
// and compares property verdicts on the two traces.
CrossValidationReport cross_validate(const GCASystem& system, const FaultAutomaton& automaton,
                                     const std::vector<CompiledProperty>& properties,
                                     const CrossValidationOptions& options = {});

}  // namespace gcaverify

#endif  // GCAVERIFY_CROSSVALIDATE_HPP_
