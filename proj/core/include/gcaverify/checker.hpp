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

#ifndef GCAVERIFY_CHECKER_HPP_
#define GCAVERIFY_CHECKER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcaverify/faults.hpp"
#include "gcaverify/logic.hpp"
#include "gcaverify/schedules.hpp"

namespace gcaverify {

struct GraphNode {
  SystemConfig config;  // tick and micro normalized to 0
  int location = 0;
};

struct GraphEdge {
  int target = 0;
  StepLabel label;
};

// Lockstep system composed with the fault automaton. Node ids follow
// breadth-first discovery order; edges of a node are sorted by label.
struct StateGraph {
  std::vector<GraphNode> nodes;
  std::vector<std::vector<GraphEdge>> edges;
  std::vector<int> initial;
  // The node cap was reached; edges to nodes beyond it are missing.
  bool bounded = false;

  std::size_t edge_count() const;
};

struct BuildOptions {
  std::size_t node_cap = 2'000'000;
  // Worker threads for frontier expansion; the graph does not depend on it.
  unsigned threads = 1;
};

// `automaton` must already be gated (see gate_automaton).
StateGraph build_product(const GCASystem& system, const FaultAutomaton& automaton,
                         const BuildOptions& options = {});

enum class Verdict { kHolds, kViolated, kBounded };

std::string to_string(Verdict verdict);

struct CheckResult {
  Verdict verdict = Verdict::kHolds;
  std::optional<Trace> counterexample;
  std::uint64_t work = 0;
};

// Rebuilds a trace from a node path and the labels between the nodes.
Trace path_trace(const StateGraph& graph, const std::vector<int>& nodes,
                 const std::vector<StepLabel>& labels, std::size_t k);

// Breadth-first search for a node violating the propositional formula; the
// counterexample is a shortest path, lexicographically first by edge order.
CheckResult check_invariant(const StateGraph& graph, const CompiledFormula& prop, std::size_t k);

struct LtlOptions {
  // Product nodes plus edges explored before giving up with kBounded.
  std::uint64_t work_budget = 20'000'000;
};

// G(p) with propositional p goes to check_invariant. Otherwise the graph is
// composed with a tableau for the negated formula (one guessed bit per until
// subformula) and searched for a reachable fair strongly connected
// component. A bounded graph can only produce kViolated or kBounded.
CheckResult check_ltl(const StateGraph& graph, const CompiledFormula& formula, std::size_t k,
                      const LtlOptions& options = {});

}  // namespace gcaverify

#endif  // GCAVERIFY_CHECKER_HPP_
