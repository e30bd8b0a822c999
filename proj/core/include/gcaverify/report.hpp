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

#ifndef GCAVERIFY_REPORT_HPP_
#define GCAVERIFY_REPORT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gcaverify/faults.hpp"
#include "gcaverify/logic.hpp"
#include "gcaverify/schedules.hpp"

namespace gcaverify {

enum class OutputFormat { kText, kMachineReadable };

std::optional<OutputFormat> parse_output_format(const std::string& text);

// "m1.Trigger[1]", "m2.next"
std::string leaf_name(const AtomLeaf& leaf, const GCASystem& system);
std::string leaf_value(const AtomLeaf& leaf, const GCASystem& system, const SystemConfig& config);

// Step-by-step narrative grouped by period. Each step lists the slots of
// `machines` it changed; `watch` is summarized at the end of every period and
// at the final state.
std::string narrate_trace(const Trace& trace, const GCASystem& system, const FaultAutomaton& automaton,
                          const std::vector<std::size_t>& machines, const std::vector<AtomLeaf>& watch,
                          const std::string& indent = "  ");

}  // namespace gcaverify

#endif  // GCAVERIFY_REPORT_HPP_
