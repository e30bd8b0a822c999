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

#ifndef GCAVERIFY_SRC_REPORT_JSON_HPP_
#define GCAVERIFY_SRC_REPORT_JSON_HPP_

#include <json.hpp>

#include "gcaverify/report.hpp"

namespace gcaverify::detail {

nlohmann::ordered_json trace_json(const Trace& trace, const GCASystem& system, const FaultAutomaton& automaton,
                                  const std::vector<std::size_t>& machines, const std::vector<AtomLeaf>& watch);

}  // namespace gcaverify::detail

#endif  // GCAVERIFY_SRC_REPORT_JSON_HPP_
