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

#ifndef GCAVERIFY_TRACES_HPP_
#define GCAVERIFY_TRACES_HPP_

#include <compare>
#include <cstddef>
#include <set>
#include <vector>

#include "gcaverify/pattern.hpp"
#include "gcaverify/schedules.hpp"

namespace gcaverify {

// One machine's view of a configuration: its valuation and cursor. Queues
// and environment variables are erased.
struct ProjectedState {
  std::vector<Value> values;
  int next = 0;

  auto operator<=>(const ProjectedState&) const = default;
};

using ProjectedTrace = std::vector<ProjectedState>;

ProjectedState project_state(const SystemConfig& config, std::size_t machine);

// Pointwise projection; length preserved.
ProjectedTrace project(const Trace& trace, std::size_t machine);

// Collapses runs of equal adjacent elements.
template <typename T>
std::vector<T> destutter(const std::vector<T>& word) {
  std::vector<T> out;
  for (const auto& w : word) {
    if (out.empty() || !(out.back() == w)) out.push_back(w);
  }
  return out;
}

template <typename T>
bool stutter_equiv(const std::vector<T>& a, const std::vector<T>& b) {
  return destutter(a) == destutter(b);
}

// Incremental destuttering for depth-first exploration: push/pop one element
// at a time while keeping the destuttered prefix.
template <typename T>
class DestutterStack {
 public:
  void push(const T& v) {
    const bool grow = word_.empty() || !(word_.back() == v);
    if (grow) word_.push_back(v);
    grew_.push_back(grow);
  }
  void pop() {
    if (grew_.back()) word_.pop_back();
    grew_.pop_back();
  }
  const std::vector<T>& word() const { return word_; }

 private:
  std::vector<T> word_;
  std::vector<bool> grew_;
};

// Positions (1-based) of the receives that can take effect: an earlier send
// of the same array exists and the latest such send is after the latest
// earlier receive of that array (position 0 when there is none).
std::set<int> classify_valid_receives(const std::vector<ActionTemplate>& sequence);

// Keeps the steps that change machine `machine`'s projection plus global
// jumps and fault activations. The loop start of a lasso is moved to the
// last kept state at or before it, which has the same projection.
Trace prune_counterexample(const Trace& trace, std::size_t machine);

}  // namespace gcaverify

#endif  // GCAVERIFY_TRACES_HPP_
