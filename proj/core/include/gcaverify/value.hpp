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

#ifndef GCAVERIFY_VALUE_HPP_
#define GCAVERIFY_VALUE_HPP_

#include <cstdint>
#include <string>

namespace gcaverify {

using Value = std::int64_t;

// Fault-abstraction encoding. Properties compare against these numerically,
// e.g. `m1.Result = 0` reads "machine 1's Result is Correct".
inline constexpr Value kCorrect = 0;
inline constexpr Value kErroneous = 1;

// Value domain of one port: the two-valued fault abstraction or a bounded
// integer range.
class Domain {
 public:
  Domain() = default;

  static Domain fault_abstraction() { return Domain(true, kCorrect, kErroneous); }
  static Domain bounded(Value lo, Value hi);

  bool is_fault_abstraction() const { return fault_abstraction_; }
  Value lo() const { return lo_; }
  Value hi() const { return hi_; }
  // Interval "top" used for undefined results such as division by zero.
  Value top() const { return hi_; }
  std::uint64_t size() const { return static_cast<std::uint64_t>(hi_ - lo_) + 1; }

  bool contains(Value v) const { return v >= lo_ && v <= hi_; }
  Value clamp(Value v) const;

  bool operator==(const Domain&) const = default;

 private:
  Domain(bool fa, Value lo, Value hi) : fault_abstraction_(fa), lo_(lo), hi_(hi) {}

  bool fault_abstraction_ = true;
  Value lo_ = kCorrect;
  Value hi_ = kErroneous;
};

std::string to_string(const Domain& domain);

// "Correct"/"Erroneous" for fault-abstraction ports, the number otherwise.
std::string format_value(const Domain& domain, Value v);

}  // namespace gcaverify

#endif  // GCAVERIFY_VALUE_HPP_
