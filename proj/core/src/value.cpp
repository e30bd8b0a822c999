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

#include "gcaverify/value.hpp"

#include <algorithm>

#include "gcaverify/errors.hpp"

namespace gcaverify {

Domain Domain::bounded(Value lo, Value hi) {
  if (lo > hi) {
    throw ModelError("empty interval domain [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
  return Domain(false, lo, hi);
}

Value Domain::clamp(Value v) const {
  if (fault_abstraction_) return v == kCorrect ? kCorrect : kErroneous;
  return std::clamp(v, lo_, hi_);
}

std::string to_string(const Domain& domain) {
  if (domain.is_fault_abstraction()) return "fa";
  return "[" + std::to_string(domain.lo()) + ", " + std::to_string(domain.hi()) + "]";
}

std::string format_value(const Domain& domain, Value v) {
  if (domain.is_fault_abstraction()) return v == kCorrect ? "Correct" : "Erroneous";
  return std::to_string(v);
}

}  // namespace gcaverify
