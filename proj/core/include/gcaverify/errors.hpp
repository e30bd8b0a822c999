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

#ifndef GCAVERIFY_ERRORS_HPP_
#define GCAVERIFY_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcaverify {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed pattern, unresolved reference, incompatible fault attachment, ...
class ModelError : public Error {
 public:
  using Error::Error;
};

// Raised when the period constraint is broken: executing a machine whose
// cursor is null, or jumping while some cursor is still pending.
class PeriodViolation : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A formula failed the local/next-free admissibility check.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

// No timed schedule fits the period.
class InfeasibleSchedule : public Error {
 public:
  using Error::Error;
};

}  // namespace gcaverify

#endif  // GCAVERIFY_ERRORS_HPP_
