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

#ifndef GCAVERIFY_COMMANDS_HPP_
#define GCAVERIFY_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "gcaverify/report.hpp"

namespace gcaverify {

// Exit codes: 0 everything holds, 1 violation, 2 usage or model error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitError = 2;

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

struct CheckOptions {
  std::string property;  // empty: all
  OutputFormat format = OutputFormat::kText;
  unsigned threads = 1;
  std::size_t node_cap = 2'000'000;
};

CommandResult cmd_check(const std::string& model_path, const CheckOptions& options = {});

struct CrossValidateOptions {
  int periods = 2;
  std::uint64_t cap = 200'000;
  OutputFormat format = OutputFormat::kText;
};

CommandResult cmd_crossvalidate(const std::string& model_path, const CrossValidateOptions& options = {});

struct DaCheckOptions {
  bool synthesize_window = false;
  // Network delay for synthesis when the model has no schedule.
  std::optional<double> tau_net;
  OutputFormat format = OutputFormat::kText;
};

CommandResult cmd_dacheck(const std::string& model_path, const DaCheckOptions& options = {});

struct SimulateOptions {
  int periods = 2;
  std::uint64_t seed = 0;
  bool async = false;
  OutputFormat format = OutputFormat::kText;
};

CommandResult cmd_simulate(const std::string& model_path, const SimulateOptions& options = {});

}  // namespace gcaverify

#endif  // GCAVERIFY_COMMANDS_HPP_
