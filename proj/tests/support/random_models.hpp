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

// Random desk-scale models for the property suites.

#ifndef GCAVERIFY_TESTS_RANDOM_MODELS_HPP_
#define GCAVERIFY_TESTS_RANDOM_MODELS_HPP_

#include <random>
#include <string>
#include <vector>

#include "gcaverify/crossvalidate.hpp"
#include "gcaverify/faults.hpp"
#include "gcaverify/pattern.hpp"

namespace gcaverify::testing {

struct RandomModelOptions {
  int n_min = 2;
  int n_max = 3;
  int k_min = 2;
  int k_max = 6;
  int env_branches_max = 2;
  bool faults = false;
  int properties = 3;
};

struct GeneratedModel {
  GCASystem system;
  FaultAutomaton automaton;  // fault-free unless requested
  std::vector<CompiledProperty> properties;
  std::vector<std::string> property_text;
  std::string summary;
};

GeneratedModel random_model(std::mt19937_64& rng, const RandomModelOptions& options = {});

// Random PLTL formula over machine `machine` (1-based) using equality atoms.
std::string random_formula(std::mt19937_64& rng, const GCASystem& system, int machine, int depth);

}  // namespace gcaverify::testing

#endif  // GCAVERIFY_TESTS_RANDOM_MODELS_HPP_
