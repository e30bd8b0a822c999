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

#include "gcaverify/crossvalidate.hpp"

#include <algorithm>
#include <functional>

#include "gcaverify/semantics.hpp"
#include "gcaverify/traces.hpp"

namespace gcaverify {

namespace {

struct SyncTwin {
  std::vector<ProjectedTrace> words;  // destuttered, per machine
  FaultRun run;
  std::vector<char> verdicts;
};

std::string describe_word_difference(const ProjectedTrace& a, const ProjectedTrace& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  return "destuttered projections differ at element " + std::to_string(i) + " (async length " +
         std::to_string(a.size()) + ", sync length " + std::to_string(b.size()) + ")";
}

}  // namespace

CrossValidationReport cross_validate(const GCASystem& system, const FaultAutomaton& automaton,
                                     const std::vector<CompiledProperty>& properties,
                                     const CrossValidationOptions& options) {
  CrossValidationReport report;
  for (const auto& p : properties) report.properties.push_back(PropertyTally{p.name});
  const int n = system.n();
  const int k = static_cast<int>(system.k());
  const int periods = options.periods;
  std::vector<int> barrier = da_barriers(system.pattern);
  if (!options.require_da) std::fill(barrier.begin(), barrier.end(), 0);
  const std::size_t env = env_choice_count(system);
  bool stop = false;

  // The cap is shared evenly between choice sequences so that a large first
  // sequence cannot starve the others.
  const auto all_locs = location_sequences(automaton, periods, SIZE_MAX);
  std::uint64_t sequences = all_locs.size();
  for (int p = 0; p < periods && sequences < options.cap; ++p) sequences *= env;
  const std::uint64_t per_sequence = std::max<std::uint64_t>(1, options.cap / std::max<std::uint64_t>(1, sequences));

  for (const auto& locs : all_locs) {
    std::vector<std::size_t> envs(periods, 0);
    while (!stop) {
      const ChoiceSequence choices{locs, envs};
      ++report.choice_sequences;
      std::uint64_t local = 0;
      bool local_stop = false;

      std::vector<SyncTwin> twins;
      for (const auto& t : run_sync(system, automaton, periods, choices)) {
        SyncTwin twin;
        for (int m = 0; m < n; ++m) twin.words.push_back(destutter(project(t, m)));
        twin.run = fault_run_of(t, system, automaton);
        for (const auto& p : properties) twin.verdicts.push_back(eval_trace(p.formula, t));
        twins.push_back(std::move(twin));
      }
      report.sync_traces += twins.size();

      // Depth-first over interleavings, maintaining destuttered projections.
      Trace cur;
      cur.initial_location = locs[0];
      cur.states.push_back(initial_config(system));
      std::vector<DestutterStack<ProjectedState>> words(n);
      for (int m = 0; m < n; ++m) words[m].push(project_state(cur.states.back(), m));
      std::vector<int> done(n, 0);
      std::vector<Interleaving> chosen(periods);

      auto leaf = [&]() {
        if (report.async_traces >= options.cap) {
          report.truncated = true;
          stop = true;
          return;
        }
        if (local >= per_sequence) {
          report.truncated = true;
          local_stop = true;
          return;
        }
        ++local;
        ++report.async_traces;
        const FaultRun run = fault_run_of(cur, system, automaton);
        std::vector<std::size_t> candidates;
        for (std::size_t v = 0; v < twins.size(); ++v) {
          if (!options.require_indistinguishable || effect_indistinguishable(run, twins[v].run)) {
            candidates.push_back(v);
          }
        }
        if (candidates.empty()) {
          ++report.hypothesis_not_met;
          return;
        }
        std::optional<std::size_t> matched;
        for (std::size_t v : candidates) {
          bool all = true;
          for (int m = 0; m < n && all; ++m) all = words[m].word() == twins[v].words[m];
          if (all) {
            matched = v;
            break;
          }
        }
        auto record = [&](int machine, std::string property, std::string detail) {
          if (report.divergences.size() >= options.max_divergences) return;
          report.divergences.push_back(
              Divergence{choices, chosen, machine, std::move(property), std::move(detail)});
        };
        if (!matched) {
          ++report.stutter_mismatches;
          const SyncTwin& first = twins[candidates.front()];
          for (int m = 0; m < n; ++m) {
            if (words[m].word() != first.words[m]) {
              record(m, {}, describe_word_difference(words[m].word(), first.words[m]));
              break;
            }
          }
        } else {
          ++report.stutter_equivalent;
        }
        // Without a stutter-equivalent twin the verdicts are compared with the
        // first candidate.
        const SyncTwin& twin = twins[matched.value_or(candidates.front())];
        bool mismatch = false;
        for (std::size_t p = 0; p < properties.size(); ++p) {
          const bool async_verdict = eval_trace(properties[p].formula, cur);
          const bool sync_verdict = twin.verdicts[p] != 0;
          if (sync_verdict) ++report.properties[p].sync_holds;
          if (async_verdict == sync_verdict) {
            ++report.properties[p].agree;
          } else {
            ++report.properties[p].disagree;
            mismatch = true;
            record(-1, properties[p].name,
                   std::string("async verdict ") + (async_verdict ? "true" : "false") + ", sync verdict " +
                       (sync_verdict ? "true" : "false"));
          }
        }
        if (mismatch) ++report.verdict_mismatches;
        if (mismatch || !matched) ++report.divergent_traces;
      };

      std::function<void(int, int)> dfs = [&](int period, int steps) {
        if (stop || local_stop) return;
        if (steps == n * k) {
          const std::size_t choice = envs[period];
          StepLabel jump;
          jump.kind = StepKind::kJump;
          jump.env_choice = choice;
          jump.location = period + 1 < periods ? locs[period + 1] : locs[period];
          cur.states.push_back(global_jump_with(system, cur.states.back(), choice));
          cur.labels.push_back(jump);
          for (int m = 0; m < n; ++m) words[m].push(project_state(cur.states.back(), m));
          if (period + 1 == periods) {
            leaf();
          } else {
            const std::vector<int> saved = done;
            std::fill(done.begin(), done.end(), 0);
            dfs(period + 1, 0);
            done = saved;
          }
          for (int m = 0; m < n; ++m) words[m].pop();
          cur.states.pop_back();
          cur.labels.pop_back();
          return;
        }
        const int lowest = *std::min_element(done.begin(), done.end());
        for (int m = 0; m < n && !stop && !local_stop; ++m) {
          if (done[m] >= k || lowest < barrier[done[m] + 1]) continue;
          StepLabel label;
          SystemConfig next = step_machine(system, automaton, locs[period], cur.states.back(), m, label);
          ++done[m];
          chosen[period].push_back(Step{m, done[m]});
          words[m].push(project_state(next, m));
          cur.states.push_back(std::move(next));
          cur.labels.push_back(std::move(label));
          dfs(period, steps + 1);
          cur.states.pop_back();
          cur.labels.pop_back();
          words[m].pop();
          chosen[period].pop_back();
          --done[m];
        }
      };
      dfs(0, 0);

      int p = periods - 1;
      while (p >= 0 && ++envs[p] == env) envs[p--] = 0;
      if (p < 0) break;
    }
    if (stop) break;
  }
  return report;
}

}  // namespace gcaverify
