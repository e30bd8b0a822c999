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

#include "gcaverify/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>

#include "gcaverify/checker.hpp"
#include "gcaverify/crossvalidate.hpp"
#include "gcaverify/errors.hpp"
#include "gcaverify/model_io.hpp"
#include "gcaverify/semantics.hpp"
#include "gcaverify/traces.hpp"
#include "report_json.hpp"

namespace gcaverify {

namespace {

using json = nlohmann::ordered_json;

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

template <typename F>
CommandResult guarded(F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return CommandResult{kExitError, {}, std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return CommandResult{kExitError, {}, std::string("error: ") + e.what() + "\n"};
  }
}

std::vector<AtomLeaf> unique_leaves(const std::vector<AtomLeaf>& leaves) {
  std::vector<AtomLeaf> out;
  for (const auto& l : leaves) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const AtomLeaf& o) {
      return o.machine == l.machine && o.array == l.array && o.slot == l.slot;
    });
    if (!seen) out.push_back(l);
  }
  return out;
}

std::string model_line(const Model& model) {
  auto count = [](std::size_t c, const std::string& noun) {
    return std::to_string(c) + " " + noun + (c == 1 ? "" : "s");
  };
  std::string name = model.spec.name.empty() ? model.spec.source : model.spec.name;
  return "model " + name + ": " + count(static_cast<std::size_t>(model.system.n()), "machine") + ", " +
         count(model.system.k(), "action") + " per period, " +
         count(model.automaton.locations.size(), "fault location");
}

std::string interleaving_text(const Interleaving& order) {
  std::string out;
  for (const auto& s : order) {
    if (!out.empty()) out += " ";
    out += "m" + std::to_string(s.machine + 1) + "σ" + std::to_string(s.position);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

CommandResult cmd_check(const std::string& model_path, const CheckOptions& options) {
  return guarded([&] {
    CommandResult res;
    const Model model = load_model(model_path);
    std::vector<const NamedProperty*> selected;
    for (const auto& p : model.properties) {
      if (options.property.empty() || p.name == options.property) selected.push_back(&p);
    }
    if (!options.property.empty() && selected.empty()) {
      throw ModelError("no property named '" + options.property + "'");
    }
    std::vector<CompiledFormula> compiled;
    for (const auto* p : selected) {
      try {
        compiled.push_back(compile_formula(p->formula, model.system));
      } catch (const Error& e) {
        throw ModelError("property " + p->name + ": " + e.what());
      }
    }
    if (selected.empty()) {
      res.err = "warning: " + model_path + " declares no properties\n";
      if (options.format == OutputFormat::kText) {
        res.out = model_line(model) + "\nno properties to check\n";
      } else {
        json j;
        j["model"] = model.spec.name;
        j["properties"] = json::array();
        j["warnings"] = json::array({"no properties"});
        res.out = j.dump(2) + "\n";
      }
      return res;
    }

    const StateGraph graph = build_product(model.system, model.gated, {options.node_cap, options.threads});
    std::ostringstream text;
    json j;
    j["model"] = model.spec.name;
    j["machines"] = model.system.n();
    j["actions"] = model.system.k();
    j["graph"] = {{"nodes", graph.nodes.size()}, {"edges", graph.edge_count()}, {"bounded", graph.bounded}};
    j["properties"] = json::array();
    text << model_line(model) << "\n";
    text << "state graph: " << graph.nodes.size() << " nodes, " << graph.edge_count() << " edges";
    if (graph.bounded) text << " (node cap reached, exploration bounded)";
    text << "\n";

    bool all_hold = true;
    for (std::size_t i = 0; i < selected.size(); ++i) {
      const NamedProperty& p = *selected[i];
      const CompiledFormula& f = compiled[i];
      const CheckResult r = check_ltl(graph, f, model.system.k());
      if (r.verdict != Verdict::kHolds) all_hold = false;
      text << "\nproperty " << p.name << ": " << to_string(r.verdict) << "\n";
      text << "  formula: " << p.text << "\n";
      if (f.extended) text << "  note: order atoms fall outside the stutter-invariant fragment\n";
      json pj;
      pj["name"] = p.name;
      pj["formula"] = p.text;
      pj["verdict"] = to_string(r.verdict);
      if (r.counterexample) {
        const Trace pruned = prune_counterexample(*r.counterexample, f.machine);
        const std::vector<AtomLeaf> watch = unique_leaves(f.leaves);
        const std::vector<std::size_t> machines{static_cast<std::size_t>(f.machine)};
        text << "  counterexample on machine " << f.machine + 1 << ": " << pruned.labels.size() << " of "
             << r.counterexample->labels.size() << " steps shown\n";
        text << narrate_trace(pruned, model.system, model.gated, machines, watch, "  ");
        pj["counterexample"] = detail::trace_json(pruned, model.system, model.gated, machines, watch);
        pj["counterexample"]["raw_steps"] = r.counterexample->labels.size();
      } else if (r.verdict == Verdict::kBounded) {
        text << "  exploration budget exhausted before a verdict\n";
      }
      j["properties"].push_back(std::move(pj));
    }
    res.exit_code = all_hold ? kExitOk : kExitViolation;
    res.out = options.format == OutputFormat::kText ? text.str() : j.dump(2) + "\n";
    return res;
  });
}

// ---------------------------------------------------------------------------

CommandResult cmd_crossvalidate(const std::string& model_path, const CrossValidateOptions& options) {
  return guarded([&] {
    CommandResult res;
    if (options.periods < 1) throw ModelError("--periods must be at least 1");
    const Model model = load_model(model_path);
    std::vector<CompiledProperty> props;
    for (const auto& p : model.properties) {
      try {
        props.push_back(CompiledProperty{p.name, compile_formula(p.formula, model.system)});
      } catch (const Error& e) {
        throw ModelError("property " + p.name + ": " + e.what());
      }
    }
    CrossValidationOptions cv;
    cv.periods = options.periods;
    cv.cap = options.cap;
    cv.require_da = !model.spec.unconstrained_interleavings;
    const CrossValidationReport rep = cross_validate(model.system, model.gated, props, cv);

    std::ostringstream text;
    text << model_line(model) << "\n";
    text << "cross-validation over " << options.periods << " period(s)"
         << (cv.require_da ? ", deterministic-assumption interleavings"
                           : ", all interleavings (deterministic assumption not enforced)")
         << "\n";
    text << "choice sequences: " << rep.choice_sequences << "\n";
    text << "sync traces: " << rep.sync_traces << "\n";
    text << "stutter-equivalent projections: " << rep.stutter_equivalent << "\n";
    text << "stutter mismatches: " << rep.stutter_mismatches << "\n";
    text << "verdict mismatches: " << rep.verdict_mismatches << "\n";
    if (rep.hypothesis_not_met) {
      text << "pairs skipped, fault runs not effect-indistinguishable: " << rep.hypothesis_not_met << "\n";
    }
    if (!rep.properties.empty()) {
      text << "property agreement (async vs sync):\n";
      for (const auto& t : rep.properties) {
        text << "  " << t.name << ": agree " << t.agree << ", disagree " << t.disagree << ", sync holds "
             << t.sync_holds << "\n";
      }
    }
    if (rep.truncated) text << "cap of " << options.cap << " traces reached: enumeration is partial\n";
    text << rep.async_traces << " interleavings, " << rep.divergence_count() << " divergences\n";
    for (std::size_t i = 0; i < rep.divergences.size(); ++i) {
      const Divergence& d = rep.divergences[i];
      text << "divergence " << i + 1 << ":";
      if (d.machine >= 0) text << " machine " << d.machine + 1;
      if (!d.property.empty()) text << " property " << d.property;
      text << "\n";
      text << "  locations:";
      for (int l : d.choices.locations) text << " " << model.gated.locations[l].name;
      text << "\n";
      for (std::size_t p = 0; p < d.interleavings.size(); ++p) {
        text << "  period " << p + 1 << ": " << interleaving_text(d.interleavings[p]) << "\n";
      }
      if (!d.detail.empty()) text << "  " << d.detail << "\n";
    }

    json j;
    j["model"] = model.spec.name;
    j["periods"] = options.periods;
    j["require_da"] = cv.require_da;
    j["choice_sequences"] = rep.choice_sequences;
    j["sync_traces"] = rep.sync_traces;
    j["interleavings"] = rep.async_traces;
    j["stutter_equivalent"] = rep.stutter_equivalent;
    j["stutter_mismatches"] = rep.stutter_mismatches;
    j["verdict_mismatches"] = rep.verdict_mismatches;
    j["hypothesis_not_met"] = rep.hypothesis_not_met;
    j["truncated"] = rep.truncated;
    j["divergences"] = rep.divergence_count();
    j["properties"] = json::array();
    for (const auto& t : rep.properties) {
      j["properties"].push_back(
          {{"name", t.name}, {"agree", t.agree}, {"disagree", t.disagree}, {"sync_holds", t.sync_holds}});
    }
    j["divergence_details"] = json::array();
    for (const auto& d : rep.divergences) {
      json dj;
      dj["machine"] = d.machine >= 0 ? json(d.machine + 1) : json();
      dj["property"] = d.property;
      dj["locations"] = json::array();
      for (int l : d.choices.locations) dj["locations"].push_back(model.gated.locations[l].name);
      dj["env_choices"] = d.choices.env_choices;
      dj["interleavings"] = json::array();
      for (const auto& il : d.interleavings) dj["interleavings"].push_back(interleaving_text(il));
      dj["detail"] = d.detail;
      j["divergence_details"].push_back(std::move(dj));
    }
    res.exit_code = rep.divergence_count() ? kExitViolation : kExitOk;
    res.out = options.format == OutputFormat::kText ? text.str() : j.dump(2) + "\n";
    return res;
  });
}

// ---------------------------------------------------------------------------

namespace {

std::string schedule_yaml(const TimedSchedule& s) {
  std::ostringstream out;
  out << "schedule:\n  tau_net: " << fixed(s.tau_net) << "\n  machines:\n";
  for (const auto& row : s.actions) {
    out << "    - [";
    for (std::size_t p = 0; p < row.size(); ++p) {
      if (p) out << ", ";
      out << "[" << fixed(row[p].start) << ", " << fixed(row[p].end) << "]";
    }
    out << "]\n";
  }
  return out.str();
}

json violation_json(const DaViolation& v) {
  return {{"kind", v.kind == DaViolation::Kind::kPredecessor ? "predecessor" : "successor"},
          {"send_position", v.send_position},
          {"receive_position", v.receive_position},
          {"send_machine", v.send_machine + 1},
          {"receive_machine", v.receive_machine + 1},
          {"lhs", v.lhs},
          {"rhs", v.rhs},
          {"slack", v.slack},
          {"text", v.describe()}};
}

}  // namespace

CommandResult cmd_dacheck(const std::string& model_path, const DaCheckOptions& options) {
  return guarded([&] {
    CommandResult res;
    const Model model = load_model(model_path);
    std::ostringstream text;
    json j;
    j["model"] = model.spec.name;
    text << model_line(model) << "\n";

    TimedSchedule schedule;
    if (options.synthesize_window) {
      double tau = options.tau_net.value_or(model.schedule ? model.schedule->tau_net : 0.0);
      try {
        schedule = synthesize_window_schedule(model.system.pattern, tau, model.system.period);
      } catch (const InfeasibleSchedule& e) {
        text << "window schedule infeasible: " << e.what() << "\n";
        j["synthesized"] = nullptr;
        j["infeasible"] = e.what();
        res.exit_code = kExitViolation;
        res.out = options.format == OutputFormat::kText ? text.str() : j.dump(2) + "\n";
        return res;
      }
      text << "synthesized window schedule:\n" << schedule_yaml(schedule);
      json sj = json::array();
      for (const auto& row : schedule.actions) {
        json r = json::array();
        for (const auto& a : row) r.push_back({a.start, a.end});
        sj.push_back(std::move(r));
      }
      j["synthesized"] = {{"tau_net", schedule.tau_net}, {"machines", sj}};
    } else {
      if (!model.schedule) throw ModelError(model_path + ": the model has no schedule section");
      schedule = *model.schedule;
    }
    validate_schedule(schedule, model.system.pattern);
    const auto violations = check_da_timed(schedule, model.system.pattern);
    j["violations"] = json::array();
    for (const auto& v : violations) j["violations"].push_back(violation_json(v));
    j["satisfied"] = violations.empty();
    if (violations.empty()) {
      text << "deterministic assumption satisfied\n";
    } else {
      text << violations.size() << " violation(s) of the deterministic assumption:\n";
      for (const auto& v : violations) text << "  " << v.describe() << "\n";
    }
    res.exit_code = violations.empty() ? kExitOk : kExitViolation;
    res.out = options.format == OutputFormat::kText ? text.str() : j.dump(2) + "\n";
    return res;
  });
}

// ---------------------------------------------------------------------------

CommandResult cmd_simulate(const std::string& model_path, const SimulateOptions& options) {
  return guarded([&] {
    CommandResult res;
    if (options.periods < 1) throw ModelError("--periods must be at least 1");
    const Model model = load_model(model_path);
    const FaultAutomaton& fa = model.gated;
    std::mt19937_64 rng(options.seed);
    auto pick = [&](std::size_t count) {
      return static_cast<std::size_t>(std::uniform_int_distribution<std::uint64_t>(0, count - 1)(rng));
    };

    // Fault and environment choices first, so sync and async runs of one seed
    // resolve them identically.
    ChoiceSequence choices;
    choices.locations.push_back(fa.initial[pick(fa.initial.size())]);
    for (int p = 1; p < options.periods; ++p) {
      const auto& next = fa.edges[choices.locations.back()];
      choices.locations.push_back(next[pick(next.size())]);
    }
    const std::size_t env = env_choice_count(model.system);
    for (int p = 0; p < options.periods; ++p) choices.env_choices.push_back(pick(env));

    Trace trace;
    if (options.async) {
      std::vector<Interleaving> orders;
      for (int p = 0; p < options.periods; ++p) {
        orders.push_back(sample_da_interleaving(model.system.pattern, model.system.n(), rng));
      }
      trace = run_async(model.system, fa, orders, choices);
    } else {
      auto runs = run_sync(model.system, fa, options.periods, choices);
      trace = std::move(runs.at(pick(runs.size())));
    }

    std::vector<std::size_t> machines;
    for (int m = 0; m < model.system.n(); ++m) machines.push_back(static_cast<std::size_t>(m));
    std::ostringstream text;
    text << model_line(model) << "\n";
    text << (options.async ? "asynchronous" : "synchronous") << " run, " << options.periods
         << " period(s), seed " << options.seed << "\n";
    text << narrate_trace(trace, model.system, fa, machines, {}, "");
    text << "final configuration:\n";
    for (int m = 0; m < model.system.n(); ++m) {
      text << "  machine " << m + 1 << ": " << describe_machine(model.system, trace.states.back().machines[m])
           << "\n";
    }
    json j;
    j["model"] = model.spec.name;
    j["mode"] = options.async ? "async" : "sync";
    j["periods"] = options.periods;
    j["seed"] = options.seed;
    j["trace"] = detail::trace_json(trace, model.system, fa, machines, {});
    j["final"] = json::array();
    for (int m = 0; m < model.system.n(); ++m) {
      j["final"].push_back(describe_machine(model.system, trace.states.back().machines[m]));
    }
    res.out = options.format == OutputFormat::kText ? text.str() : j.dump(2) + "\n";
    return res;
  });
}

}  // namespace gcaverify
