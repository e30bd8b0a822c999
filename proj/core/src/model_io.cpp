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

#include "gcaverify/model_io.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "gcaverify/errors.hpp"
#include "gcaverify/mechanisms.hpp"

namespace gcaverify {

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& what) const {
    const int line = at.IsDefined() ? at.Mark().line + 1 : 0;
    throw ModelError(source_ + ":" + std::to_string(line) + ": " + what);
  }

  [[noreturn]] void fail_line(int line, const std::string& what) const {
    throw ModelError(source_ + ":" + std::to_string(line) + ": " + what);
  }

  void only_keys(const YAML::Node& map, std::initializer_list<const char*> keys, const char* what) const {
    if (!map.IsMap()) fail(map, std::string(what) + " must be a mapping");
    for (const auto& kv : map) {
      const std::string key = kv.first.as<std::string>();
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
        fail(kv.first, "unknown key '" + key + "' in " + what);
      }
    }
  }

  template <typename T>
  T scalar(const YAML::Node& node, const char* what) const {
    if (!node.IsScalar()) fail(node, std::string(what) + " must be a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, std::string("invalid value for ") + what);
    }
  }

  std::string text(const YAML::Node& node, const char* what) const { return scalar<std::string>(node, what); }

  std::vector<std::string> strings(const YAML::Node& node, const char* what) const {
    std::vector<std::string> out;
    if (!node.IsDefined() || node.IsNull()) return out;
    if (!node.IsSequence()) fail(node, std::string(what) + " must be a list");
    for (const auto& e : node) out.push_back(text(e, what));
    return out;
  }

  std::vector<int> ints(const YAML::Node& node, const char* what) const {
    std::vector<int> out;
    if (!node.IsDefined() || node.IsNull()) return out;
    if (!node.IsSequence()) fail(node, std::string(what) + " must be a list");
    for (const auto& e : node) out.push_back(scalar<int>(e, what));
    return out;
  }

  const YAML::Node required(const YAML::Node& map, const char* key, const char* what) const {
    const YAML::Node n = map[key];
    if (!n.IsDefined()) fail(map, std::string(what) + " needs '" + key + "'");
    return n;
  }

  DomainSpec domain(const YAML::Node& node) const {
    if (node.IsScalar()) {
      const std::string s = node.as<std::string>();
      if (s == "fa" || s == "fault-abstraction") return DomainSpec{};
      fail(node, "domain must be 'fault-abstraction' or [lo, hi]");
    }
    if (node.IsSequence() && node.size() == 2) {
      DomainSpec d{false, scalar<Value>(node[0], "domain bound"), scalar<Value>(node[1], "domain bound")};
      if (d.lo > d.hi) fail(node, "empty domain: lo > hi");
      return d;
    }
    fail(node, "domain must be 'fault-abstraction' or [lo, hi]");
  }

  Value init_value(const YAML::Node& node) const {
    if (!node.IsDefined()) return 0;
    if (node.IsScalar()) {
      const std::string s = node.as<std::string>();
      if (s == "Correct") return kCorrect;
      if (s == "Erroneous") return kErroneous;
    }
    return scalar<Value>(node, "init");
  }

  ActionSpec action(const YAML::Node& node) const {
    ActionSpec a;
    a.line.value = node.Mark().line + 1;
    if (node.IsMap()) {
      if (node["macro"]) {
        only_keys(node, {"macro", "port", "name", "table", "target", "statuses", "test", "label"}, "macro");
        a.kind = ActionSpec::Kind::kMacro;
        a.macro = text(node["macro"], "macro");
        if (node["port"]) a.port = text(node["port"], "port");
        if (node["name"]) a.port = text(node["name"], "name");
        if (node["table"]) a.table = text(node["table"], "table");
        if (node["target"]) a.target = text(node["target"], "target");
        a.statuses = strings(node["statuses"], "statuses");
        if (node["test"]) a.test = text(node["test"], "test");
        if (node["label"]) a.label = text(node["label"], "label");
        check_macro(a, node);
        return a;
      }
      only_keys(node, {"do", "label"}, "action");
      ActionSpec inner = parse_action_text(text(required(node, "do", "action"), "do"), node);
      inner.line = a.line;
      if (node["label"]) inner.label = text(node["label"], "label");
      return inner;
    }
    ActionSpec inner = parse_action_text(text(node, "action"), node);
    inner.line = a.line;
    return inner;
  }

  void check_macro(const ActionSpec& a, const YAML::Node& at) const {
    if (a.macro == "TestPortAbsolute" || a.macro == "MedianUnify" || a.macro == "TestLiveness") {
      if (a.port.empty()) fail(at, a.macro + " needs a port");
    } else if (a.macro == "RedundancyTrigger") {
      if (a.table.empty() || a.target.empty()) fail(at, "RedundancyTrigger needs 'table' and 'target'");
      if (a.statuses.empty() == a.test.empty()) {
        fail(at, "RedundancyTrigger needs exactly one of 'statuses' and 'test'");
      }
    } else {
      fail(at, "unknown mechanism macro '" + a.macro + "'");
    }
  }

  ActionSpec parse_action_text(const std::string& s, const YAML::Node& at) const {
    ActionSpec a;
    auto trim = [](std::string v) {
      const auto b = v.find_first_not_of(" \t");
      const auto e = v.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    const auto arrow = s.find("<-");
    if (arrow != std::string::npos) {
      const std::string lhs = trim(s.substr(0, arrow));
      const std::string rhs = trim(s.substr(arrow + 2));
      const auto br = lhs.find('[');
      if (br == std::string::npos || trim(lhs.substr(br)) != "[x]") {
        fail(at, "an assignment must target the own slot, e.g. 'a[x] <- e'");
      }
      a.kind = ActionSpec::Kind::kAssign;
      a.array = trim(lhs.substr(0, br));
      a.expr = rhs;
      try {
        parse_expr(rhs);
      } catch (const SyntaxError& e) {
        fail(at, std::string("in expression: ") + e.what());
      }
      return a;
    }
    const auto open = s.find('(');
    const auto close = s.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
      fail(at, "cannot read action '" + s + "'");
    }
    const std::string head = trim(s.substr(0, open));
    std::string arg = trim(s.substr(open + 1, close - open - 1));
    if (head == "send" || head == "receive") {
      const auto br = arg.find('[');
      if (br != std::string::npos) {
        const std::string idx = trim(arg.substr(br));
        if (head == "send" && idx != "[x]") fail(at, "send only sends the own slot a[x]");
        arg = trim(arg.substr(0, br));
      }
      a.kind = head == "send" ? ActionSpec::Kind::kSend : ActionSpec::Kind::kReceive;
      a.array = arg;
      return a;
    }
    a.kind = ActionSpec::Kind::kMacro;
    a.macro = head;
    a.port = arg;
    check_macro(a, at);
    return a;
  }

 private:
  std::string source_;
};

std::string action_text(const ActionSpec& a) {
  switch (a.kind) {
    case ActionSpec::Kind::kAssign: return a.array + "[x] <- " + a.expr;
    case ActionSpec::Kind::kSend: return "send(" + a.array + "[x])";
    case ActionSpec::Kind::kReceive: return "receive(" + a.array + ")";
    case ActionSpec::Kind::kMacro: return a.macro + "(" + a.port + ")";
  }
  return {};
}

}  // namespace

ModelSpec parse_model_spec(const std::string& text, const std::string& source) {
  Reader r(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ModelError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  ModelSpec spec;
  spec.source = source;
  if (!root.IsMap()) throw ModelError(source + ":1: a model file is a mapping");
  r.only_keys(root,
              {"name", "redundancy", "period", "domain", "flush_queues_at_jump", "interleavings", "pattern",
               "faults", "properties", "schedule"},
              "model");
  if (root["name"]) spec.name = r.text(root["name"], "name");
  spec.n = r.scalar<int>(r.required(root, "redundancy", "model"), "redundancy");
  if (spec.n < 1) r.fail(root["redundancy"], "redundancy must be at least 1");
  if (root["period"]) spec.period = r.scalar<double>(root["period"], "period");
  if (!(spec.period > 0)) r.fail(root["period"], "period must be positive");
  if (root["domain"]) {
    const std::string d = r.text(root["domain"], "domain");
    if (d == "intervals") {
      spec.interval_mode = true;
    } else if (d != "fault-abstraction") {
      r.fail(root["domain"], "domain must be 'fault-abstraction' or 'intervals'");
    }
  }
  if (root["flush_queues_at_jump"]) spec.flush_queues_at_jump = r.scalar<bool>(root["flush_queues_at_jump"], "flush");
  if (root["interleavings"]) {
    const std::string s = r.text(root["interleavings"], "interleavings");
    if (s == "unconstrained") {
      spec.unconstrained_interleavings = true;
    } else if (s != "da") {
      r.fail(root["interleavings"], "interleavings must be 'da' or 'unconstrained'");
    }
  }

  const YAML::Node pattern = r.required(root, "pattern", "model");
  r.only_keys(pattern, {"arrays", "env", "tasks", "triggers", "actions"}, "pattern");
  if (const auto arrays = pattern["arrays"]) {
    if (!arrays.IsSequence()) r.fail(arrays, "arrays must be a list");
    for (const auto& a : arrays) {
      ArraySpec s;
      s.line.value = a.Mark().line + 1;
      if (a.IsScalar()) {
        s.name = a.as<std::string>();
      } else {
        r.only_keys(a, {"name", "domain", "init"}, "array");
        s.name = r.text(r.required(a, "name", "array"), "name");
        if (a["domain"]) s.domain = r.domain(a["domain"]);
        s.init = r.init_value(a["init"]);
      }
      spec.arrays.push_back(std::move(s));
    }
  }
  if (const auto envs = pattern["env"]) {
    if (!envs.IsSequence()) r.fail(envs, "env must be a list");
    for (const auto& e : envs) {
      r.only_keys(e, {"name", "domain", "init", "update"}, "env variable");
      EnvSpec s;
      s.line.value = e.Mark().line + 1;
      s.name = r.text(r.required(e, "name", "env variable"), "name");
      if (e["domain"]) s.domain = r.domain(e["domain"]);
      s.init = r.init_value(e["init"]);
      s.update = r.strings(e["update"], "update");
      for (const auto& u : s.update) {
        try {
          parse_expr(u);
        } catch (const SyntaxError& ex) {
          r.fail(e["update"], std::string("in env update: ") + ex.what());
        }
      }
      spec.envs.push_back(std::move(s));
    }
  }
  if (const auto tasks = pattern["tasks"]) {
    if (!tasks.IsSequence()) r.fail(tasks, "tasks must be a list");
    for (const auto& t : tasks) {
      r.only_keys(t, {"name", "inputs", "outputs"}, "task");
      TaskSpec s;
      s.line.value = t.Mark().line + 1;
      s.name = r.text(r.required(t, "name", "task"), "name");
      s.inputs = r.strings(t["inputs"], "inputs");
      const auto outs = r.required(t, "outputs", "task");
      if (!outs.IsSequence()) r.fail(outs, "outputs must be a list");
      for (const auto& o : outs) {
        TaskOutputSpec out;
        if (o.IsScalar()) {
          out.name = o.as<std::string>();
        } else {
          r.only_keys(o, {"name", "expr", "depends"}, "task output");
          out.name = r.text(r.required(o, "name", "task output"), "name");
          if (o["expr"]) out.expr = r.text(o["expr"], "expr");
          if (o["depends"]) {
            s.has_implication = true;
            out.depends = r.strings(o["depends"], "depends");
          }
        }
        s.outputs.push_back(std::move(out));
      }
      spec.tasks.push_back(std::move(s));
    }
  }
  if (const auto triggers = pattern["triggers"]) {
    if (!triggers.IsSequence()) r.fail(triggers, "triggers must be a list");
    for (const auto& t : triggers) {
      r.only_keys(t, {"name", "configurations"}, "trigger");
      TriggerSpec s;
      s.line.value = t.Mark().line + 1;
      s.name = r.text(r.required(t, "name", "trigger"), "name");
      const auto confs = r.required(t, "configurations", "trigger");
      if (!confs.IsSequence()) r.fail(confs, "configurations must be a list");
      for (const auto& c : confs) {
        r.only_keys(c, {"name", "faulty", "responsible"}, "fault configuration");
        FaultConfiguration fc;
        fc.name = r.text(r.required(c, "name", "fault configuration"), "name");
        fc.faulty = r.ints(c["faulty"], "faulty");
        fc.responsible = r.scalar<int>(r.required(c, "responsible", "fault configuration"), "responsible");
        s.configurations.push_back(std::move(fc));
      }
      spec.triggers.push_back(std::move(s));
    }
  }
  const auto actions = r.required(pattern, "actions", "pattern");
  if (!actions.IsSequence()) r.fail(actions, "actions must be a list");
  for (const auto& a : actions) spec.actions.push_back(r.action(a));

  if (const auto faults = root["faults"]) {
    r.only_keys(faults, {"ltbf", "locations", "specs"}, "faults");
    if (faults["ltbf"]) spec.faults.ltbf = r.scalar<double>(faults["ltbf"], "ltbf");
    if (const auto locs = faults["locations"]) {
      if (!locs.IsSequence()) r.fail(locs, "locations must be a list");
      for (const auto& l : locs) {
        r.only_keys(l, {"name", "active", "initial", "next"}, "fault location");
        LocationSpec s;
        s.line.value = l.Mark().line + 1;
        s.name = r.text(r.required(l, "name", "fault location"), "name");
        s.active = r.strings(l["active"], "active");
        if (l["initial"]) s.initial = r.scalar<bool>(l["initial"], "initial");
        s.next = r.strings(l["next"], "next");
        spec.faults.locations.push_back(std::move(s));
      }
    }
    if (const auto specs = faults["specs"]) {
      if (!specs.IsSequence()) r.fail(specs, "specs must be a list");
      for (const auto& f : specs) {
        r.only_keys(f, {"name", "act", "type", "machine", "position", "action", "k", "k_prime", "psi"}, "fault");
        FaultSpecText s;
        s.line.value = f.Mark().line + 1;
        s.name = r.text(r.required(f, "name", "fault"), "name");
        s.act = r.text(r.required(f, "act", "fault"), "act");
        s.type = r.text(r.required(f, "type", "fault"), "type");
        if (!parse_fault_type(s.type)) r.fail(f["type"], "unknown fault type '" + s.type + "'");
        s.machine = r.scalar<int>(r.required(f, "machine", "fault"), "machine");
        if (f["position"]) s.position = r.scalar<int>(f["position"], "position");
        if (f["action"]) s.action = r.text(f["action"], "action");
        if ((s.position == 0) == s.action.empty()) {
          r.fail(f, "a fault names exactly one of 'position' and 'action'");
        }
        if (f["k"]) s.k = r.scalar<int>(f["k"], "k");
        if (f["k_prime"]) s.k_prime = r.scalar<int>(f["k_prime"], "k_prime");
        if (f["psi"]) s.psi = r.text(f["psi"], "psi");
        spec.faults.specs.push_back(std::move(s));
      }
    }
  }

  if (const auto props = root["properties"]) {
    auto add = [&](const YAML::Node& key, const YAML::Node& value) {
      PropertySpec p;
      p.line.value = key.Mark().line + 1;
      p.name = r.text(key, "property name");
      p.formula = r.text(value, "formula");
      try {
        parse_formula(p.formula);
      } catch (const SyntaxError& e) {
        r.fail(value, "property " + p.name + ": " + e.what());
      }
      spec.properties.push_back(std::move(p));
    };
    if (props.IsMap()) {
      for (const auto& kv : props) add(kv.first, kv.second);
    } else if (props.IsSequence()) {
      for (const auto& p : props) {
        r.only_keys(p, {"name", "formula"}, "property");
        add(r.required(p, "name", "property"), r.required(p, "formula", "property"));
      }
    } else if (!props.IsNull()) {
      r.fail(props, "properties must be a mapping or a list");
    }
  }

  if (const auto sched = root["schedule"]) {
    r.only_keys(sched, {"tau_net", "machines"}, "schedule");
    ScheduleSpec s;
    s.line.value = sched.Mark().line + 1;
    s.tau_net = r.scalar<double>(r.required(sched, "tau_net", "schedule"), "tau_net");
    const auto machines = r.required(sched, "machines", "schedule");
    if (!machines.IsSequence()) r.fail(machines, "machines must be a list");
    for (const auto& row : machines) {
      if (!row.IsSequence()) r.fail(row, "each machine lists [start, end] pairs");
      std::vector<std::pair<double, double>> out;
      for (const auto& p : row) {
        if (!p.IsSequence() || p.size() != 2) r.fail(p, "an action slot is [start, end]");
        out.emplace_back(r.scalar<double>(p[0], "start"), r.scalar<double>(p[1], "end"));
      }
      s.machines.push_back(std::move(out));
    }
    spec.schedule = std::move(s);
  }
  return spec;
}

ModelSpec load_model_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError(path + ": cannot open model file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model_spec(buf.str(), path);
}

// ---------------------------------------------------------------------------
// Emitter

namespace {

void emit_domain(YAML::Emitter& out, const DomainSpec& d) {
  if (d.fault_abstraction) {
    out << "fault-abstraction";
  } else {
    out << YAML::Flow << YAML::BeginSeq << d.lo << d.hi << YAML::EndSeq;
  }
}

void emit_strings(YAML::Emitter& out, const std::vector<std::string>& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& s : v) out << s;
  out << YAML::EndSeq;
}

}  // namespace

std::string emit_model_spec(const ModelSpec& spec) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  if (!spec.name.empty()) out << YAML::Key << "name" << YAML::Value << spec.name;
  out << YAML::Key << "redundancy" << YAML::Value << spec.n;
  out << YAML::Key << "period" << YAML::Value << spec.period;
  out << YAML::Key << "domain" << YAML::Value << (spec.interval_mode ? "intervals" : "fault-abstraction");
  if (spec.flush_queues_at_jump) out << YAML::Key << "flush_queues_at_jump" << YAML::Value << true;
  if (spec.unconstrained_interleavings) out << YAML::Key << "interleavings" << YAML::Value << "unconstrained";

  out << YAML::Key << "pattern" << YAML::Value << YAML::BeginMap;
  if (!spec.arrays.empty()) {
    out << YAML::Key << "arrays" << YAML::Value << YAML::BeginSeq;
    for (const auto& a : spec.arrays) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << a.name;
      if (a.domain) {
        out << YAML::Key << "domain" << YAML::Value;
        emit_domain(out, *a.domain);
      }
      out << YAML::Key << "init" << YAML::Value << a.init << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  if (!spec.envs.empty()) {
    out << YAML::Key << "env" << YAML::Value << YAML::BeginSeq;
    for (const auto& e : spec.envs) {
      out << YAML::BeginMap << YAML::Key << "name" << YAML::Value << e.name;
      if (e.domain) {
        out << YAML::Key << "domain" << YAML::Value;
        emit_domain(out, *e.domain);
      }
      out << YAML::Key << "init" << YAML::Value << e.init;
      if (!e.update.empty()) {
        out << YAML::Key << "update" << YAML::Value;
        emit_strings(out, e.update);
      }
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  if (!spec.tasks.empty()) {
    out << YAML::Key << "tasks" << YAML::Value << YAML::BeginSeq;
    for (const auto& t : spec.tasks) {
      out << YAML::BeginMap << YAML::Key << "name" << YAML::Value << t.name;
      out << YAML::Key << "inputs" << YAML::Value;
      emit_strings(out, t.inputs);
      out << YAML::Key << "outputs" << YAML::Value << YAML::BeginSeq;
      for (const auto& o : t.outputs) {
        out << YAML::BeginMap << YAML::Key << "name" << YAML::Value << o.name;
        if (!o.expr.empty()) out << YAML::Key << "expr" << YAML::Value << o.expr;
        if (t.has_implication) {
          out << YAML::Key << "depends" << YAML::Value;
          emit_strings(out, o.depends);
        }
        out << YAML::EndMap;
      }
      out << YAML::EndSeq << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  if (!spec.triggers.empty()) {
    out << YAML::Key << "triggers" << YAML::Value << YAML::BeginSeq;
    for (const auto& t : spec.triggers) {
      out << YAML::BeginMap << YAML::Key << "name" << YAML::Value << t.name;
      out << YAML::Key << "configurations" << YAML::Value << YAML::BeginSeq;
      for (const auto& c : t.configurations) {
        out << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << c.name;
        out << YAML::Key << "faulty" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (int f : c.faulty) out << f;
        out << YAML::EndSeq;
        out << YAML::Key << "responsible" << YAML::Value << c.responsible << YAML::EndMap;
      }
      out << YAML::EndSeq << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::Key << "actions" << YAML::Value << YAML::BeginSeq;
  for (const auto& a : spec.actions) {
    const bool plain_macro = a.kind == ActionSpec::Kind::kMacro && a.macro != "RedundancyTrigger";
    if (a.kind == ActionSpec::Kind::kMacro && !plain_macro) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "macro" << YAML::Value << a.macro;
      out << YAML::Key << "table" << YAML::Value << a.table;
      out << YAML::Key << "target" << YAML::Value << a.target;
      if (!a.test.empty()) out << YAML::Key << "test" << YAML::Value << a.test;
      if (!a.statuses.empty()) {
        out << YAML::Key << "statuses" << YAML::Value;
        emit_strings(out, a.statuses);
      }
      if (!a.label.empty()) out << YAML::Key << "label" << YAML::Value << a.label;
      out << YAML::EndMap;
    } else if (!a.label.empty()) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "do" << YAML::Value << action_text(a);
      out << YAML::Key << "label" << YAML::Value << a.label << YAML::EndMap;
    } else {
      out << action_text(a);
    }
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;

  if (!spec.faults.locations.empty() || !spec.faults.specs.empty() || spec.faults.ltbf) {
    out << YAML::Key << "faults" << YAML::Value << YAML::BeginMap;
    if (spec.faults.ltbf) out << YAML::Key << "ltbf" << YAML::Value << *spec.faults.ltbf;
    out << YAML::Key << "locations" << YAML::Value << YAML::BeginSeq;
    for (const auto& l : spec.faults.locations) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << l.name;
      out << YAML::Key << "active" << YAML::Value;
      emit_strings(out, l.active);
      if (l.initial) out << YAML::Key << "initial" << YAML::Value << true;
      if (!l.next.empty()) {
        out << YAML::Key << "next" << YAML::Value;
        emit_strings(out, l.next);
      }
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "specs" << YAML::Value << YAML::BeginSeq;
    for (const auto& f : spec.faults.specs) {
      out << YAML::Flow << YAML::BeginMap;
      out << YAML::Key << "name" << YAML::Value << f.name;
      out << YAML::Key << "act" << YAML::Value << f.act;
      out << YAML::Key << "type" << YAML::Value << f.type;
      out << YAML::Key << "machine" << YAML::Value << f.machine;
      if (f.position) out << YAML::Key << "position" << YAML::Value << f.position;
      if (!f.action.empty()) out << YAML::Key << "action" << YAML::Value << f.action;
      if (f.k) out << YAML::Key << "k" << YAML::Value << f.k;
      if (f.k_prime) out << YAML::Key << "k_prime" << YAML::Value << f.k_prime;
      if (!f.psi.empty()) out << YAML::Key << "psi" << YAML::Value << f.psi;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }

  if (!spec.properties.empty()) {
    out << YAML::Key << "properties" << YAML::Value << YAML::BeginMap;
    for (const auto& p : spec.properties) out << YAML::Key << p.name << YAML::Value << p.formula;
    out << YAML::EndMap;
  }
  if (spec.schedule) {
    out << YAML::Key << "schedule" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "tau_net" << YAML::Value << spec.schedule->tau_net;
    out << YAML::Key << "machines" << YAML::Value << YAML::BeginSeq;
    for (const auto& row : spec.schedule->machines) {
      out << YAML::Flow << YAML::BeginSeq;
      for (const auto& [s, e] : row) out << YAML::Flow << YAML::BeginSeq << s << e << YAML::EndSeq;
      out << YAML::EndSeq;
    }
    out << YAML::EndSeq << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

// ---------------------------------------------------------------------------
// Building

namespace {

Domain to_domain(const DomainSpec& d) {
  return d.fault_abstraction ? Domain::fault_abstraction() : Domain::bounded(d.lo, d.hi);
}

}  // namespace

Model build_model(const ModelSpec& spec) {
  Reader r(spec.source);
  Model model;
  model.spec = spec;
  GCASystem& sys = model.system;
  sys.pattern.n = spec.n;
  sys.period = spec.period;
  sys.mode = spec.interval_mode ? AnalysisMode::kIntervals : AnalysisMode::kFaultAbstraction;
  sys.flush_queues_at_jump = spec.flush_queues_at_jump;

  for (const auto& a : spec.arrays) {
    if (!a.domain && spec.interval_mode) r.fail_line(a.line.value, "array " + a.name + " needs a domain");
    const Domain d = a.domain ? to_domain(*a.domain) : Domain::fault_abstraction();
    if (!d.contains(a.init)) r.fail_line(a.line.value, "initial value of " + a.name + " outside its domain");
    sys.pattern.arrays.push_back(ArrayDecl{a.name, d, a.init});
  }
  for (const auto& e : spec.envs) {
    if (!e.domain && spec.interval_mode) r.fail_line(e.line.value, "env variable " + e.name + " needs a domain");
    const Domain d = e.domain ? to_domain(*e.domain) : Domain::fault_abstraction();
    if (!d.contains(e.init)) r.fail_line(e.line.value, "initial value of " + e.name + " outside its domain");
    EnvDecl decl{e.name, d, e.init, {}};
    for (const auto& u : e.update) decl.update.push_back(parse_expr(u));
    sys.pattern.envs.push_back(std::move(decl));
  }
  for (const auto& t : spec.tasks) {
    TaskDecl decl;
    decl.name = t.name;
    decl.params = t.inputs;
    if (t.has_implication) decl.implication = ImplicationGraph{};
    for (const auto& o : t.outputs) {
      TaskOutput out{o.name, {}};
      if (!o.expr.empty()) {
        try {
          out.expr = parse_expr(o.expr);
        } catch (const SyntaxError& e) {
          r.fail_line(t.line.value, "task " + t.name + "." + o.name + ": " + e.what());
        }
      }
      decl.outputs.push_back(std::move(out));
      if (t.has_implication) {
        std::vector<int> deps;
        for (const auto& d : o.depends) {
          auto it = std::find(t.inputs.begin(), t.inputs.end(), d);
          if (it == t.inputs.end()) {
            r.fail_line(t.line.value, "task " + t.name + ": output " + o.name + " depends on unknown input " + d);
          }
          deps.push_back(static_cast<int>(it - t.inputs.begin()));
        }
        decl.implication->depends.push_back(std::move(deps));
      }
    }
    sys.tasks.push_back(std::move(decl));
  }
  for (const auto& t : spec.triggers) {
    sys.triggers.push_back(TriggerTable{t.name, spec.n, t.configurations});
  }

  // Expand the action list.
  std::vector<int> lines;
  auto declare = [&](const ArrayDecl& a) {
    if (sys.pattern.array_index(a.name) < 0) sys.pattern.arrays.push_back(a);
  };
  for (const auto& a : spec.actions) {
    const int line = a.line.value;
    try {
      MacroExpansion ex;
      switch (a.kind) {
        case ActionSpec::Kind::kAssign:
          ex.actions.push_back(ActionTemplate::assign(a.array, parse_expr(a.expr), a.label));
          break;
        case ActionSpec::Kind::kSend:
          ex.actions.push_back(ActionTemplate::send(a.array, a.label));
          break;
        case ActionSpec::Kind::kReceive:
          ex.actions.push_back(ActionTemplate::receive(a.array, a.label));
          break;
        case ActionSpec::Kind::kMacro:
          if (a.macro == "TestPortAbsolute") {
            ex = expand_test_port_absolute(a.port, spec.n);
          } else if (a.macro == "TestLiveness") {
            ex = expand_test_liveness(a.port, spec.n);
          } else if (a.macro == "MedianUnify") {
            ex = expand_median_unify(a.port, spec.n);
          } else {
            std::vector<std::string> statuses = a.statuses;
            if (!a.test.empty()) {
              const bool tpa = sys.pattern.array_index(tpa_status_array(a.test, 1)) >= 0;
              for (int m = 1; m <= spec.n; ++m) {
                statuses.push_back(tpa ? tpa_status_array(a.test, m) : liveness_status_array(a.test, m));
              }
            }
            ex = expand_redundancy_trigger(a.table, a.target, statuses, spec.n);
          }
          if (!a.label.empty()) {
            for (auto& t : ex.actions) t.label = a.label;
          }
          break;
      }
      for (const auto& d : ex.arrays) declare(d);
      for (auto& t : ex.actions) {
        for (const std::string& arr : {t.array}) {
          if (sys.pattern.array_index(arr) < 0) r.fail_line(line, "unknown array '" + arr + "'");
        }
        sys.pattern.actions.push_back(std::move(t));
        lines.push_back(line);
      }
    } catch (const SyntaxError& e) {
      r.fail_line(line, e.what());
    }
  }
  // Bind action expressions one by one so errors carry the line.
  for (std::size_t j = 0; j < sys.pattern.actions.size(); ++j) {
    const auto& t = sys.pattern.actions[j];
    if (t.kind != ActionKind::kAssign) continue;
    try {
      bind_expr(t.expr, sys);
      std::vector<std::vector<ActionTemplate>> probe = instantiate(Pattern{{}, {}, {t}, spec.n}, spec.n);
      (void)probe;
    } catch (const ModelError& e) {
      r.fail_line(lines[j], e.what());
    }
  }
  try {
    sys.finalize();
  } catch (const ModelError& e) {
    throw ModelError(spec.source + ": " + e.what());
  }

  // Fault automaton.
  FaultAutomaton& fa = model.automaton;
  if (spec.faults.locations.empty()) {
    fa = FaultAutomaton::fault_free();
  } else {
    for (const auto& l : spec.faults.locations) {
      if (fa.location_index(l.name) >= 0) r.fail_line(l.line.value, "duplicate fault location " + l.name);
      fa.locations.push_back(FaultLocation{l.name, l.active});
    }
    const int count = static_cast<int>(fa.locations.size());
    for (const auto& l : spec.faults.locations) {
      std::vector<int> next;
      if (l.next.empty()) {
        for (int i = 0; i < count; ++i) next.push_back(i);
      } else {
        for (const auto& s : l.next) {
          const int i = fa.location_index(s);
          if (i < 0) r.fail_line(l.line.value, "unknown fault location '" + s + "'");
          next.push_back(i);
        }
      }
      fa.edges.push_back(std::move(next));
    }
    for (int i = 0; i < count; ++i) {
      if (spec.faults.locations[i].initial) fa.initial.push_back(i);
    }
    if (fa.initial.empty()) {
      for (int i = 0; i < count; ++i) fa.initial.push_back(i);
    }
  }
  fa.ltbf = spec.faults.ltbf;
  for (const auto& f : spec.faults.specs) {
    FaultSpec s;
    s.name = f.name;
    s.act = f.act;
    s.type = *parse_fault_type(f.type);
    s.machine = f.machine;
    s.position = f.position;
    if (!f.action.empty()) {
      int found = 0;
      for (std::size_t j = 0; j < sys.pattern.actions.size(); ++j) {
        if (sys.pattern.actions[j].label != f.action) continue;
        if (found) r.fail_line(f.line.value, "action label '" + f.action + "' is not unique");
        found = static_cast<int>(j) + 1;
      }
      if (!found) r.fail_line(f.line.value, "no action labelled '" + f.action + "'");
      s.position = found;
    }
    s.k = f.k;
    s.k_prime = f.k_prime;
    if (!f.psi.empty()) {
      try {
        s.psi = parse_expr(f.psi);
      } catch (const SyntaxError& e) {
        r.fail_line(f.line.value, std::string("psi: ") + e.what());
      }
    }
    fa.faults.push_back(std::move(s));
  }
  try {
    validate_faults(fa, sys);
    model.gated = gate_automaton(fa, spec.period);
  } catch (const ModelError& e) {
    throw ModelError(spec.source + ": " + e.what());
  }

  for (const auto& p : spec.properties) {
    try {
      model.properties.push_back(NamedProperty{p.name, p.formula, parse_formula(p.formula)});
      compile_formula(model.properties.back().formula, model.system);
    } catch (const Error& e) {
      r.fail_line(p.line.value, "property " + p.name + ": " + e.what());
    }
  }

  if (spec.schedule) {
    TimedSchedule s;
    s.period = spec.period;
    s.tau_net = spec.schedule->tau_net;
    for (const auto& row : spec.schedule->machines) {
      std::vector<TimedAction> acts;
      for (const auto& [a, b] : row) acts.push_back(TimedAction{a, b});
      s.actions.push_back(std::move(acts));
    }
    if (s.actions.size() == 1 && spec.n > 1) s.actions.assign(spec.n, s.actions.front());
    try {
      validate_schedule(s, model.system.pattern);
    } catch (const ModelError& e) {
      r.fail_line(spec.schedule->line.value, e.what());
    }
    model.schedule = std::move(s);
  }
  return model;
}

Model load_model(const std::string& path) { return build_model(load_model_spec(path)); }

}  // namespace gcaverify
