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

#include "gcaverify/checker.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <thread>
#include <unordered_map>

#include "gcaverify/errors.hpp"
#include "gcaverify/semantics.hpp"
#include "gcaverify/traces.hpp"

namespace gcaverify {

std::size_t StateGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& e : edges) total += e.size();
  return total;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kHolds: return "holds";
    case Verdict::kViolated: return "violated";
    case Verdict::kBounded: return "bounded";
  }
  return "?";
}

namespace {

struct Successor {
  SystemConfig config;
  int location;
  StepLabel label;
};

std::vector<Successor> successors(const GCASystem& system, const FaultAutomaton& automaton,
                                  const GraphNode& node) {
  std::vector<Successor> out;
  if (node.config.all_done()) {
    std::vector<int> next = automaton.edges.at(node.location);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    const auto jumps = global_jump(system, node.config);
    for (int l : next) {
      for (const auto& j : jumps) {
        StepLabel label;
        label.kind = StepKind::kJump;
        label.location = l;
        label.env_choice = j.choice;
        out.push_back(Successor{j.config, l, std::move(label)});
      }
    }
    return out;
  }
  for (auto& s : composite_step(system, automaton, node.location, node.config)) {
    out.push_back(Successor{std::move(s.config), node.location, std::move(s.label)});
  }
  return out;
}

std::string node_key(const SystemConfig& config, int location) {
  std::string key = canonical_key(config);
  key.append(reinterpret_cast<const char*>(&location), sizeof location);
  return key;
}

}  // namespace

StateGraph build_product(const GCASystem& system, const FaultAutomaton& automaton,
                         const BuildOptions& options) {
  StateGraph g;
  std::unordered_map<std::string, int> index;
  auto add = [&](SystemConfig config, int location) -> int {
    config.tick = 0;
    config.micro = 0;
    std::string key = node_key(config, location);
    if (auto it = index.find(key); it != index.end()) return it->second;
    if (g.nodes.size() >= options.node_cap) {
      g.bounded = true;
      return -1;
    }
    const int id = static_cast<int>(g.nodes.size());
    index.emplace(std::move(key), id);
    g.nodes.push_back(GraphNode{std::move(config), location});
    g.edges.emplace_back();
    return id;
  };
  std::vector<int> frontier;
  for (int l : automaton.initial) {
    const std::size_t before = g.nodes.size();
    const int id = add(initial_config(system), l);
    if (id >= 0 && g.nodes.size() > before) {
      g.initial.push_back(id);
      frontier.push_back(id);
    }
  }
  const unsigned threads = std::max(1u, options.threads);
  while (!frontier.empty()) {
    std::vector<std::vector<Successor>> succ(frontier.size());
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) succ[i] = successors(system, automaton, g.nodes[frontier[i]]);
    };
    if (threads == 1 || frontier.size() < 64) {
      work(0, frontier.size());
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (frontier.size() + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t b = t * chunk;
        const std::size_t e = std::min(frontier.size(), b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
      }
      for (auto& th : pool) th.join();
    }
    // Sequential merge in frontier order keeps node ids deterministic.
    std::vector<int> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (auto& s : succ[i]) {
        const std::size_t before = g.nodes.size();
        const int id = add(std::move(s.config), s.location);
        if (id < 0) continue;
        if (g.nodes.size() > before) next.push_back(id);
        g.edges[frontier[i]].push_back(GraphEdge{id, std::move(s.label)});
      }
    }
    frontier = std::move(next);
  }
  return g;
}

Trace path_trace(const StateGraph& graph, const std::vector<int>& nodes, const std::vector<StepLabel>& labels,
                 std::size_t k) {
  Trace t;
  t.initial_location = graph.nodes.at(nodes.front()).location;
  std::uint64_t tick = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0 && labels[i - 1].kind == StepKind::kJump) ++tick;
    SystemConfig c = graph.nodes[nodes[i]].config;
    c.tick = tick;
    std::uint32_t micro = 0;
    for (const auto& m : c.machines) micro += static_cast<std::uint32_t>(m.done() ? k : m.next - 1);
    c.micro = micro;
    t.states.push_back(std::move(c));
  }
  t.labels = labels;
  return t;
}

CheckResult check_invariant(const StateGraph& graph, const CompiledFormula& prop, std::size_t k) {
  if (!prop.formula.is_propositional()) throw Error("invariant check needs a propositional formula");
  CheckResult result;
  const std::size_t count = graph.nodes.size();
  std::vector<int> parent(count, -2);
  std::vector<int> via(count, -1);
  std::deque<int> queue;
  for (int i : graph.initial) {
    if (parent[i] != -2) continue;
    parent[i] = -1;
    queue.push_back(i);
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    ++result.work;
    if (!eval_state(prop, project_state(graph.nodes[u].config, prop.machine))) {
      std::vector<int> path;
      std::vector<StepLabel> labels;
      for (int v = u; v >= 0; v = parent[v]) {
        path.push_back(v);
        if (parent[v] >= 0) labels.push_back(graph.edges[parent[v]][via[v]].label);
      }
      std::reverse(path.begin(), path.end());
      std::reverse(labels.begin(), labels.end());
      result.verdict = Verdict::kViolated;
      result.counterexample = path_trace(graph, path, labels, k);
      return result;
    }
    for (std::size_t e = 0; e < graph.edges[u].size(); ++e) {
      const int v = graph.edges[u][e].target;
      if (parent[v] != -2) continue;
      parent[v] = u;
      via[v] = static_cast<int>(e);
      queue.push_back(v);
    }
  }
  result.verdict = graph.bounded ? Verdict::kBounded : Verdict::kHolds;
  return result;
}

namespace {

// Tableau of ¬φ over the elementary formulas: maximal propositional
// subformulas (fixed by the graph node) and until subformulas (guessed).
class Tableau {
 public:
  enum class Kind { kConst, kProp, kNot, kAnd, kOr, kUntil };
  struct Node {
    Kind kind = Kind::kConst;
    bool value = false;
    int index = 0;  // kProp: proposition, kUntil: until bit
    int a = -1;
    int b = -1;
  };

  explicit Tableau(const Formula& f) { root_ = add({Kind::kNot, false, 0, build(f)}); }

  const std::vector<Formula>& props() const { return props_; }
  std::size_t until_count() const { return untils_.size(); }
  int root() const { return root_; }

  // Values of every tableau node for proposition mask p and until bits u.
  void eval(std::uint64_t p, std::uint32_t u, std::vector<char>& out) const {
    out.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      switch (n.kind) {
        case Kind::kConst: out[i] = n.value; break;
        case Kind::kProp: out[i] = (p >> n.index) & 1; break;
        case Kind::kNot: out[i] = !out[n.a]; break;
        case Kind::kAnd: out[i] = out[n.a] && out[n.b]; break;
        case Kind::kOr: out[i] = out[n.a] || out[n.b]; break;
        case Kind::kUntil: out[i] = (u >> n.index) & 1; break;
      }
    }
  }

  // Local consistency of the guessed until bits.
  bool consistent(const std::vector<char>& v, std::uint32_t u) const {
    for (std::size_t i = 0; i < untils_.size(); ++i) {
      const Node& n = nodes_[untils_[i]];
      const bool bit = (u >> i) & 1;
      if (v[n.b] && !bit) return false;
      if (!v[n.a] && !v[n.b] && bit) return false;
    }
    return true;
  }

  // Bits that must carry over to the successor.
  std::uint32_t pending(const std::vector<char>& v) const {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < untils_.size(); ++i) {
      const Node& n = nodes_[untils_[i]];
      if (v[n.a] && !v[n.b]) mask |= 1u << i;
    }
    return mask;
  }

  // Acceptance set i: the until is false or fulfilled here.
  bool accepting(const std::vector<char>& v, std::uint32_t u, std::size_t i) const {
    return !((u >> i) & 1) || v[nodes_[untils_[i]].b];
  }

 private:
  int add(Node n) {
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }

  int build(const Formula& f) {
    if (f.kind == FormulaKind::kTrue || f.kind == FormulaKind::kFalse) {
      return add({Kind::kConst, f.kind == FormulaKind::kTrue});
    }
    if (f.is_propositional()) {
      props_.push_back(f);
      return add({Kind::kProp, false, static_cast<int>(props_.size()) - 1});
    }
    switch (f.kind) {
      case FormulaKind::kNot: return add({Kind::kNot, false, 0, build(f.sub[0])});
      case FormulaKind::kAnd: return add({Kind::kAnd, false, 0, build(f.sub[0]), build(f.sub[1])});
      case FormulaKind::kOr: return add({Kind::kOr, false, 0, build(f.sub[0]), build(f.sub[1])});
      case FormulaKind::kImplies: {
        const int a = add({Kind::kNot, false, 0, build(f.sub[0])});
        return add({Kind::kOr, false, 0, a, build(f.sub[1])});
      }
      case FormulaKind::kIff: {
        const int a = build(f.sub[0]);
        const int b = build(f.sub[1]);
        const int both = add({Kind::kAnd, false, 0, a, b});
        const int neither =
            add({Kind::kAnd, false, 0, add({Kind::kNot, false, 0, a}), add({Kind::kNot, false, 0, b})});
        return add({Kind::kOr, false, 0, both, neither});
      }
      case FormulaKind::kFinally: return until(add({Kind::kConst, true}), build(f.sub[0]));
      case FormulaKind::kGlobally: {
        const int np = add({Kind::kNot, false, 0, build(f.sub[0])});
        return add({Kind::kNot, false, 0, until(add({Kind::kConst, true}), np)});
      }
      case FormulaKind::kUntil: return until(build(f.sub[0]), build(f.sub[1]));
      default: throw AdmissibilityError("unsupported temporal operator in " + to_string(f));
    }
  }

  int until(int a, int b) {
    untils_.push_back(static_cast<int>(nodes_.size()));
    return add({Kind::kUntil, false, static_cast<int>(untils_.size()) - 1, a, b});
  }

  std::vector<Node> nodes_;
  std::vector<Formula> props_;
  std::vector<int> untils_;
  int root_ = 0;
};

struct ProductEdge {
  int target;
  int graph_edge;
};

}  // namespace

CheckResult check_ltl(const StateGraph& graph, const CompiledFormula& formula, std::size_t k,
                      const LtlOptions& options) {
  const Formula& f = formula.formula;
  if (f.kind == FormulaKind::kGlobally && f.sub[0].is_propositional()) {
    CompiledFormula inner = formula;
    inner.formula = f.sub[0];
    return check_invariant(graph, inner, k);
  }
  CheckResult result;
  if (graph.nodes.empty()) return result;
  const Tableau tab(f);
  if (tab.props().size() > 64 || tab.until_count() > 20) {
    throw AdmissibilityError("formula too large for the tableau: " + to_string(f));
  }
  const std::uint32_t guesses = 1u << tab.until_count();

  std::vector<std::uint64_t> prop_mask(graph.nodes.size(), 0);
  for (std::size_t v = 0; v < graph.nodes.size(); ++v) {
    const ProjectedState ps = project_state(graph.nodes[v].config, formula.machine);
    for (std::size_t i = 0; i < tab.props().size(); ++i) {
      CompiledFormula c = formula;
      c.formula = tab.props()[i];
      if (eval_state(c, ps)) prop_mask[v] |= std::uint64_t{1} << i;
    }
  }

  // Breadth-first construction of the reachable product.
  struct PNode {
    int graph_node;
    std::uint32_t bits;
    int parent;
    int via;  // graph edge index from the parent
  };
  std::vector<PNode> pnodes;
  std::vector<std::vector<ProductEdge>> pedges;
  std::unordered_map<std::uint64_t, int> index;
  std::vector<char> vals;
  auto intern = [&](int v, std::uint32_t bits, int parent, int via) {
    const std::uint64_t key = static_cast<std::uint64_t>(v) * guesses + bits;
    auto [it, fresh] = index.emplace(key, static_cast<int>(pnodes.size()));
    if (fresh) {
      pnodes.push_back({v, bits, parent, via});
      pedges.emplace_back();
    }
    return it->second;
  };
  for (int v : graph.initial) {
    for (std::uint32_t u = 0; u < guesses; ++u) {
      tab.eval(prop_mask[v], u, vals);
      if (tab.consistent(vals, u) && vals[tab.root()]) intern(v, u, -1, -1);
    }
  }
  bool out_of_budget = false;
  for (std::size_t i = 0; i < pnodes.size(); ++i) {
    const int v = pnodes[i].graph_node;
    const std::uint32_t u = pnodes[i].bits;
    tab.eval(prop_mask[v], u, vals);
    const std::uint32_t keep = tab.pending(vals);
    for (std::size_t e = 0; e < graph.edges[v].size(); ++e) {
      const int w = graph.edges[v][e].target;
      for (std::uint32_t nu = 0; nu < guesses; ++nu) {
        if ((nu & keep) != (u & keep)) continue;
        std::vector<char> wv;
        tab.eval(prop_mask[w], nu, wv);
        if (!tab.consistent(wv, nu)) continue;
        const int id = intern(w, nu, static_cast<int>(i), static_cast<int>(e));
        pedges[i].push_back({id, static_cast<int>(e)});
        ++result.work;
      }
    }
    if (++result.work > options.work_budget) {
      out_of_budget = true;
      break;
    }
  }
  if (out_of_budget) {
    result.verdict = Verdict::kBounded;
    return result;
  }

  // Strongly connected components (iterative Tarjan).
  const int count = static_cast<int>(pnodes.size());
  std::vector<int> comp(count, -1), low(count, 0), order(count, -1), stack;
  std::vector<char> on_stack(count, 0);
  int counter = 0;
  int comps = 0;
  for (int s = 0; s < count; ++s) {
    if (order[s] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> call{{s, 0}};
    order[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = 1;
    while (!call.empty()) {
      auto& [u, e] = call.back();
      if (e < pedges[u].size()) {
        const int w = pedges[u][e++].target;
        if (order[w] < 0) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[u] = std::min(low[u], order[w]);
        }
        continue;
      }
      if (low[u] == order[u]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = comps;
        } while (w != u);
        ++comps;
      }
      const int done = u;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }

  // A fair component is non-trivial and meets every acceptance set.
  const std::size_t sets = tab.until_count();
  std::vector<char> nontrivial(comps, 0);
  std::vector<std::vector<char>> meets(comps, std::vector<char>(sets, 0));
  for (int u = 0; u < count; ++u) {
    for (const auto& e : pedges[u]) {
      if (comp[e.target] == comp[u]) nontrivial[comp[u]] = 1;
    }
    tab.eval(prop_mask[pnodes[u].graph_node], pnodes[u].bits, vals);
    for (std::size_t i = 0; i < sets; ++i) {
      if (tab.accepting(vals, pnodes[u].bits, i)) meets[comp[u]][i] = 1;
    }
  }
  auto fair = [&](int c) {
    return nontrivial[c] && std::all_of(meets[c].begin(), meets[c].end(), [](char m) { return m; });
  };
  // Product ids follow discovery order, so the first fair node has the
  // shortest prefix.
  int entry = -1;
  for (int u = 0; u < count && entry < 0; ++u) {
    if (fair(comp[u])) entry = u;
  }
  if (entry < 0) {
    result.verdict = graph.bounded ? Verdict::kBounded : Verdict::kHolds;
    return result;
  }

  // Lasso: prefix to the entry, then a cycle inside the component through
  // every acceptance set and back.
  const int c = comp[entry];
  auto search = [&](int from, const std::function<bool(int)>& goal, bool allow_empty) {
    std::vector<int> parent(count, -2), via(count, -1);
    std::deque<int> q;
    std::vector<std::pair<int, int>> steps;  // (product node, graph edge)
    if (allow_empty && goal(from)) return steps;
    parent[from] = -1;
    q.push_back(from);
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (const auto& e : pedges[u]) {
        if (comp[e.target] != c) continue;
        if (goal(e.target)) {
          steps.emplace_back(e.target, e.graph_edge);
          for (int w = u; parent[w] != -1 && w != from; w = parent[w]) steps.emplace_back(w, via[w]);
          std::reverse(steps.begin(), steps.end());
          return steps;
        }
        if (parent[e.target] != -2) continue;
        parent[e.target] = u;
        via[e.target] = e.graph_edge;
        q.push_back(e.target);
      }
    }
    throw Error("internal: fair component is not strongly connected");
  };

  std::vector<int> prefix;
  for (int u = entry; u >= 0; u = pnodes[u].parent) prefix.push_back(u);
  std::reverse(prefix.begin(), prefix.end());
  std::vector<std::pair<int, int>> cycle;
  int at = entry;
  for (std::size_t i = 0; i < sets; ++i) {
    auto leg = search(
        at,
        [&](int u) {
          tab.eval(prop_mask[pnodes[u].graph_node], pnodes[u].bits, vals);
          return tab.accepting(vals, pnodes[u].bits, i);
        },
        true);
    for (const auto& s : leg) cycle.push_back(s);
    if (!leg.empty()) at = leg.back().first;
  }
  for (const auto& s : search(at, [&](int u) { return u == entry; }, false)) cycle.push_back(s);

  std::vector<int> nodes;
  std::vector<StepLabel> labels;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const PNode& p = pnodes[prefix[i]];
    nodes.push_back(p.graph_node);
    if (i > 0) labels.push_back(graph.edges[pnodes[prefix[i - 1]].graph_node][p.via].label);
  }
  int prev = entry;
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
    nodes.push_back(pnodes[cycle[i].first].graph_node);
    labels.push_back(graph.edges[pnodes[prev].graph_node][cycle[i].second].label);
    prev = cycle[i].first;
  }
  Trace tr = path_trace(graph, nodes, labels, k);
  tr.loop_start = prefix.size() - 1;
  tr.loop_label = graph.edges[pnodes[prev].graph_node][cycle.back().second].label;
  result.verdict = Verdict::kViolated;
  result.counterexample = std::move(tr);
  return result;
}

}  // namespace gcaverify
