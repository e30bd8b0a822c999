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

#include <doctest.h>

#include <functional>
#include <random>

#include "gcaverify/errors.hpp"
#include "gcaverify/logic.hpp"
#include "random_models.hpp"

using namespace gcaverify;

namespace {

GCASystem two_arrays(AnalysisMode mode = AnalysisMode::kIntervals) {
  GCASystem s;
  s.pattern.n = 2;
  s.mode = mode;
  const Domain d = mode == AnalysisMode::kIntervals ? Domain::bounded(0, 3) : Domain::fault_abstraction();
  s.pattern.arrays = {{"a", d, 0}, {"b", d, 0}};
  s.pattern.envs = {{"e", d, 0, {}}};
  s.pattern.actions = {ActionTemplate::send("a"), ActionTemplate::receive("a")};
  s.finalize();
  return s;
}

// Direct semantics on the lasso: the successor of the last state is the loop
// start, and every reachable suffix is visited within 2L successor steps.
bool oracle(const Formula& f, const std::function<bool(const Formula&, std::size_t)>& atom, std::size_t i,
            std::size_t size, std::size_t loop) {
  auto succ = [&](std::size_t p) { return p + 1 < size ? p + 1 : loop; };
  auto at = [&](const Formula& g, std::size_t p) { return oracle(g, atom, p, size, loop); };
  const std::size_t horizon = 2 * size;
  switch (f.kind) {
    case FormulaKind::kTrue: return true;
    case FormulaKind::kFalse: return false;
    case FormulaKind::kAtom: return atom(f, i);
    case FormulaKind::kNot: return !at(f.sub[0], i);
    case FormulaKind::kAnd: return at(f.sub[0], i) && at(f.sub[1], i);
    case FormulaKind::kOr: return at(f.sub[0], i) || at(f.sub[1], i);
    case FormulaKind::kImplies: return !at(f.sub[0], i) || at(f.sub[1], i);
    case FormulaKind::kIff: return at(f.sub[0], i) == at(f.sub[1], i);
    case FormulaKind::kNext: return at(f.sub[0], succ(i));
    case FormulaKind::kGlobally:
      for (std::size_t p = i, s = 0; s < horizon; ++s, p = succ(p)) {
        if (!at(f.sub[0], p)) return false;
      }
      return true;
    case FormulaKind::kFinally:
      for (std::size_t p = i, s = 0; s < horizon; ++s, p = succ(p)) {
        if (at(f.sub[0], p)) return true;
      }
      return false;
    case FormulaKind::kUntil:
      for (std::size_t p = i, s = 0; s < horizon; ++s, p = succ(p)) {
        if (at(f.sub[1], p)) return true;
        if (!at(f.sub[0], p)) return false;
      }
      return false;
  }
  return false;
}

}  // namespace

TEST_CASE("formula syntax and precedence") {
  auto same = [](const char* a, const char* b) { CHECK(parse_formula(a) == parse_formula(b)); };
  same("!m1.a = 1 & m1.b = 2", "(!(m1.a = 1)) & (m1.b = 2)");
  same("m1.a = 1 | m1.b = 2 & m1.a = 3", "(m1.a = 1) | ((m1.b = 2) & (m1.a = 3))");
  same("m1.a = 1 -> m1.b = 2 -> m1.a = 3", "(m1.a = 1) -> ((m1.b = 2) -> (m1.a = 3))");
  same("m1.a = 1 <-> m1.b = 2 | m1.a = 3", "(m1.a = 1) <-> ((m1.b = 2) | (m1.a = 3))");
  same("m1.a = 1 U m1.b = 2 & m1.a = 3", "((m1.a = 1) U (m1.b = 2)) & (m1.a = 3)");
  same("AG(m1.a = 1)", "G(m1.a = 1)");
  same("G F m1.a = 1", "G(F(m1.a = 1))");
  same("m1.a + 1 <= m1.b[2] * 2", "(m1.a + 1) <= (m1.b[2] * 2)");
  CHECK(parse_formula("true").kind == FormulaKind::kTrue);
  CHECK_THROWS_AS(parse_formula("G(m1.a = 1"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("m1.a"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("m1.a = 1 &"), SyntaxError);

  std::mt19937_64 rng(1);
  const GCASystem s = two_arrays();
  for (int i = 0; i < 200; ++i) {
    const Formula f = parse_formula(gcaverify::testing::random_formula(rng, s, 1, 3));
    CHECK(parse_formula(to_string(f)) == f);
  }
}

TEST_CASE("admissibility") {
  const GCASystem s = two_arrays();
  CHECK_NOTHROW(compile_formula(parse_formula("G(m1.a = m1.b[2])"), s));
  CHECK_NOTHROW(compile_formula(parse_formula("G(m2.next = 0 | m2.a = 1)"), s));
  CHECK_THROWS_AS(compile_formula(parse_formula("X(m1.a = 1)"), s), AdmissibilityError);
  CHECK_THROWS_AS(compile_formula(parse_formula("G(m1.a = m2.a)"), s), AdmissibilityError);
  CHECK_THROWS_AS(compile_formula(parse_formula("G(m1.e = 1)"), s), AdmissibilityError);
  CHECK_THROWS_AS(compile_formula(parse_formula("G(m1.zz = 1)"), s), ModelError);
  CHECK_THROWS_AS(compile_formula(parse_formula("G(m3.a = 1)"), s), ModelError);
  CHECK(compile_formula(parse_formula("G(m1.a <= 2)"), s).extended);
  CHECK_FALSE(compile_formula(parse_formula("G(m1.a = 2)"), s).extended);
  const GCASystem fa = two_arrays(AnalysisMode::kFaultAbstraction);
  CHECK_THROWS_AS(compile_formula(parse_formula("G(m1.a < 1)"), fa), AdmissibilityError);
}

TEST_CASE("state evaluation") {
  const GCASystem s = two_arrays();
  // values: a = [1, 2], b = [3, 0]; cursor 2.
  const ProjectedState st{{1, 2, 3, 0}, 2};
  auto holds = [&](const char* text) { return eval_state(compile_formula(parse_formula(text), s), st); };
  CHECK(holds("m1.a + m1.a[2] = m1.b"));
  CHECK(holds("m1.next = 2"));
  CHECK(holds("m1.a < m1.a[2]"));
  CHECK_FALSE(holds("m1.b <= m1.a"));
  CHECK_FALSE(holds("m1.a / m1.b[2] = 0"));
  CHECK(holds("!(m1.a / m1.b[2] = 0)"));
  CHECK(holds("m2.b = 0 & m2.a[1] = 1"));
}

TEST_CASE("lasso evaluation against direct semantics") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto gen = gcaverify::testing::random_model(rng);
    const GCASystem& s = gen.system;
    const std::size_t width = s.array_count() * static_cast<std::size_t>(s.n());
    for (int f = 0; f < 10; ++f) {
      const std::string text = gcaverify::testing::random_formula(rng, s, 1, 3);
      const CompiledFormula c = compile_formula(parse_formula(text), s);
      const std::size_t size = 1 + rng() % 6;
      std::vector<ProjectedState> states(size);
      for (auto& st : states) {
        st.values.resize(width);
        for (auto& v : st.values) v = static_cast<Value>(rng() % 3);
        st.next = static_cast<int>(rng() % (s.k() + 1));
      }
      const std::size_t loop = rng() % size;
      // Atoms are judged by the state evaluator on an atom-only formula.
      auto atom = [&](const Formula& a, std::size_t i) {
        CompiledFormula single = c;
        single.formula = a;
        return eval_state(single, states[i]);
      };
      CAPTURE(text);
      CHECK(eval_lasso(c, states, loop) == oracle(c.formula, atom, 0, size, loop));
      ++checked;
    }
  }
  CHECK(checked == 600);
}

TEST_CASE("finite traces repeat their last state") {
  const GCASystem s = two_arrays();
  const CompiledFormula c = compile_formula(parse_formula("F(G(m1.a = 2))"), s);
  const std::vector<ProjectedState> states{{{0, 0, 0, 0}, 1}, {{2, 0, 0, 0}, 2}};
  CHECK(eval_lasso(c, states, 1));
  CHECK_FALSE(eval_lasso(c, states, 0));
}
