#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "gpal/checker.hpp"
#include "gpal/language.hpp"
#include "gpal/parser.hpp"
#include "gpal/random.hpp"
#include "gpal/reduction.hpp"

using namespace gpal;

namespace {

Measure c(const char* text) { return complexity(parse(text)); }

std::vector<std::string> rules(const std::vector<ReductionStep>& steps) {
  std::vector<std::string> out;
  for (const auto& s : steps) out.push_back(s.rule);
  return out;
}

}  // namespace

TEST(Complexity, Leaves) {
  EXPECT_EQ(c("p"), 1);
  EXPECT_EQ(c("bot"), 1);
  EXPECT_EQ(c("#1/2"), 1);
  EXPECT_EQ(c("p -> q"), 2);
  EXPECT_EQ(c("K{a} (p & D q)"), 4);
}

TEST(Complexity, ValueFormulasAreMeasuredDesugared) {
  EXPECT_EQ(c("V(p)=1/2"), 4);
  EXPECT_EQ(c("V(p)>1/2"), 4);
  EXPECT_EQ(c("[V(p)=1/2]p"), 8);
  EXPECT_EQ(c("[V(p)=1/2](p -> q)"), 16);
  // Nested announcements multiply.
  EXPECT_EQ(c("[V(p)=1/2][V(p)=1/2]p"), 64);
}

TEST(Complexity, BodiesAreAtLeastFour) {
  FormulaGenOptions o;
  o.max_depth = 4;
  FormulaGenerator gen(o, 17);
  for (int i = 0; i < 300; ++i) {
    const Formula b = gen.body();
    ASSERT_TRUE(is_announcement_body(b)) << print(b);
    EXPECT_GE(complexity(b), 4) << print(b);
  }
}

TEST(Translate, Clauses) {
  const Formula lambda = parse("V(p)>1/2");
  const Formula tl = translate(lambda);
  EXPECT_EQ(tl, parse("~D(p -> #1/2)"));
  EXPECT_EQ(translate(announce(lambda, atom("q"))), implies(tl, atom("q")));
  EXPECT_EQ(translate(parse("[V(p)>1/2]bot")), implies(tl, bot()));
  EXPECT_EQ(translate(parse("[V(p)>1/2]#1/3")), implies(tl, constant(TruthValue::of(1, 3))));
  EXPECT_EQ(translate(parse("[V(p)>1/2]K{a} q")), implies(tl, know("a", implies(tl, atom("q")))));
  EXPECT_EQ(translate(parse("[V(p)>1/2]D q")), implies(tl, delta(implies(tl, atom("q")))));
  EXPECT_EQ(translate(parse("[V(p)>1/2](q & r)")),
            land(implies(tl, atom("q")), implies(tl, atom("r"))));
  EXPECT_EQ(translate(parse("[V(p)>1/2](q -> r)")),
            implies(implies(tl, atom("q")), implies(tl, atom("r"))));
}

TEST(Translate, ComposesAnnouncements) {
  const Formula f = parse("[V(p)>1/2][V(q)=1]r");
  EXPECT_EQ(translate(f), translate(parse("[V(p)>1/2 & [V(p)>1/2]V(q)=1]r")));
}

TEST(Translate, IdentityWithoutAnnouncements) {
  for (const char* text : {"p", "K{a}(p -> D #1/3)", "~~p & bot"}) {
    const Formula f = parse(text);
    EXPECT_EQ(translate(f), f);
    EXPECT_TRUE(translate_trace(f).empty());
  }
}

TEST(Translate, TraceOfSimpleAnnouncement) {
  const Formula f = parse("[V(p)>1/2]q");
  const auto steps = translate_trace(f);
  EXPECT_EQ(rules(steps), (std::vector<std::string>{"PA2", "VGT"}));
  EXPECT_EQ(steps.front().before, f);
  EXPECT_EQ(steps.front().after, parse("V(p)>1/2 -> q"));
  for (const auto& s : steps) EXPECT_TRUE(s.measure_ok()) << s.rule;
  EXPECT_EQ(replay_trace(f, steps), translate(f));
}

TEST(Translate, RandomFormulas) {
  FormulaGenOptions o;
  o.max_depth = 4;
  FormulaGenerator gen(o, 99);
  ModelSpaceParams params;
  params.max_worlds = 2;
  params.chain = parse_chain("0,1/3,1/2,1");
  params.atoms = {"p", "q"};
  for (int i = 0; i < 150; ++i) {
    const Formula f = gen.formula();
    const Formula t = translate(f);
    ASSERT_TRUE(in_language(t, LanguageTag::KDeltaQ)) << print(f);
    EXPECT_EQ(translate(t), t);
    const auto steps = translate_trace(f);
    for (const auto& s : steps) ASSERT_TRUE(s.measure_ok()) << print(f) << " " << s.rule;
    EXPECT_EQ(replay_trace(f, steps), t) << print(f);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const KripkeModel m = random_model(params, 1000 * i + seed);
      ASSERT_EQ(evaluate_all(m, f), evaluate_all(m, t)) << print(f);
    }
  }
}

TEST(Translate, ReplayRejectsForeignSteps) {
  const Formula f = parse("[V(p)>1/2]q");
  auto steps = translate_trace(parse("[V(p)=1]q"));
  EXPECT_FALSE(replay_trace(f, steps).has_value());
}

TEST(Measure, PropertiesHold) {
  for (const char* text :
       {"p -> q", "[V(p)=1/2]K{a} q", "[V(p)>0][V(q)=1](p & D q)", "[V(p)>0](#1/2 -> bot)"}) {
    const MeasureReport r = check_measure_properties(parse(text));
    EXPECT_TRUE(r.all_hold()) << text;
    EXPECT_FALSE(r.checks.empty());
  }
  const MeasureReport r = check_measure_properties(parse("p -> q"));
  bool saw = false;
  for (const auto& chk : r.checks) {
    if (chk.property == "i" && chk.subject == parse("p")) {
      saw = saw || (chk.lhs == 2 && chk.rhs == 1);
    }
  }
  EXPECT_TRUE(saw);
}

TEST(Measure, TraceFormatting) {
  const std::string out = format_trace(translate_trace(parse("[V(p)>1/2]q")));
  EXPECT_EQ(out.substr(0, 4), "PA2\t");
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 2);
}
