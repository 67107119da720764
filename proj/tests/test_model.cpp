#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "gpal/checker.hpp"
#include "gpal/model.hpp"
#include "gpal/model_io.hpp"
#include "gpal/parser.hpp"

using namespace gpal;

namespace {

TruthValue v(const char* s) { return TruthValue::parse(s); }

KripkeModel data_model(const std::string& name) {
  return load_model(std::string(GPAL_DATA_DIR) + "/models/" + name);
}

TruthValue eval(const KripkeModel& m, const char* world, const char* text) {
  return evaluate(m, world, parse(text));
}

KripkeModel one_world(const char* p) {
  KripkeModel m({"w"}, {"a"});
  m.set_value("w", "p", v(p));
  m.set_value("w", "q", v("0"));
  m.set_access("a", "w", "w", v("1"));
  return m;
}

}  // namespace

TEST(Model, BoxIsInfimumOfResiduals) {
  const KripkeModel m = data_model("one_world.json");
  EXPECT_EQ(eval(m, "w1", "K{a} p"), v("2/5"));
  EXPECT_EQ(eval(m, "w1", "K{a} q"), v("1/2"));
  EXPECT_EQ(eval(m, "w1", "K{a} #4/5"), v("1"));
}

TEST(Model, TwoWorldBoxes) {
  // Values frozen from an independent rational computation.
  const KripkeModel m = data_model("two_worlds.json");
  EXPECT_EQ(eval(m, "w1", "K{a} p"), v("1"));
  EXPECT_EQ(eval(m, "w2", "K{a} p"), v("1/2"));
  EXPECT_EQ(eval(m, "w1", "K{a} q"), v("1/3"));
  EXPECT_EQ(eval(m, "w2", "K{a} q"), v("1"));
  EXPECT_EQ(eval(m, "w1", "K{b} q"), v("1"));
  EXPECT_EQ(eval(m, "w2", "K{b} q"), v("1/3"));
  EXPECT_EQ(eval(m, "w2", "K{b} p"), v("1"));
}

TEST(Model, Connectives) {
  const KripkeModel m = one_world("1/2");
  EXPECT_EQ(eval(m, "w", "p & #1/3"), v("1/3"));
  EXPECT_EQ(eval(m, "w", "p -> #1/3"), v("1/3"));
  EXPECT_EQ(eval(m, "w", "#1/3 -> p"), v("1"));
  EXPECT_EQ(eval(m, "w", "p | q"), v("1/2"));
  EXPECT_EQ(eval(m, "w", "~p"), v("0"));
  EXPECT_EQ(eval(m, "w", "~q"), v("1"));
  EXPECT_EQ(eval(m, "w", "D p"), v("0"));
  EXPECT_EQ(eval(m, "w", "D (p -> p)"), v("1"));
  EXPECT_EQ(eval(m, "w", "bot"), v("0"));
  EXPECT_EQ(eval(m, "w", "top"), v("1"));
}

TEST(Model, ValueFormulasAreCrisp) {
  const KripkeModel m = one_world("1/2");
  EXPECT_EQ(eval(m, "w", "V(p)=1/2"), v("1"));
  EXPECT_EQ(eval(m, "w", "V(p)>1/2"), v("0"));
  EXPECT_EQ(eval(m, "w", "V(p)>1/3"), v("1"));
  EXPECT_EQ(eval(m, "w", "V(p)!=1/2"), v("0"));
  EXPECT_EQ(eval(m, "w", "V(p)<=1/2"), v("1"));
  EXPECT_EQ(eval(m, "w", "V(p)<1/2"), v("0"));
  EXPECT_EQ(eval(m, "w", "V(p)>=1/2"), v("1"));
}

TEST(Model, FalseAnnouncementGivesOne) {
  for (const char* p : {"0", "1/3", "1"}) {
    const KripkeModel m = one_world(p);
    if (!eval(m, "w", "V(p)=1/2").is_zero()) continue;
    EXPECT_EQ(eval(m, "w", "[V(p)=1/2]q"), v("1"));
    EXPECT_EQ(eval(m, "w", "[V(p)=1/2]bot"), v("1"));
  }
}

TEST(Model, AnnouncementEvaluatesInRestriction) {
  // w2 is removed by the announcement, so a's uncertainty about it vanishes.
  const KripkeModel m = data_model("two_worlds.json");
  EXPECT_EQ(eval(m, "w1", "[V(p)=1]K{a} p"), v("1"));
  EXPECT_EQ(eval(m, "w1", "[V(p)=1]K{a} q"), v("1/3"));
  EXPECT_EQ(eval(m, "w2", "[V(p)=1]K{a} q"), v("1"));
  EXPECT_EQ(eval(m, "w1", "[V(q)=1]K{a} q"), v("1"));
}

TEST(Model, Restriction) {
  const KripkeModel m = data_model("two_worlds.json");
  const RestrictedModel r = restrict(m, parse("V(p)=1"));
  EXPECT_EQ(r.surviving(), (std::vector<std::size_t>{0}));
  EXPECT_EQ(r.model().worlds(), std::vector<std::string>{"w1"});
  EXPECT_EQ(r.model().access(0, 0, 0), v("1"));
  EXPECT_EQ(r.model().value(0, "q"), v("1/3"));
  EXPECT_TRUE(restrict(m, parse("V(p)=0")).empty());
  EXPECT_EQ(restrict(m, parse("V(p)>0")).surviving().size(), 2u);
  EXPECT_THROW(restrict(m, parse("p")), Error);
}

TEST(Model, LocalAndGlobalValidity) {
  const KripkeModel half = one_world("1/2");
  EXPECT_TRUE(locally_valid(half, "w", parse("p -> p")));
  EXPECT_FALSE(locally_valid(half, "w", parse("p | ~p")));
  EXPECT_TRUE(globally_valid(one_world("1"), parse("p")));
  const KripkeModel m = data_model("two_worlds.json");
  EXPECT_TRUE(locally_valid(m, "w1", parse("p")));
  EXPECT_FALSE(globally_valid(m, parse("p")));
}

TEST(Model, DisjunctionIsMax) {
  ModelSpaceParams params;
  params.max_worlds = 2;
  params.chain = parse_chain("0,1/3,1/2,1");
  params.atoms = {"p", "q"};
  const Formula f = parse("p | K{a} q");
  const Formula l = parse("p"), r = parse("K{a} q");
  std::size_t mismatches = 0;
  enumerate_models(params, [&](std::uint64_t, const KripkeModel& m) {
    const auto a = evaluate_all(m, f), b = evaluate_all(m, l), c = evaluate_all(m, r);
    for (std::size_t w = 0; w < a.size(); ++w) mismatches += a[w] != join(b[w], c[w]);
    return true;
  });
  EXPECT_EQ(mismatches, 0u);
}

TEST(Model, EvaluatorReuse) {
  const KripkeModel a = one_world("1/2"), b = one_world("1/3");
  const Formula f = parse("[V(p)>0]K{a}(p -> #1/3)");
  Evaluator ev(a);
  const auto first = ev.run(f);
  ev.reset(b);
  const auto second = ev.run(f);
  EXPECT_EQ(first, evaluate_all(a, f));
  EXPECT_EQ(second, evaluate_all(b, f));
  EXPECT_NE(first, second);
}

TEST(Model, DefaultValueAndMissingAtom) {
  const KripkeModel m = data_model("two_worlds.json");
  EXPECT_EQ(eval(m, "w1", "r"), v("0"));
  const KripkeModel strict = data_model("one_world.json");
  EXPECT_THROW(eval(strict, "w1", "r"), ModelError);
  EXPECT_THROW(eval(strict, "nowhere", "p"), ModelError);
  EXPECT_THROW(eval(strict, "w1", "K{z} p"), ModelError);
}

TEST(ModelIO, RoundTrip) {
  const KripkeModel m = data_model("two_worlds.json");
  EXPECT_EQ(parse_model(dump_model(m)), m);
}

TEST(ModelIO, RejectsBadDocuments) {
  EXPECT_THROW(parse_model("{"), ModelError);
  EXPECT_THROW(parse_model("[]"), ModelError);
  EXPECT_THROW(parse_model(R"({"worlds": [], "agents": ["a"]})"), ModelError);
  EXPECT_THROW(parse_model(R"({"worlds": ["w"], "agents": []})"), ModelError);
  EXPECT_THROW(parse_model(R"({"worlds": ["w", "w"], "agents": ["a"]})"), ModelError);
  EXPECT_THROW(parse_model(R"({"worlds": ["w"], "agents": ["a"],
      "valuation": {"w": {"p": "3/2"}}})"),
               Error);
  EXPECT_THROW(parse_model(R"({"worlds": ["w"], "agents": ["a"],
      "access": {"a": [["w", "w", "1"], ["w", "w", "0"]]}})"),
               ModelError);
  EXPECT_THROW(parse_model(R"({"worlds": ["w"], "agents": ["a"],
      "access": {"b": [["w", "w", "1"]]}})"),
               ModelError);
}
