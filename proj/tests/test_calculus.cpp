#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "gpal/calculus.hpp"
#include "gpal/parser.hpp"

using namespace gpal;

namespace {

std::string proof_text(const std::string& name) {
  std::ifstream in(std::string(GPAL_DATA_DIR) + "/proofs/" + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const Schema& schema(const char* name) {
  const Schema* s = standard_schemas().find(name);
  if (!s) throw std::runtime_error(std::string("missing schema ") + name);
  return *s;
}

ModelSpaceParams small_space() {
  ModelSpaceParams p;
  p.max_worlds = 2;
  p.chain = parse_chain("0,1/2,1");
  p.atoms = {"p", "q"};
  return p;
}

}  // namespace

TEST(Schemas, MatchBindsMetavariables) {
  const auto s = match_schema(schema("G"), parse("p -> p & p"));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->formulas.at("phi"), parse("p"));
  EXPECT_FALSE(match_schema(schema("G"), parse("p -> p & q")).has_value());
}

TEST(Schemas, SideConditionsAreChecked) {
  const auto ok = match_schema(schema("BK1"), parse("#1/3 & #1/2 <-> #1/3"));
  ASSERT_TRUE(ok.has_value());
  EXPECT_EQ(ok->constants.at("c"), TruthValue::of(1, 3));
  EXPECT_EQ(ok->constants.count("e"), 0u);
  EXPECT_FALSE(match_schema(schema("BK1"), parse("#1/3 & #1/2 <-> #1/2")).has_value());
  EXPECT_TRUE(match_schema(schema("BK2"), parse("(#1/3 -> #1/2) <-> top")).has_value());
  EXPECT_TRUE(match_schema(schema("DC"), parse("D #1/2 <-> bot")).has_value());
}

TEST(Schemas, AgentsMustAgree) {
  EXPECT_TRUE(match_schema(schema("K"), parse("K{b}(p -> q) -> (K{b} p -> K{b} q)")));
  EXPECT_FALSE(match_schema(schema("K"), parse("K{a}(p -> q) -> (K{b} p -> K{a} q)")));
}

TEST(Schemas, BodyMetavariablesNeedBodies) {
  EXPECT_TRUE(match_schema(schema("PA2"), parse("[V(p)>0]q <-> (V(p)>0 -> q)")));
  Substitution s;
  s.formulas["lambda"] = parse("p");
  s.formulas["p"] = parse("q");
  EXPECT_THROW(instantiate(schema("PA2"), s), ProofFormatError);
  s.formulas["lambda"] = parse("V(p)>0");
  s.formulas["p"] = parse("q & q");
  EXPECT_THROW(instantiate(schema("PA2"), s), ProofFormatError);
}

TEST(Schemas, InstantiateComputesResults) {
  Substitution s;
  s.constants["c"] = TruthValue::of(1, 2);
  s.constants["d"] = TruthValue::of(1, 3);
  EXPECT_EQ(instantiate(schema("BK2"), s), parse("(#1/2 -> #1/3) <-> #1/3"));
  s.constants["e"] = TruthValue::of(1, 2);
  EXPECT_THROW(instantiate(schema("BK2"), s), ProofFormatError);
  Substitution endpoint;
  endpoint.constants["c"] = TruthValue::one();
  EXPECT_THROW(instantiate(schema("DC"), endpoint), ProofFormatError);
}

TEST(Schemas, DatabaseFlagsConjectures) {
  EXPECT_TRUE(schema("KD").conjectural);
  EXPECT_TRUE(schema("KC").conjectural);
  EXPECT_FALSE(schema("PA6").conjectural);
  EXPECT_EQ(standard_schemas().find("nope"), nullptr);
}

TEST(Proofs, BundledProofsAreAccepted) {
  for (const char* name : {"mp_chain.proof", "pa2_instance.proof", "inferred.proof"}) {
    const ProofVerdict v = check_proof(parse_proof(proof_text(name)), standard_schemas());
    EXPECT_TRUE(v.accepted) << name << ": line " << v.line << ": " << v.reason;
  }
}

TEST(Proofs, ParsesStructure) {
  const Proof p = parse_proof(proof_text("mp_chain.proof"));
  ASSERT_EQ(p.premises.size(), 1u);
  ASSERT_EQ(p.lines.size(), 7u);
  EXPECT_EQ(p.lines[2].why.rule, Justification::Rule::ModusPonens);
  EXPECT_EQ(p.lines[5].why.agent, "a");
  EXPECT_EQ(p.lines[1].why.bindings.size(), 1u);
}

TEST(Proofs, EmptyProofIsAccepted) {
  EXPECT_TRUE(check_proof(parse_proof(""), standard_schemas()).accepted);
  EXPECT_TRUE(check_proof(parse_proof("premises:\n"), standard_schemas()).accepted);
}

TEST(Proofs, RejectsAtFirstBadLine) {
  const std::string text =
      "premises:\np\n"
      "1. p ; premise 1\n"
      "2. p -> p & p ; axiom G\n"
      "3. p & q ; mp 1 2\n"
      "4. p & p ; mp 1 2\n";
  const ProofVerdict v = check_proof(parse_proof(text), standard_schemas());
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.line, 3u);
  EXPECT_FALSE(v.reason.empty());
}

TEST(Proofs, RuleErrors) {
  const auto reject_line = [](const std::string& text) {
    return check_proof(parse_proof(text), standard_schemas()).line;
  };
  EXPECT_EQ(reject_line("1. p ; premise 1\n"), 1u);
  EXPECT_EQ(reject_line("1. p -> p & p ; axiom G {phi := q}\n"), 1u);
  EXPECT_EQ(reject_line("1. p -> p & p ; axiom NOPE\n"), 1u);
  EXPECT_EQ(reject_line("1. p -> p & p ; axiom G\n2. q ; mp 1 3\n"), 2u);
  EXPECT_EQ(reject_line("1. p -> p & p ; axiom G\n2. D (p -> q) ; dnec 1\n"), 2u);
  EXPECT_EQ(reject_line("1. p -> p & p ; axiom G\n2. K{a}(p -> p & p) ; knec 2 a\n"), 2u);
  EXPECT_EQ(reject_line("1. p -> p & p ; axiom G\n2. K{b}(p -> p & p) ; knec 1 a\n"), 2u);
}

TEST(Proofs, NecessitationOfPremises) {
  const std::string dnec = "premises:\np\n1. p ; premise 1\n2. D p ; dnec 1\n";
  EXPECT_TRUE(check_proof(parse_proof(dnec), standard_schemas()).accepted);
  ProofOptions strict;
  strict.strict_delta_nec = true;
  const ProofVerdict v = check_proof(parse_proof(dnec), standard_schemas(), strict);
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.line, 2u);
  const std::string knec = "premises:\np\n1. p ; premise 1\n2. K{a} p ; knec 1 a\n";
  EXPECT_FALSE(check_proof(parse_proof(knec), standard_schemas()).accepted);
}

TEST(Proofs, InsertingAValidLineKeepsAcceptance) {
  const Proof base = parse_proof(proof_text("mp_chain.proof"));
  ProofLine extra{parse("bot -> q"), {}};
  extra.why.rule = Justification::Rule::Axiom;
  extra.why.schema = "BL5";
  for (std::size_t at = 0; at <= base.lines.size(); ++at) {
    Proof p = base;
    p.lines.insert(p.lines.begin() + static_cast<std::ptrdiff_t>(at), extra);
    for (std::size_t k = 0; k < p.lines.size(); ++k) {
      if (k == at) continue;
      Justification& why = p.lines[k].why;
      const bool refs = why.rule == Justification::Rule::ModusPonens ||
                        why.rule == Justification::Rule::DeltaNec ||
                        why.rule == Justification::Rule::KNec;
      if (!refs) continue;
      if (why.first > at) ++why.first;
      if (why.rule == Justification::Rule::ModusPonens && why.second > at) ++why.second;
    }
    const ProofVerdict v = check_proof(p, standard_schemas());
    EXPECT_TRUE(v.accepted) << "insert at " << at << ": line " << v.line << ": " << v.reason;
  }
}

TEST(Proofs, FormatErrors) {
  EXPECT_THROW(parse_proof("2. p ; premise 1\n"), ProofFormatError);
  EXPECT_THROW(parse_proof("1. p\n"), ProofFormatError);
  EXPECT_THROW(parse_proof("1. p ; frobnicate 1\n"), ProofFormatError);
  EXPECT_THROW(parse_proof("1. p ; mp 1\n"), ProofFormatError);
  EXPECT_THROW(parse_proof("1. p & ; premise 1\n"), Error);
}

TEST(Audit, GoldenProofsHaveNoCounterexample) {
  for (const char* name : {"mp_chain.proof", "pa2_instance.proof", "inferred.proof"}) {
    ModelSpaceParams params = small_space();
    // The constants and the second agent make two-world spaces too large.
    if (std::string(name) == "inferred.proof") params.max_worlds = 1;
    const AuditReport r = audit_soundness(parse_proof(proof_text(name)), params);
    EXPECT_TRUE(r.sound_on_suite()) << name;
    EXPECT_GT(r.lines_checked, 0u);
  }
}

TEST(Audit, UnsoundSchemaIsCaught) {
  SchemaDatabase db = standard_schemas();
  db.add(make_schema("FAKE", "p -> D p"));
  const Proof proof = parse_proof("1. q -> D q ; axiom FAKE {p := q}\n");
  ASSERT_TRUE(check_proof(proof, db).accepted);
  const AuditReport r = audit_soundness(proof, small_space(), db);
  ASSERT_EQ(r.counterexamples.size(), 1u);
  EXPECT_EQ(r.counterexamples[0].line, 1u);
  EXPECT_TRUE(r.counterexamples[0].premise_free);
  const Witness& w = *r.counterexamples[0].verdict.witness;
  EXPECT_FALSE(evaluate(w.model, w.world, proof.lines[0].formula).is_one());
}

TEST(Audit, RejectedProofThrows) {
  EXPECT_THROW(audit_soundness(parse_proof("1. p ; premise 1\n"), small_space()), Error);
}
