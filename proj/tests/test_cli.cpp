#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "gpal/cli.hpp"

using namespace gpal;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::ostringstream out, err;
  std::istringstream in(stdin_text);
  const int code = cli::run(args, out, err, in);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(GPAL_DATA_DIR) + "/" + rel; }

}  // namespace

TEST(Cli, Parse) {
  const Outcome r = run({"parse", "--formula", "~p"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "(p -> bot)\nlanguages: G, K_Delta(Q), FPA, FPA_Delta(Q)\n");
}

TEST(Cli, ParseFromStdin) {
  const Outcome r = run({"parse"}, "V(p)=1/2\n");
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "(V(p)=1/2)\nlanguages: FPA_V\n");
}

TEST(Cli, ParseErrorIsUsage) {
  const Outcome r = run({"parse", "--formula", "p &"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("1:4"), std::string::npos) << r.err;
}

TEST(Cli, Eval) {
  const Outcome r = run({"eval", "--model", data("models/one_world.json"), "--world", "w1",
                     "--formula", "K{a} p"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "2/5\n");
  EXPECT_EQ(run({"eval", "--model", data("models/one_world.json"), "--world", "w9",
                 "--formula", "p"})
                .code,
            cli::kUsage);
  EXPECT_EQ(run({"eval", "--model", "/nonexistent.json", "--world", "w1", "--formula", "p"}).code,
            cli::kUsage);
}

TEST(Cli, Restrict) {
  const Outcome r = run({"restrict", "--model", data("models/two_worlds.json"), "--formula",
                     "V(p)=1"});
  EXPECT_EQ(r.code, cli::kOk);
  const KripkeModel m = parse_model(r.out);
  EXPECT_EQ(m.worlds(), std::vector<std::string>{"w1"});
  EXPECT_EQ(run({"restrict", "--model", data("models/two_worlds.json"), "--formula", "p"}).code,
            cli::kUsage);
}

TEST(Cli, Translate) {
  const Outcome r = run({"translate", "--formula", "[V(p)>1/2]q"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "(((D (p -> #1/2)) -> bot) -> q)\n");
  const Outcome t = run({"translate", "--trace", "--formula", "[V(p)>1/2]q"});
  EXPECT_EQ(t.out.rfind(r.out, 0), 0u);
  EXPECT_NE(t.out.find("PA2\t8\t"), std::string::npos) << t.out;
}

TEST(Cli, TraceAndComplexity) {
  const Outcome t = run({"trace", "--formula", "[V(p)>1/2]q"});
  EXPECT_EQ(t.code, cli::kOk);
  EXPECT_EQ(t.out.substr(0, 4), "PA2\t");
  const Outcome c = run({"complexity", "--formula", "[V(p)=1/2]p"});
  EXPECT_EQ(c.out, "8\n");
}

TEST(Cli, CheckValid) {
  const Outcome ok = run({"check-valid", "--formula", "p -> p", "--chain", "0,1/2,1"});
  EXPECT_EQ(ok.code, cli::kOk);
  EXPECT_EQ(ok.out.rfind("valid on suite (9 models, chain 0,1/2,1)", 0), 0u) << ok.out;
  const Outcome bad = run({"check-valid", "--formula", "p | ~p", "--chain", "0,1/2,1"});
  EXPECT_EQ(bad.code, cli::kRefuted);
  EXPECT_NE(bad.out.find("value: 1/2"), std::string::npos) << bad.out;
  EXPECT_NE(bad.out.find("witness:"), std::string::npos);
  // Deterministic output.
  EXPECT_EQ(run({"check-valid", "--formula", "p | ~p", "--chain", "0,1/2,1"}).out, bad.out);
}

TEST(Cli, CheckValidWithParamsFile) {
  const Outcome r = run({"check-valid", "--formula", "~~K{a} p -> K{a} ~~p", "--params",
                     data("params.json")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("65600 models"), std::string::npos) << r.out;
}

TEST(Cli, Budget) {
  ::setenv("GOEDEL_PAL_BUDGET", "10", 1);
  const Outcome r = run({"check-valid", "--formula", "p -> p", "--max-worlds", "2"});
  ::unsetenv("GOEDEL_PAL_BUDGET");
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("budget"), std::string::npos) << r.err;
}

TEST(Cli, RandomMode) {
  const std::vector<std::string> args = {"check-valid", "--formula", "K{a} p -> p", "--mode",
                                         "random", "--samples", "50", "--seed", "4",
                                         "--max-worlds", "3"};
  const Outcome a = run(args), b = run(args);
  EXPECT_EQ(a.code, cli::kRefuted);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CheckEquiv) {
  const Outcome r = run({"check-equiv", "--formula", "~~p", "--other", "p", "--chain", "0,1/2,1"});
  EXPECT_EQ(r.code, cli::kRefuted);
  EXPECT_NE(r.out.find("other: "), std::string::npos);
  EXPECT_EQ(run({"check-equiv", "--formula", "p & q", "--other", "q & p"}).code, cli::kOk);
}

TEST(Cli, CheckProof) {
  const Outcome ok = run({"check-proof", "--proof", data("proofs/mp_chain.proof")});
  EXPECT_EQ(ok.code, cli::kOk);
  EXPECT_EQ(ok.out, "accepted (7 lines)\n");
  const Outcome strict = run({"check-proof", "--strict", "--proof", data("proofs/mp_chain.proof")});
  EXPECT_EQ(strict.code, cli::kRefuted);
  EXPECT_EQ(strict.out.rfind("rejected at line 7", 0), 0u) << strict.out;
  const Outcome audit = run({"check-proof", "--audit", "--chain", "0,1/2,1", "--proof",
                         data("proofs/pa2_instance.proof")});
  EXPECT_EQ(audit.code, cli::kOk) << audit.out << audit.err;
  EXPECT_NE(audit.out.find("audit: no counterexample"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"eval", "--formula", "p"}).code, cli::kUsage);
  EXPECT_EQ(run({"check-valid", "--formula", "p", "--mode", "sometimes"}).code, cli::kUsage);
  EXPECT_EQ(run({"check-valid", "--formula", "p", "--chain", "0,1/2"}).code, cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}
