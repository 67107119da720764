#ifndef GPAL_ACCEPTANCE_HPP
#define GPAL_ACCEPTANCE_HPP

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gpal/calculus.hpp"
#include "gpal/checker.hpp"
#include "gpal/formula.hpp"
#include "gpal/language.hpp"
#include "gpal/model.hpp"
#include "gpal/model_io.hpp"
#include "gpal/parser.hpp"
#include "gpal/random.hpp"
#include "gpal/reduction.hpp"

#ifndef GPAL_DATA_DIR
#define GPAL_DATA_DIR "data"
#endif

namespace gpal::acceptance {

struct Result {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

/// Runs the command-line tool in process: (args, out, err) -> exit code.
using CliRunner = std::function<int(const std::vector<std::string>&, std::ostream&,
                                    std::ostream&)>;

struct Options {
  std::string data_dir = GPAL_DATA_DIR;
  /// When set, criterion 10 also goes through the command line.
  CliRunner cli;
};

constexpr int kCriteria = 10;

/// The exhaustive suite: up to two worlds, chain {0, 1/3, 1/2, 1}, one
/// agent, atoms p and q.
inline ModelSpaceParams suite_params() {
  ModelSpaceParams p;
  p.max_worlds = 2;
  p.chain = parse_chain("0,1/3,1/2,1");
  p.agents = {"a"};
  p.atoms = {"p", "q"};
  return p;
}

namespace detail {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::vector<Formula> parse_all(std::initializer_list<const char*> texts) {
  std::vector<Formula> out;
  for (const char* t : texts) out.push_back(parse(t));
  return out;
}

/// Names the first refuted formula of a batch, or returns empty.
inline std::string first_refuted(const std::vector<Formula>& formulas,
                                 const std::vector<Verdict>& verdicts,
                                 std::size_t* count = nullptr) {
  std::string out;
  std::size_t n = 0;
  for (std::size_t k = 0; k < verdicts.size(); ++k) {
    if (verdicts[k].valid()) continue;
    ++n;
    if (out.empty()) {
      const Witness& w = *verdicts[k].witness;
      out = print(formulas[k]) + " is " + w.value.to_string() + " at " +
            w.world_name() + " of model #" + std::to_string(w.index);
    }
  }
  if (count) *count = n;
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Replaces the proof step numbered n by `line`.
inline std::string replace_step(const std::string& text, std::size_t n,
                                const std::string& line) {
  std::istringstream in(text);
  std::string out;
  std::string raw;
  const std::string prefix = std::to_string(n) + ".";
  bool done = false;
  while (std::getline(in, raw)) {
    if (!done && raw.rfind(prefix, 0) == 0) {
      out += line + "\n";
      done = true;
    } else {
      out += raw + "\n";
    }
  }
  if (!done) throw Error("no step " + std::to_string(n) + " to mutate");
  return out;
}

}  // namespace detail

// 1 ------------------------------------------------------------------------

inline Result criterion1(const Options&) {
  detail::Timer timer;
  Result r{1, "algebra tables on {0, 1/4, 1/2, 3/4, 1}", false, {}, 0};
  const std::vector<TruthValue> chain = parse_chain("0,1/4,1/2,3/4,1");
  std::size_t checked = 0;
  std::string bad;
  for (const TruthValue& a : chain) {
    const BigRational x = a.rational();
    if (delta(a) != (x == 1 ? TruthValue::one() : TruthValue::zero())) {
      bad = "delta(" + a.to_string() + ")";
    }
    for (const TruthValue& b : chain) {
      const BigRational y = b.rational();
      const BigRational lo = x < y ? x : y;
      const BigRational hi = x < y ? y : x;
      const BigRational imp = x <= y ? BigRational(1) : y;
      if (tnorm(a, b).rational() != lo) bad = "tnorm(" + a.to_string() + "," + b.to_string() + ")";
      if (join(a, b).rational() != hi) bad = "join(" + a.to_string() + "," + b.to_string() + ")";
      if (residuum(a, b).rational() != imp) {
        bad = "residuum(" + a.to_string() + "," + b.to_string() + ")";
      }
      checked += 3;
    }
  }
  r.seconds = timer.seconds();
  r.passed = bad.empty() && checked == 75 && r.seconds < 1.0;
  r.detail = bad.empty() ? std::to_string(checked) + " binary entries and 5 delta entries agree"
                         : "mismatch at " + bad;
  return r;
}

// 2 ------------------------------------------------------------------------

/// Instances of PA1-PA8 over the fixed pools.
inline std::vector<Formula> announcement_axiom_instances() {
  const auto& db = standard_schemas();
  const auto lambdas = detail::parse_all({"V(p)=1/2", "V(p)>0", "V(p)>1/2 & V(q)=1"});
  const auto pool = detail::parse_all({"p", "q", "p -> q", "D p", "#1/3"});
  const Formula mu = parse("V(q)>0");
  std::vector<Formula> out;
  auto add = [&](const char* name, Substitution s) {
    s.agents["a"] = "a";
    out.push_back(instantiate(*db.find(name), std::move(s)));
  };
  for (const Formula& l : lambdas) {
    add("PA1", {{{"lambda", l}}, {}, {}});
    for (const char* p : {"p", "q"}) add("PA2", {{{"lambda", l}, {"p", atom(p)}}, {}, {}});
    for (const Formula& a : pool) {
      for (const Formula& b : pool) {
        add("PA3", {{{"lambda", l}, {"phi", a}, {"psi", b}}, {}, {}});
        add("PA4", {{{"lambda", l}, {"phi", a}, {"psi", b}}, {}, {}});
      }
      add("PA5", {{{"lambda", l}, {"phi", a}}, {}, {}});
      add("PA6", {{{"lambda", l}, {"mu", mu}, {"phi", a}}, {}, {}});
      add("PA7", {{{"lambda", l}, {"phi", a}}, {}, {}});
      if (a.kind() == Kind::Constant) {
        add("PA8", {{{"lambda", l}}, {{"c", a.value()}}, {}});
      }
    }
  }
  return out;
}

inline Result criterion2(const Options&) {
  detail::Timer timer;
  Result r{2, "announcement axiom instances valid on the exhaustive suite", false, {}, 0};
  const auto formulas = announcement_axiom_instances();
  const auto verdicts = check_validity_batch(formulas, suite_params());
  std::size_t refuted = 0;
  const std::string first = detail::first_refuted(formulas, verdicts, &refuted);
  r.seconds = timer.seconds();
  r.passed = refuted == 0 && r.seconds < 120;
  r.detail = std::to_string(formulas.size()) + " instances x " +
             std::to_string(verdicts.front().models_checked) + " models, " +
             std::to_string(refuted) + " refuted" + (first.empty() ? "" : "; " + first);
  return r;
}

// 3 ------------------------------------------------------------------------

inline Result criterion3(const Options&) {
  detail::Timer timer;
  Result r{3, "value formulas agree with their Delta forms", false, {}, 0};
  std::vector<std::pair<Formula, Formula>> pairs;
  for (const Formula& s : detail::parse_all({"p", "p -> q", "K{a} p"})) {
    for (const TruthValue& c : parse_chain("0,1/3,1/2,1")) {
      const Formula cbar = constant(c);
      pairs.emplace_back(val_eq(s, c),
                         delta(land(implies(s, cbar), implies(cbar, s))));
      pairs.emplace_back(val_gt(s, c), implies(delta(implies(s, cbar)), bot()));
    }
  }
  const auto verdicts = check_equivalence_batch(pairs, suite_params());
  std::size_t refuted = 0;
  std::string first;
  for (std::size_t k = 0; k < verdicts.size(); ++k) {
    if (verdicts[k].valid()) continue;
    if (refuted++ == 0) first = print(pairs[k].first) + " vs " + print(pairs[k].second);
  }
  r.seconds = timer.seconds();
  r.passed = refuted == 0;
  r.detail = std::to_string(pairs.size()) + " pairs, " + std::to_string(refuted) +
             " differ" + (first.empty() ? "" : "; " + first);
  return r;
}

// 4 ------------------------------------------------------------------------

/// The six restriction sentences over FPA pools.
inline std::vector<Formula> restriction_sentences() {
  const auto lambdas =
      detail::parse_all({"V(p)=1/2", "V(p)>0", "V(p)>1/2 & V(q)=1", "K{a} V(q)>0"});
  const auto mus = detail::parse_all({"V(q)>0", "V(p)=1"});
  const auto pool = detail::parse_all({"p", "q", "p -> q", "K{a} p"});
  std::vector<Formula> out;
  for (const Formula& l : lambdas) {
    for (const char* p : {"p", "q"}) {
      out.push_back(iff(announce(l, atom(p)), implies(l, atom(p))));
    }
    out.push_back(iff(announce(l, bot()), implies(l, bot())));
    for (const Formula& a : pool) {
      for (const Formula& b : pool) {
        out.push_back(iff(announce(l, land(a, b)), land(announce(l, a), announce(l, b))));
        out.push_back(
            iff(announce(l, implies(a, b)), implies(announce(l, a), announce(l, b))));
      }
      out.push_back(iff(announce(l, know("a", a)), implies(l, know("a", announce(l, a)))));
      for (const Formula& m : mus) {
        out.push_back(iff(announce(l, announce(m, a)), announce(land(l, announce(l, m)), a)));
      }
    }
  }
  return out;
}

inline Result criterion4(const Options&) {
  detail::Timer timer;
  Result r{4, "restriction sentences and restriction composition", false, {}, 0};
  const auto formulas = restriction_sentences();
  const auto verdicts = check_validity_batch(formulas, suite_params());
  std::size_t refuted = 0;
  const std::string first = detail::first_refuted(formulas, verdicts, &refuted);

  ModelSpaceParams models;
  models.max_worlds = 3;
  models.chain = parse_chain("0,1/3,1/2,2/3,1");
  models.atoms = {"p", "q"};
  FormulaGenOptions gen;
  gen.max_depth = 3;
  gen.thresholds = models.chain;
  FormulaGenerator g(gen, 4004);
  std::size_t mismatches = 0;
  std::size_t proper = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const KripkeModel m = random_model(models, i);
    const Formula lambda = g.body();
    const Formula mu = g.body();
    const RestrictedModel once = restrict(m, land(lambda, announce(lambda, mu)));
    const RestrictedModel first_step = restrict(m, lambda);
    const RestrictedModel twice = restrict(first_step.model(), mu);
    if (!(once.model() == twice.model())) ++mismatches;
    if (!once.empty() && once.surviving().size() < m.world_count()) ++proper;
  }
  r.seconds = timer.seconds();
  r.passed = refuted == 0 && mismatches == 0;
  r.detail = std::to_string(formulas.size()) + " sentences, " + std::to_string(refuted) +
             " refuted" + (first.empty() ? "" : " (" + first + ")") + "; 1000 triples, " +
             std::to_string(mismatches) + " mismatches, " + std::to_string(proper) +
             " proper restrictions";
  return r;
}

// 5 ------------------------------------------------------------------------

inline Result criterion5(const Options&) {
  detail::Timer timer;
  Result r{5, "complexity measure inequalities", false, {}, 0};
  FormulaGenOptions gen;
  gen.max_depth = 6;
  gen.desugar_bodies = true;
  FormulaGenerator g(gen, 5005);
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::set<std::string> seen;
  std::string first;
  for (int i = 0; i < 10000; ++i) {
    const Formula f = g.formula();
    const MeasureReport rep = check_measure_properties(f);
    checks += rep.checks.size();
    for (const MeasureCheck& c : rep.checks) {
      seen.insert(c.property);
      if (!c.holds && violations++ == 0) {
        first = "(" + c.property + ") on " + print(c.subject);
      }
    }
  }
  r.seconds = timer.seconds();
  r.passed = violations == 0 && r.seconds < 10;
  std::string props;
  for (const auto& p : seen) props += (props.empty() ? "" : ",") + p;
  r.detail = std::to_string(checks) + " checks over 10000 formulas (properties " + props +
             "), " + std::to_string(violations) + " violations" +
             (first.empty() ? "" : "; " + first);
  return r;
}

// 6 ------------------------------------------------------------------------

inline Result criterion6(const Options&) {
  detail::Timer timer;
  Result r{6, "translation eliminates announcements and preserves values", false, {}, 0};
  FormulaGenOptions gen;
  gen.max_depth = 5;
  FormulaGenerator g(gen, 6006);
  ModelSpaceParams models;
  models.max_worlds = 2;
  models.chain = parse_chain("0,1/2,1");
  models.atoms = {"p", "q"};
  models.mode = SearchMode::Random;
  models.sample_count = 100;
  std::size_t residue = 0, outside = 0, increasing = 0, replay = 0, differ = 0;
  std::size_t steps = 0;
  std::string first;
  auto note = [&](std::size_t& counter, const std::string& what, const Formula& f) {
    if (counter++ == 0 && first.empty()) first = what + " for " + print(f);
  };
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Formula f = g.formula();
    const Formula t = translate(f);
    if (contains_kind(t, Kind::Announce) || contains_kind(t, Kind::ValEq) ||
        contains_kind(t, Kind::ValGt)) {
      note(residue, "announcement or value node left", f);
    }
    if (!in_language(t, LanguageTag::KDeltaQ)) note(outside, "output outside K_Delta(Q)", f);
    const auto trace = translate_trace(f);
    steps += trace.size();
    for (const ReductionStep& s : trace) {
      if (!s.measure_ok()) {
        note(increasing, s.rule + " does not decrease the measure", s.before);
        break;
      }
    }
    const auto replayed = replay_trace(f, trace);
    if (!replayed || !(*replayed == t)) note(replay, "trace does not replay", f);
    models.seed = i;
    if (!check_equivalence(f, t, models).valid()) note(differ, "value changed", f);
  }
  r.seconds = timer.seconds();
  r.passed = residue + outside + increasing + replay + differ == 0;
  r.detail = "1000 formulas, " + std::to_string(steps) + " trace steps; failures: " +
             std::to_string(residue) + " residue, " + std::to_string(outside) +
             " language, " + std::to_string(increasing) + " measure, " +
             std::to_string(replay) + " replay, " + std::to_string(differ) + " value" +
             (first.empty() ? "" : "; " + first);
  return r;
}

// 7 ------------------------------------------------------------------------

inline Result criterion7(const Options&) {
  detail::Timer timer;
  Result r{7, "composite value formulas take only the values 0 and 1", false, {}, 0};
  const ModelSpaceParams params = suite_params();
  FormulaGenOptions gen;
  gen.max_depth = 3;
  gen.thresholds = params.chain;
  FormulaGenerator g(gen, 7007);
  std::vector<Formula> lambdas;
  std::size_t know = 0, announced = 0;
  for (int i = 0; i < 500; ++i) {
    Formula l = g.composite_body();
    know += contains_kind(l, Kind::Know);
    announced += contains_kind(l, Kind::Announce);
    lambdas.push_back(std::move(l));
  }
  // Thresholds and constants are drawn from the chain, so the space is the
  // suite itself.
  const ModelSpace space(params);
  const auto verdicts = search_space(
      space, lambdas.size(), [&](Evaluator& ev, std::size_t k) -> std::optional<Failure> {
        const auto v = ev.values(lambdas[k]);
        for (std::size_t w = 0; w < v.size(); ++w) {
          if (!v[w].is_zero() && !v[w].is_one()) return Failure{w, v[w], {}};
        }
        return std::nullopt;
      });
  std::size_t bad = 0;
  const std::string first = detail::first_refuted(lambdas, verdicts, &bad);
  r.seconds = timer.seconds();
  r.passed = bad == 0 && know > 0 && announced > 0;
  r.detail = "500 bodies (" + std::to_string(know) + " with K, " + std::to_string(announced) +
             " with announcements) x " + std::to_string(space.size()) + " models, " +
             std::to_string(bad) + " non-boolean" + (first.empty() ? "" : "; " + first);
  return r;
}

// 8 ------------------------------------------------------------------------

struct Mutation {
  const char* file;
  std::size_t step;
  const char* line;
  std::size_t reject_at;
};

/// Mutants of the golden proofs and the line each must be rejected at.
inline const std::vector<Mutation>& proof_mutations() {
  static const std::vector<Mutation> m = {
      {"mp_chain.proof", 3, "3. p & p ; mp 2 1", 3},
      {"mp_chain.proof", 5, "5. (p & p) & (p & p) ; mp 4 3", 5},
      {"mp_chain.proof", 3, "3. p & p ; mp 1 4", 3},
      {"mp_chain.proof", 3, "3. p & p ; mp 3 2", 3},
      {"mp_chain.proof", 5, "5. (p & p) & (p & p) ; mp 0 4", 5},
      {"mp_chain.proof", 2, "2. p -> p & p ; axiom G {phi := q}", 2},
      {"mp_chain.proof", 4, "4. p & p -> (p & p) & (p & p) ; axiom G {phi := p}", 4},
      {"mp_chain.proof", 2, "2. p -> p & p ; axiom D3 {phi := p}", 2},
      {"mp_chain.proof", 2, "2. p -> p & p ; axiom NOPE", 2},
      {"mp_chain.proof", 2, "2. p -> p & p ; axiom G {chi := p}", 2},
      {"mp_chain.proof", 6, "6. K{a}(p & p) ; knec 3 a", 6},
      {"mp_chain.proof", 6, "6. K{a} p ; knec 1 a", 6},
      {"mp_chain.proof", 6, "6. K{a}(p -> p & p) ; knec 2 b", 6},
      {"mp_chain.proof", 7, "7. D p ; dnec 2", 7},
      {"mp_chain.proof", 1, "1. p ; premise 2", 1},
      {"mp_chain.proof", 1, "1. q ; premise 1", 1},
      {"mp_chain.proof", 3, "3. p & q ; mp 1 2", 3},
      {"pa2_instance.proof", 1,
       "1. [V(p)>1/2]q <-> (V(p)>1/2 -> q) ; axiom PA2 {lambda := V(p)>0, p := q}", 1},
      {"pa2_instance.proof", 1,
       "1. [V(p)>1/2]q <-> (V(p)>1/2 -> q) ; axiom PA2 {lambda := q, p := q}", 1},
      {"pa2_instance.proof", 1, "1. [V(p)>1/2]q <-> (V(p)>1/2 -> q) ; axiom PA1", 1},
  };
  return m;
}

inline Result criterion8(const Options& o) {
  detail::Timer timer;
  Result r{8, "proof checker: golden proofs, mutants, audit", false, {}, 0};
  std::vector<std::string> problems;
  std::map<std::string, std::string> golden;
  for (const char* name : {"pa2_instance.proof", "mp_chain.proof"}) {
    golden[name] = detail::read_file(o.data_dir + "/proofs/" + name);
    const ProofVerdict v = check_proof(parse_proof(golden[name]));
    if (!v.accepted) {
      problems.push_back(std::string(name) + " rejected at " + std::to_string(v.line) +
                         ": " + v.reason);
    }
  }
  std::size_t rejected_right = 0;
  for (const Mutation& m : proof_mutations()) {
    ProofVerdict v;
    try {
      v = check_proof(parse_proof(detail::replace_step(golden[m.file], m.step, m.line)));
    } catch (const ProofFormatError& e) {
      v = {false, 0, e.what()};
    }
    if (!v.accepted && v.line == m.reject_at) {
      ++rejected_right;
    } else {
      problems.push_back(std::string("mutant '") + m.line + "' " +
                         (v.accepted ? "accepted" : "rejected at " + std::to_string(v.line)));
    }
  }
  std::size_t golden_counterexamples = 0;
  for (const auto& [name, text] : golden) {
    golden_counterexamples +=
        audit_soundness(parse_proof(text), suite_params()).counterexamples.size();
  }
  if (golden_counterexamples) problems.push_back("audit refutes a golden proof");

  SchemaDatabase fake = standard_schemas();
  fake.add(make_schema("FAKE", "p -> D p"));
  const AuditReport planted = audit_soundness(parse_proof("1. p -> D p ; axiom FAKE\n"),
                                              suite_params(), fake);
  if (planted.sound_on_suite()) problems.push_back("audit misses the planted schema");

  r.seconds = timer.seconds();
  r.passed = problems.empty();
  std::string planted_note;
  if (!planted.sound_on_suite()) {
    const Witness& w = *planted.counterexamples.front().verdict.witness;
    planted_note = "; planted p -> D p refuted at " + w.world_name() + " with value " +
                   w.value.to_string();
  }
  r.detail = "2 golden proofs, " + std::to_string(rejected_right) + "/" +
             std::to_string(proof_mutations().size()) + " mutants rejected at the right line" +
             planted_note;
  for (const auto& p : problems) r.detail += "; " + p;
  return r;
}

// 9 ------------------------------------------------------------------------

/// Every instance of the schema with formula metavariables from `pool`,
/// bodies from `bodies`, atoms p and q, constants 1/2 and agent a.
inline std::vector<Formula> schema_instances(const Schema& s, const std::vector<Formula>& pool,
                                             const std::vector<Formula>& bodies) {
  const auto metas = s.metavariables();
  std::vector<std::pair<std::string, MetaKind>> vars;
  for (const auto& [name, kind] : metas) {
    if (kind != MetaKind::Result) vars.emplace_back(name, kind);
  }
  const std::vector<Formula> atoms = {atom("p"), atom("q")};
  const TruthValue half = TruthValue::of(1, 2);
  std::vector<Formula> out;
  Substitution sub;
  for (const auto& a : s.agent_metavariables()) sub.agents[a] = "a";
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == vars.size()) {
      out.push_back(instantiate(s, sub));
      return;
    }
    const auto& [name, kind] = vars[k];
    if (kind == MetaKind::Const) {
      sub.constants[name] = half;
      go(k + 1);
      return;
    }
    const auto& choices = kind == MetaKind::Body   ? bodies
                          : kind == MetaKind::Atom ? atoms
                                                   : pool;
    for (const Formula& f : choices) {
      sub.formulas[name] = f;
      go(k + 1);
    }
  };
  go(0);
  return out;
}

inline Result criterion9(const Options&) {
  detail::Timer timer;
  Result r{9, "every axiom schema valid on the exhaustive suite", false, {}, 0};
  const auto pool = detail::parse_all({"p", "q", "D p", "#1/2"});
  const std::vector<Formula> bodies = {parse("V(p)>0")};
  std::vector<Formula> formulas;
  std::vector<std::string> owner;
  for (const Schema& s : standard_schemas().schemas()) {
    for (Formula& f : schema_instances(s, pool, bodies)) {
      formulas.push_back(std::move(f));
      owner.push_back(s.name);
    }
  }
  const auto verdicts = check_validity_batch(formulas, suite_params());
  std::map<std::string, std::size_t> failing;
  std::map<std::string, std::string> example;
  for (std::size_t k = 0; k < verdicts.size(); ++k) {
    if (verdicts[k].valid()) continue;
    if (failing[owner[k]]++ == 0) {
      const Witness& w = *verdicts[k].witness;
      example[owner[k]] = print(formulas[k]) + " = " + w.value.to_string() + " at " +
                          w.world_name() + " of " + dump_model(w.model, -1);
    }
  }
  r.seconds = timer.seconds();
  r.passed = failing.empty();
  r.detail = std::to_string(formulas.size()) + " instances of " +
             std::to_string(standard_schemas().schemas().size()) + " schemas";
  for (const auto& [name, n] : failing) {
    const Schema* s = standard_schemas().find(name);
    r.detail += "; " + name + (s && s->conjectural ? " (conjectural)" : "") + ": " +
                std::to_string(n) + " refuted, e.g. " + example[name];
  }
  return r;
}

// 10 -----------------------------------------------------------------------

namespace detail {

/// Re-evaluates a "check-valid" refutation printed by the command line.
inline std::string recheck_cli_witness(const std::string& out, const Formula& f) {
  const auto world_at = out.find("\nworld: ");
  const auto value_at = out.find("\nvalue: ");
  const auto model_at = out.find("\nwitness:\n");
  if (world_at == std::string::npos || value_at == std::string::npos ||
      model_at == std::string::npos) {
    return "no witness in output";
  }
  auto line_after = [&](std::size_t at, std::size_t skip) {
    const auto start = at + skip;
    return out.substr(start, out.find('\n', start) - start);
  };
  const std::string world = line_after(world_at, 8);
  const std::string value = line_after(value_at, 8);
  const KripkeModel m = parse_model(out.substr(model_at + 10));
  const TruthValue v = evaluate(m, world, f);
  if (v.is_one()) return "witness does not refute";
  if (v.to_string() != value) return "witness gives " + v.to_string() + ", printed " + value;
  return {};
}

}  // namespace detail

inline Result criterion10(const Options& o) {
  detail::Timer timer;
  Result r{10, "known non-theorems are refuted", false, {}, 0};
  ModelSpaceParams params;
  params.max_worlds = 1;
  params.chain = parse_chain("0,1/2,1");
  std::vector<std::string> problems;
  std::string shown;
  for (const char* text : {"p | ~p", "~~p -> p", "D p <-> p"}) {
    const Formula f = parse(text);
    detail::Timer each;
    const Verdict v = check_validity(f, params);
    const double secs = each.seconds();
    if (v.valid()) {
      problems.push_back(std::string(text) + " not refuted");
      continue;
    }
    const Witness& w = *v.witness;
    const TruthValue again = evaluate(w.model, w.world, f);
    if (again != w.value || again.is_one()) problems.push_back(std::string(text) + " witness");
    if (secs >= 1.0) problems.push_back(std::string(text) + " took too long");
    shown += std::string(shown.empty() ? "" : ", ") + text + " = " + w.value.to_string();

    if (o.cli) {
      const std::vector<std::string> args = {"check-valid", "--formula", text,
                                             "--max-worlds", "1", "--chain", "0,1/2,1"};
      std::ostringstream out1, err1, out2, err2;
      const int code = o.cli(args, out1, err1);
      o.cli(args, out2, err2);
      if (code != 1) problems.push_back(std::string(text) + ": exit " + std::to_string(code));
      if (out1.str() != out2.str()) problems.push_back(std::string(text) + ": output varies");
      const std::string bad = detail::recheck_cli_witness(out1.str(), f);
      if (!bad.empty()) problems.push_back(std::string(text) + ": " + bad);
    }
  }
  r.seconds = timer.seconds();
  r.passed = problems.empty();
  r.detail = (shown.empty() ? std::string("none refuted") : "refuted: " + shown) +
             (o.cli ? " (library and command line)" : " (library)");
  for (const auto& p : problems) r.detail += "; " + p;
  return r;
}

// --------------------------------------------------------------------------

inline Result run_criterion(int id, const Options& o = {}) {
  using Fn = Result (*)(const Options&);
  static const Fn table[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                             criterion6, criterion7, criterion8, criterion9, criterion10};
  if (id < 1 || id > kCriteria) throw Error("no criterion " + std::to_string(id));
  try {
    return table[id - 1](o);
  } catch (const std::exception& e) {
    return Result{id, "criterion " + std::to_string(id), false,
                  std::string("error: ") + e.what(), 0};
  }
}

/// "PASS  n  title  (seconds)  detail" for one result.
inline std::string format_result(const Result& r) {
  std::ostringstream s;
  s << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.title
    << "  (" << std::fixed << std::setprecision(2) << r.seconds << " s)\n      "
    << r.detail << "\n";
  return s.str();
}

}  // namespace gpal::acceptance

#endif  // GPAL_ACCEPTANCE_HPP
