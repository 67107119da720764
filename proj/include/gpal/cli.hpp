#ifndef GPAL_CLI_HPP
#define GPAL_CLI_HPP

#include <cstdlib>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gpal/acceptance.hpp"
#include "gpal/calculus.hpp"
#include "gpal/checker.hpp"
#include "gpal/language.hpp"
#include "gpal/model.hpp"
#include "gpal/model_io.hpp"
#include "gpal/parser.hpp"
#include "gpal/reduction.hpp"

namespace gpal::cli {

/// Exit codes.
constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kUsage = 2;

namespace detail {

struct SpaceFlags {
  std::optional<std::size_t> max_worlds;
  std::string chain;
  std::string agents;
  std::string atoms;
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::string params_file;

  void attach(CLI::App* app) {
    app->add_option("--max-worlds", max_worlds, "largest model size");
    app->add_option("--chain", chain, "truth values, e.g. 0,1/2,1");
    app->add_option("--agents", agents, "comma-separated agents");
    app->add_option("--atoms", atoms, "comma-separated atoms");
    app->add_option("--mode", mode, "exhaustive or random")
        ->check(CLI::IsMember({"exhaustive", "random"}));
    app->add_option("--seed", seed, "random mode seed");
    app->add_option("--samples", samples, "random mode sample count");
    app->add_option("--params", params_file, "JSON params document");
  }

  /// Params from the file (if any), then flags; atoms and agents default to
  /// those of the formulas.
  ModelSpaceParams build(const std::vector<Formula>& formulas) const {
    ModelSpaceParams p;
    bool have_atoms = !atoms.empty();
    bool have_agents = !agents.empty();
    if (!params_file.empty()) {
      std::ifstream in(params_file);
      if (!in) throw Error("cannot open params file '" + params_file + "'");
      nlohmann::json doc;
      try {
        in >> doc;
      } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad params file: ") + e.what());
      }
      p = params_from_json(doc);
      have_atoms = have_atoms || doc.contains("atoms");
      have_agents = have_agents || doc.contains("agents");
    }
    if (max_worlds) p.max_worlds = *max_worlds;
    if (!chain.empty()) p.chain = parse_chain(chain);
    if (!agents.empty()) p.agents = split(agents);
    if (!atoms.empty()) p.atoms = split(atoms);
    if (mode == "random") p.mode = SearchMode::Random;
    if (mode == "exhaustive") p.mode = SearchMode::Exhaustive;
    if (seed) p.seed = *seed;
    if (samples) p.sample_count = *samples;
    if (const char* env = std::getenv("GOEDEL_PAL_BUDGET")) {
      try {
        p.budget = std::stoull(env);
      } catch (const std::exception&) {
        throw Error(std::string("GOEDEL_PAL_BUDGET is not a number: '") + env + "'");
      }
    }
    std::set<std::string> seen_atoms, seen_agents;
    for (const Formula& f : formulas) {
      collect_atoms(f, seen_atoms);
      collect_agents(f, seen_agents);
    }
    if (!have_atoms && !seen_atoms.empty()) p.atoms.assign(seen_atoms.begin(), seen_atoms.end());
    if (!have_agents && !seen_agents.empty()) {
      p.agents.assign(seen_agents.begin(), seen_agents.end());
    }
    p.validate();
    return p;
  }

  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }
};

inline std::string join_chain(const std::vector<TruthValue>& chain) {
  std::string out;
  for (const auto& v : chain) out += (out.empty() ? "" : ",") + v.to_string();
  return out;
}

inline void print_verdict(const Verdict& v, std::ostream& out) {
  if (v.valid()) {
    out << "valid on suite (" << v.models_checked << " models, chain "
        << join_chain(v.chain) << ")\n";
    return;
  }
  const Witness& w = *v.witness;
  out << "refuted (model #" << w.index << ", chain " << join_chain(v.chain) << ")\n";
  out << "world: " << w.world_name() << "\n";
  out << "value: " << w.value.to_string() << "\n";
  if (w.other) out << "other: " << w.other->to_string() << "\n";
  out << "witness:\n" << dump_model(w.model) << "\n";
}

}  // namespace detail

/// Runs one invocation; args exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               std::istream& in = std::cin) {
  CLI::App app{"Goedel-Dummett public announcement logic toolkit", "gpal"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  std::string formula_text, other_text, model_path, world, proof_path;
  bool with_trace = false, audit = false, strict = false;
  int criterion = 0;
  detail::SpaceFlags space;

  auto* c_parse = app.add_subcommand("parse", "print canonical form and languages");
  auto* c_eval = app.add_subcommand("eval", "truth degree at a world");
  auto* c_restrict = app.add_subcommand("restrict", "restrict a model by an announcement");
  auto* c_translate = app.add_subcommand("translate", "eliminate announcements");
  auto* c_complexity = app.add_subcommand("complexity", "complexity measure");
  auto* c_trace = app.add_subcommand("trace", "rewrite steps of the translation");
  auto* c_valid = app.add_subcommand("check-valid", "search for a countermodel");
  auto* c_equiv = app.add_subcommand("check-equiv", "compare two formulas world by world");
  auto* c_proof = app.add_subcommand("check-proof", "verify a proof file");
  auto* c_suite = app.add_subcommand("suite", "run the acceptance criteria");

  for (auto* c : {c_parse, c_eval, c_restrict, c_translate, c_complexity, c_trace, c_valid,
                  c_equiv}) {
    c->add_option("--formula", formula_text, "formula (read from stdin if absent)");
  }
  for (auto* c : {c_eval, c_restrict}) {
    c->add_option("--model", model_path, "model file")->required();
  }
  c_eval->add_option("--world", world, "world name")->required();
  c_translate->add_flag("--trace", with_trace, "also print the rewrite steps");
  c_equiv->add_option("--other", other_text, "second formula")->required();
  space.attach(c_valid);
  space.attach(c_equiv);
  space.attach(c_proof);
  c_proof->add_option("--proof", proof_path, "proof file")->required();
  c_proof->add_flag("--audit", audit, "check every line on the model space");
  c_proof->add_flag("--strict", strict, "allow dnec on premise-free lines only");
  c_suite->add_option("--criterion", criterion, "run one criterion (1-10)")
      ->check(CLI::Range(1, acceptance::kCriteria));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  auto read_formula = [&]() {
    if (formula_text.empty()) {
      formula_text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    return parse(formula_text);
  };

  try {
    if (c_parse->parsed()) {
      const Formula f = read_formula();
      out << print(f) << "\n";
      std::string tags;
      for (LanguageTag t : classify(f)) tags += (tags.empty() ? "" : ", ") + to_string(t);
      out << "languages: " << (tags.empty() ? "none" : tags) << "\n";
      return kOk;
    }
    if (c_eval->parsed()) {
      const KripkeModel m = load_model(model_path);
      out << evaluate(m, world, read_formula()).to_string() << "\n";
      return kOk;
    }
    if (c_restrict->parsed()) {
      const KripkeModel m = load_model(model_path);
      out << dump_model(restrict(m, read_formula()).model()) << "\n";
      return kOk;
    }
    if (c_translate->parsed()) {
      const Formula f = read_formula();
      out << print(translate(f)) << "\n";
      if (with_trace) out << format_trace(translate_trace(f));
      return kOk;
    }
    if (c_trace->parsed()) {
      out << format_trace(translate_trace(read_formula()));
      return kOk;
    }
    if (c_complexity->parsed()) {
      out << complexity(read_formula()).str() << "\n";
      return kOk;
    }
    if (c_valid->parsed()) {
      const Formula f = read_formula();
      const Verdict v = check_validity(f, space.build({f}));
      detail::print_verdict(v, out);
      return v.valid() ? kOk : kRefuted;
    }
    if (c_equiv->parsed()) {
      const Formula f = read_formula();
      const Formula g = parse(other_text);
      const Verdict v = check_equivalence(f, g, space.build({f, g}));
      detail::print_verdict(v, out);
      return v.valid() ? kOk : kRefuted;
    }
    if (c_proof->parsed()) {
      const Proof proof = parse_proof(acceptance::detail::read_file(proof_path));
      ProofOptions options;
      options.strict_delta_nec = strict;
      const ProofVerdict v = check_proof(proof, standard_schemas(), options);
      if (!v.accepted) {
        out << "rejected at line " << v.line << ": " << v.reason << "\n";
        return kRefuted;
      }
      out << "accepted (" << proof.lines.size() << " lines)\n";
      if (!audit) return kOk;
      std::vector<Formula> all = proof.premises;
      for (const auto& l : proof.lines) all.push_back(l.formula);
      const AuditReport report =
          audit_soundness(proof, space.build(all), standard_schemas(), options);
      if (report.sound_on_suite()) {
        out << "audit: no counterexample on " << report.lines_checked << " lines\n";
        return kOk;
      }
      for (const AuditFinding& f : report.counterexamples) {
        out << "audit: line " << f.line
            << (f.premise_free ? " is not valid" : " does not follow from the premises")
            << "\n";
        detail::print_verdict(f.verdict, out);
      }
      return kRefuted;
    }
    if (c_suite->parsed()) {
      acceptance::Options options;
      options.cli = [](const std::vector<std::string>& a, std::ostream& o, std::ostream& e) {
        std::istringstream none;
        return run(a, o, e, none);
      };
      int passed = 0, total = 0;
      for (int id = 1; id <= acceptance::kCriteria; ++id) {
        if (criterion != 0 && id != criterion) continue;
        const acceptance::Result r = acceptance::run_criterion(id, options);
        out << acceptance::format_result(r) << std::flush;
        passed += r.passed;
        ++total;
      }
      out << passed << "/" << total << " criteria passed\n";
      return passed == total ? kOk : kRefuted;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace gpal::cli

#endif  // GPAL_CLI_HPP
