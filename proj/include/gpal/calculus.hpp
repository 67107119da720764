#ifndef GPAL_CALCULUS_HPP
#define GPAL_CALCULUS_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gpal/checker.hpp"
#include "gpal/errors.hpp"
#include "gpal/formula.hpp"
#include "gpal/language.hpp"
#include "gpal/model.hpp"
#include "gpal/parser.hpp"

namespace gpal {

// ---------------------------------------------------------------------------
// Schema patterns

/// Metavariable kinds of a schema pattern.
///   Formula  phi, psi, chi: any formula
///   Body     lambda, mu: an announcement body
///   Atom     p: a propositional variable
///   Const    c, d: a constant strictly between 0 and 1
///   Result   e: a constant fixed by a side condition; may be bot or top
enum class MetaKind { Formula, Body, Atom, Const, Result };

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

struct Pattern {
  enum class Tag { Meta, Bottom, Atom, And, Implies, Delta, Know, Announce };
  Tag tag;
  MetaKind meta = MetaKind::Formula;
  /// Metavariable name, concrete atom name, or agent metavariable of Know.
  std::string name;
  PatternPtr left;
  PatternPtr right;
};

enum class SideOp { TNorm, Residuum, Delta };

/// result = op(args...), all constant metavariables.
struct SideCondition {
  std::string result;
  SideOp op;
  std::vector<std::string> args;

  TruthValue apply(const std::map<std::string, TruthValue>& c) const {
    switch (op) {
      case SideOp::TNorm:
        return tnorm(c.at(args.at(0)), c.at(args.at(1)));
      case SideOp::Residuum:
        return residuum(c.at(args.at(0)), c.at(args.at(1)));
      case SideOp::Delta:
        return delta(c.at(args.at(0)));
    }
    return {};
  }
};

struct Substitution {
  std::map<std::string, Formula> formulas;
  std::map<std::string, TruthValue> constants;
  std::map<std::string, std::string> agents;

  friend bool operator==(const Substitution&, const Substitution&) = default;
};

struct Schema {
  std::string name;
  PatternPtr pattern;
  std::vector<SideCondition> side_conditions;
  /// Included as an axiom but not established to be sound.
  bool conjectural = false;
  std::string source;

  /// Metavariables of the pattern, by kind.
  std::map<std::string, MetaKind> metavariables() const {
    std::map<std::string, MetaKind> out;
    collect(pattern, out);
    return out;
  }
  std::set<std::string> agent_metavariables() const {
    std::set<std::string> out;
    collect_agents(pattern, out);
    return out;
  }

 private:
  static void collect(const PatternPtr& p, std::map<std::string, MetaKind>& out) {
    if (!p) return;
    if (p->tag == Pattern::Tag::Meta) out.emplace(p->name, p->meta);
    collect(p->left, out);
    collect(p->right, out);
  }
  static void collect_agents(const PatternPtr& p, std::set<std::string>& out) {
    if (!p) return;
    if (p->tag == Pattern::Tag::Know) out.insert(p->name);
    collect_agents(p->left, out);
    collect_agents(p->right, out);
  }
};

namespace detail {

inline std::optional<MetaKind> meta_kind_of(const std::string& atom) {
  static const std::map<std::string, MetaKind> kNames = {
      {"phi", MetaKind::Formula}, {"psi", MetaKind::Formula},
      {"chi", MetaKind::Formula}, {"lambda", MetaKind::Body},
      {"mu", MetaKind::Body},     {"p", MetaKind::Atom},
      {"c", MetaKind::Const},     {"d", MetaKind::Const},
      {"e", MetaKind::Result},
  };
  if (auto it = kNames.find(atom); it != kNames.end()) return it->second;
  return std::nullopt;
}

inline PatternPtr to_pattern(const Formula& f) {
  auto node = [](Pattern::Tag tag, MetaKind kind = MetaKind::Formula, std::string name = {},
                 PatternPtr left = {}, PatternPtr right = {}) {
    return std::make_shared<const Pattern>(
        Pattern{tag, kind, std::move(name), std::move(left), std::move(right)});
  };
  switch (f.kind()) {
    case Kind::Bottom:
      return node(Pattern::Tag::Bottom);
    case Kind::Atom:
      if (auto k = meta_kind_of(f.name())) {
        return node(Pattern::Tag::Meta, *k, f.name());
      }
      return node(Pattern::Tag::Atom, MetaKind::Formula, f.name());
    case Kind::And:
      return node(Pattern::Tag::And, MetaKind::Formula, {}, to_pattern(f.left()),
                  to_pattern(f.right()));
    case Kind::Implies:
      return node(Pattern::Tag::Implies, MetaKind::Formula, {},
                  to_pattern(f.left()), to_pattern(f.right()));
    case Kind::Delta:
      return node(Pattern::Tag::Delta, MetaKind::Formula, {}, to_pattern(f.left()));
    case Kind::Know:
      return node(Pattern::Tag::Know, MetaKind::Formula, f.name(),
                  to_pattern(f.left()));
    case Kind::Announce:
      return node(Pattern::Tag::Announce, MetaKind::Formula, {},
                  to_pattern(f.left()), to_pattern(f.right()));
    default:
      throw ProofFormatError("schema patterns cannot contain '" + print(f) + "'");
  }
}

/// Reads a constant-like formula: a constant, bot (0) or top (1).
inline std::optional<TruthValue> constant_value(const Formula& f) {
  if (f.kind() == Kind::Constant) return f.value();
  if (f.kind() == Kind::Bottom) return TruthValue::zero();
  if (is_top(f)) return TruthValue::one();
  return std::nullopt;
}

inline bool match_into(const PatternPtr& p, const Formula& f, Substitution& s) {
  switch (p->tag) {
    case Pattern::Tag::Meta: {
      switch (p->meta) {
        case MetaKind::Formula:
        case MetaKind::Body:
        case MetaKind::Atom: {
          if (p->meta == MetaKind::Body && !is_announcement_body(f)) return false;
          if (p->meta == MetaKind::Atom && f.kind() != Kind::Atom) return false;
          auto [it, fresh] = s.formulas.emplace(p->name, f);
          return fresh || it->second == f;
        }
        case MetaKind::Const: {
          if (f.kind() != Kind::Constant) return false;
          auto [it, fresh] = s.constants.emplace(p->name, f.value());
          return fresh || it->second == f.value();
        }
        case MetaKind::Result: {
          auto v = constant_value(f);
          if (!v) return false;
          auto [it, fresh] = s.constants.emplace(p->name, *v);
          return fresh || it->second == *v;
        }
      }
      return false;
    }
    case Pattern::Tag::Bottom:
      return f.kind() == Kind::Bottom;
    case Pattern::Tag::Atom:
      return f.kind() == Kind::Atom && f.name() == p->name;
    case Pattern::Tag::And:
    case Pattern::Tag::Implies:
    case Pattern::Tag::Announce: {
      const Kind want = p->tag == Pattern::Tag::And       ? Kind::And
                        : p->tag == Pattern::Tag::Implies ? Kind::Implies
                                                          : Kind::Announce;
      return f.kind() == want && match_into(p->left, f.left(), s) &&
             match_into(p->right, f.right(), s);
    }
    case Pattern::Tag::Delta:
      return f.kind() == Kind::Delta && match_into(p->left, f.left(), s);
    case Pattern::Tag::Know: {
      if (f.kind() != Kind::Know) return false;
      auto [it, fresh] = s.agents.emplace(p->name, f.name());
      if (!fresh && it->second != f.name()) return false;
      return match_into(p->left, f.left(), s);
    }
  }
  return false;
}

inline Formula build(const PatternPtr& p, const Substitution& s) {
  switch (p->tag) {
    case Pattern::Tag::Meta: {
      if (p->meta == MetaKind::Const || p->meta == MetaKind::Result) {
        auto it = s.constants.find(p->name);
        if (it == s.constants.end()) {
          throw ProofFormatError("no value for metavariable '" + p->name + "'");
        }
        return constant(it->second);
      }
      auto it = s.formulas.find(p->name);
      if (it == s.formulas.end()) {
        throw ProofFormatError("no value for metavariable '" + p->name + "'");
      }
      return it->second;
    }
    case Pattern::Tag::Bottom:
      return bot();
    case Pattern::Tag::Atom:
      return atom(p->name);
    case Pattern::Tag::And:
      return land(build(p->left, s), build(p->right, s));
    case Pattern::Tag::Implies:
      return implies(build(p->left, s), build(p->right, s));
    case Pattern::Tag::Announce:
      return announce(build(p->left, s), build(p->right, s));
    case Pattern::Tag::Delta:
      return delta(build(p->left, s));
    case Pattern::Tag::Know: {
      auto it = s.agents.find(p->name);
      if (it == s.agents.end()) {
        throw ProofFormatError("no agent for metavariable '" + p->name + "'");
      }
      return know(it->second, build(p->left, s));
    }
  }
  return bot();
}

}  // namespace detail

/// Builds a schema from pattern text in formula syntax. Atoms named phi, psi,
/// chi, lambda, mu, p, c, d, e are metavariables (see MetaKind); agents are
/// agent metavariables.
inline Schema make_schema(std::string name, const std::string& pattern,
                          std::vector<SideCondition> side = {},
                          bool conjectural = false, std::string source = {}) {
  Schema s{std::move(name), detail::to_pattern(parse(pattern)), std::move(side),
           conjectural, std::move(source)};
  const auto metas = s.metavariables();
  for (const auto& cond : s.side_conditions) {
    for (const auto& v : cond.args) {
      if (!metas.count(v)) {
        throw ProofFormatError("side condition of " + s.name + " uses unknown '" +
                               v + "'");
      }
    }
    if (!metas.count(cond.result)) {
      throw ProofFormatError("side condition of " + s.name + " sets unknown '" +
                             cond.result + "'");
    }
  }
  return s;
}

/// Substitution under which the schema yields f, with side conditions
/// checked. Constants fixed by side conditions are dropped from the result.
inline std::optional<Substitution> match_schema(const Schema& schema,
                                                const Formula& f) {
  Substitution s;
  if (!detail::match_into(schema.pattern, f, s)) return std::nullopt;
  for (const auto& cond : schema.side_conditions) {
    if (!(cond.apply(s.constants) == s.constants.at(cond.result))) {
      return std::nullopt;
    }
  }
  for (const auto& cond : schema.side_conditions) s.constants.erase(cond.result);
  return s;
}

/// The schema instance under a substitution. Values of side-condition
/// results are computed when absent and checked when given. Throws
/// ProofFormatError when the substitution is incomplete or ill-kinded.
inline Formula instantiate(const Schema& schema, Substitution s) {
  for (const auto& [name, kind] : schema.metavariables()) {
    if (kind == MetaKind::Body || kind == MetaKind::Atom ||
        kind == MetaKind::Formula) {
      auto it = s.formulas.find(name);
      if (it == s.formulas.end()) {
        throw ProofFormatError("no value for metavariable '" + name + "'");
      }
      if (kind == MetaKind::Body && !is_announcement_body(it->second)) {
        throw ProofFormatError("'" + print(it->second) + "' is not an announcement body");
      }
      if (kind == MetaKind::Atom && it->second.kind() != Kind::Atom) {
        throw ProofFormatError("'" + print(it->second) + "' is not an atom");
      }
    }
    if (kind == MetaKind::Const) {
      auto it = s.constants.find(name);
      if (it == s.constants.end()) {
        throw ProofFormatError("no value for metavariable '" + name + "'");
      }
      if (it->second.is_zero() || it->second.is_one()) {
        throw ProofFormatError("constant '" + name + "' must lie strictly between 0 and 1");
      }
    }
  }
  for (const auto& cond : schema.side_conditions) {
    const TruthValue v = cond.apply(s.constants);
    auto [it, fresh] = s.constants.emplace(cond.result, v);
    if (!fresh && !(it->second == v)) {
      throw ProofFormatError("side condition of " + schema.name + " fails for '" +
                             cond.result + "'");
    }
  }
  return detail::build(schema.pattern, s);
}

/// Named collection of axiom schemas.
class SchemaDatabase {
 public:
  void add(Schema s) {
    for (auto& existing : schemas_) {
      if (existing.name == s.name) {
        existing = std::move(s);
        return;
      }
    }
    schemas_.push_back(std::move(s));
  }

  const Schema* find(const std::string& name) const {
    for (const auto& s : schemas_) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }

  const std::vector<Schema>& schemas() const { return schemas_; }

 private:
  std::vector<Schema> schemas_;
};

/// The axioms of the reduction calculus: the BL axioms with the residuation
/// pair in its standard form, the Goedel axiom, the modal axioms K and Z,
/// the Delta and constant axioms, the two modal Delta/constant axioms
/// (conjectural), and the eight announcement reduction axioms.
inline const SchemaDatabase& standard_schemas() {
  static const SchemaDatabase db = [] {
    SchemaDatabase d;
    using SC = SideCondition;
    d.add(make_schema("BL1", "(phi -> psi) -> ((psi -> chi) -> (phi -> chi))", {}, false, "BL"));
    d.add(make_schema("BL2", "phi & (phi -> psi) -> psi & (psi -> phi)", {}, false, "BL"));
    d.add(make_schema("BL3a", "(phi & psi -> chi) -> (phi -> (psi -> chi))", {}, false, "BL"));
    d.add(make_schema("BL3b", "(phi -> (psi -> chi)) -> (phi & psi -> chi)", {}, false, "BL"));
    d.add(make_schema("BL4", "((phi -> psi) -> chi) -> (((psi -> phi) -> chi) -> chi)", {}, false, "BL"));
    d.add(make_schema("BL5", "bot -> phi", {}, false, "BL"));
    d.add(make_schema("G", "phi -> phi & phi", {}, false, "G"));
    d.add(make_schema("K", "K{a}(phi -> psi) -> (K{a} phi -> K{a} psi)", {}, false, "modal"));
    d.add(make_schema("Z", "~~K{a} phi -> K{a} ~~phi", {}, false, "modal"));
    d.add(make_schema("BK1", "c & d <-> e", {SC{"e", SideOp::TNorm, {"c", "d"}}}, false, "constants"));
    d.add(make_schema("BK2", "(c -> d) <-> e", {SC{"e", SideOp::Residuum, {"c", "d"}}}, false, "constants"));
    d.add(make_schema("D1", "D phi | ~D phi", {}, false, "delta"));
    d.add(make_schema("D2", "D (phi | psi) -> D phi | D psi", {}, false, "delta"));
    d.add(make_schema("D3", "D phi -> phi", {}, false, "delta"));
    d.add(make_schema("D4", "D phi -> D D phi", {}, false, "delta"));
    d.add(make_schema("D5", "D (phi -> psi) -> (D phi -> D psi)", {}, false, "delta"));
    d.add(make_schema("DC", "D c <-> e", {SC{"e", SideOp::Delta, {"c"}}}, false, "constants"));
    d.add(make_schema("KD", "D K{a} phi -> K{a} D phi", {}, true, "modal-delta"));
    d.add(make_schema("KC", "K{a}(c -> phi) <-> (c -> K{a} phi)", {}, true, "modal-constants"));
    d.add(make_schema("PA1", "[lambda]bot <-> (lambda -> bot)", {}, false, "announcement"));
    d.add(make_schema("PA2", "[lambda]p <-> (lambda -> p)", {}, false, "announcement"));
    d.add(make_schema("PA3", "[lambda](phi & psi) <-> ([lambda]phi & [lambda]psi)", {}, false, "announcement"));
    d.add(make_schema("PA4", "[lambda](phi -> psi) <-> ([lambda]phi -> [lambda]psi)", {}, false, "announcement"));
    d.add(make_schema("PA5", "[lambda]K{a} phi <-> (lambda -> K{a}[lambda]phi)", {}, false, "announcement"));
    d.add(make_schema("PA6", "[lambda][mu]phi <-> [lambda & [lambda]mu]phi", {}, false, "announcement"));
    d.add(make_schema("PA7", "[lambda]D phi <-> (lambda -> D [lambda]phi)", {}, false, "announcement"));
    d.add(make_schema("PA8", "[lambda]c <-> (lambda -> c)", {}, false, "announcement"));
    return d;
  }();
  return db;
}

// ---------------------------------------------------------------------------
// Proofs

struct Justification {
  enum class Rule { Premise, Axiom, ModusPonens, DeltaNec, KNec };
  Rule rule = Rule::Premise;
  /// 1-based premise index, or 1-based line references.
  std::size_t first = 0;
  std::size_t second = 0;
  std::string schema;
  /// Raw "name := value" bindings; resolved against the schema when checked.
  /// Empty means "infer by matching".
  std::vector<std::pair<std::string, std::string>> bindings;
  std::string agent;
};

struct ProofLine {
  Formula formula;
  Justification why;
};

struct Proof {
  std::vector<Formula> premises;
  std::vector<ProofLine> lines;
};

struct ProofVerdict {
  bool accepted = true;
  /// 1-based line of the first failure; 0 when accepted.
  std::size_t line = 0;
  std::string reason;
};

struct ProofOptions {
  /// Restrict Delta necessitation to premise-free lines.
  bool strict_delta_nec = false;
};

/// Resolves raw bindings against the metavariables of a schema.
inline Substitution resolve_bindings(
    const Schema& schema,
    const std::vector<std::pair<std::string, std::string>>& bindings) {
  const auto metas = schema.metavariables();
  const auto agents = schema.agent_metavariables();
  Substitution s;
  for (const auto& [key, value] : bindings) {
    if (agents.count(key)) {
      s.agents[key] = value;
      continue;
    }
    auto it = metas.find(key);
    if (it == metas.end()) {
      throw ProofFormatError("schema " + schema.name + " has no metavariable '" + key + "'");
    }
    try {
      if (it->second == MetaKind::Const || it->second == MetaKind::Result) {
        s.constants[key] = TruthValue::parse(value);
      } else {
        s.formulas[key] = parse(value);
      }
    } catch (const Error& e) {
      throw ProofFormatError("bad value for '" + key + "': " + e.what());
    }
  }
  return s;
}

/// Line-by-line check. K necessitation needs a premise-free ancestry; Delta
/// necessitation applies to any line unless options say otherwise.
inline std::vector<bool> premise_taint(const Proof& proof) {
  std::vector<bool> tainted;
  for (const auto& line : proof.lines) {
    const auto& j = line.why;
    bool t = false;
    auto at = [&](std::size_t i) {
      return i >= 1 && i <= tainted.size() ? static_cast<bool>(tainted[i - 1]) : false;
    };
    switch (j.rule) {
      case Justification::Rule::Premise:
        t = true;
        break;
      case Justification::Rule::Axiom:
      case Justification::Rule::KNec:
        t = false;
        break;
      case Justification::Rule::ModusPonens:
        t = at(j.first) || at(j.second);
        break;
      case Justification::Rule::DeltaNec:
        t = at(j.first);
        break;
    }
    tainted.push_back(t);
  }
  return tainted;
}

inline ProofVerdict check_proof(const Proof& proof,
                                const SchemaDatabase& db = standard_schemas(),
                                const ProofOptions& options = {}) {
  std::vector<bool> tainted;
  for (std::size_t k = 1; k <= proof.lines.size(); ++k) {
    const ProofLine& line = proof.lines[k - 1];
    const Justification& j = line.why;
    auto reject = [&](std::string reason) {
      return ProofVerdict{false, k, std::move(reason)};
    };
    auto earlier = [&](std::size_t i) { return i >= 1 && i < k; };
    bool t = false;
    switch (j.rule) {
      case Justification::Rule::Premise: {
        if (j.first < 1 || j.first > proof.premises.size()) {
          return reject("no premise " + std::to_string(j.first));
        }
        if (!(proof.premises[j.first - 1] == line.formula)) {
          return reject("formula differs from premise " + std::to_string(j.first));
        }
        t = true;
        break;
      }
      case Justification::Rule::Axiom: {
        const Schema* schema = db.find(j.schema);
        if (!schema) return reject("unknown axiom schema '" + j.schema + "'");
        if (j.bindings.empty()) {
          if (!match_schema(*schema, line.formula)) {
            return reject("not an instance of " + j.schema);
          }
        } else {
          Formula expected;
          try {
            expected = instantiate(*schema, resolve_bindings(*schema, j.bindings));
          } catch (const ProofFormatError& e) {
            return reject(std::string("bad substitution: ") + e.what());
          }
          if (!(expected == line.formula)) {
            return reject("substitution yields '" + print(expected) + "'");
          }
        }
        break;
      }
      case Justification::Rule::ModusPonens: {
        if (!earlier(j.first) || !earlier(j.second)) {
          return reject("mp must cite earlier lines");
        }
        const Formula& minor = proof.lines[j.first - 1].formula;
        const Formula& major = proof.lines[j.second - 1].formula;
        if (major.kind() != Kind::Implies) {
          return reject("line " + std::to_string(j.second) + " is not an implication");
        }
        if (!(major.left() == minor)) {
          return reject("antecedent of line " + std::to_string(j.second) +
                        " differs from line " + std::to_string(j.first));
        }
        if (!(major.right() == line.formula)) {
          return reject("consequent of line " + std::to_string(j.second) +
                        " differs from this line");
        }
        t = tainted[j.first - 1] || tainted[j.second - 1];
        break;
      }
      case Justification::Rule::DeltaNec: {
        if (!earlier(j.first)) return reject("dnec must cite an earlier line");
        if (!(delta(proof.lines[j.first - 1].formula) == line.formula)) {
          return reject("formula is not D of line " + std::to_string(j.first));
        }
        t = tainted[j.first - 1];
        if (t && options.strict_delta_nec) {
          return reject("dnec on a line that depends on premises (strict mode)");
        }
        break;
      }
      case Justification::Rule::KNec: {
        if (!earlier(j.first)) return reject("knec must cite an earlier line");
        if (!(know(j.agent, proof.lines[j.first - 1].formula) == line.formula)) {
          return reject("formula is not K{" + j.agent + "} of line " +
                        std::to_string(j.first));
        }
        if (tainted[j.first - 1]) {
          return reject("knec on line " + std::to_string(j.first) +
                        ", which depends on premises");
        }
        break;
      }
    }
    tainted.push_back(t);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Proof files
//
//   premises:
//   p
//   1. p ; premise 1
//   2. p -> p & p ; axiom G {phi := p}
//   3. p & p ; mp 1 2
//
// Blank lines and lines starting with "//" are ignored.

namespace detail {

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ' ' || ch == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::size_t to_index(const std::string& s, std::size_t lineno) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ProofFormatError("line " + std::to_string(lineno) + ": expected a number, got '" +
                           s + "'");
  }
  return std::stoul(s);
}

inline Justification parse_justification(const std::string& text, std::size_t lineno) {
  Justification j;
  auto brace = text.find('{');
  const auto head = words(text.substr(0, brace));
  auto err = [&](const std::string& m) {
    return ProofFormatError("line " + std::to_string(lineno) + ": " + m);
  };
  if (head.empty()) throw err("missing justification");
  const std::string& rule = head[0];
  auto expect_args = [&](std::size_t n) {
    if (head.size() != n + 1 || brace != std::string::npos) {
      throw err("'" + rule + "' takes " + std::to_string(n) + " argument(s)");
    }
  };
  if (rule == "premise") {
    expect_args(1);
    j.rule = Justification::Rule::Premise;
    j.first = to_index(head[1], lineno);
  } else if (rule == "mp") {
    expect_args(2);
    j.rule = Justification::Rule::ModusPonens;
    j.first = to_index(head[1], lineno);
    j.second = to_index(head[2], lineno);
  } else if (rule == "dnec") {
    expect_args(1);
    j.rule = Justification::Rule::DeltaNec;
    j.first = to_index(head[1], lineno);
  } else if (rule == "knec") {
    expect_args(2);
    j.rule = Justification::Rule::KNec;
    j.first = to_index(head[1], lineno);
    j.agent = head[2];
  } else if (rule == "axiom") {
    if (head.size() != 2) throw err("'axiom' takes a schema name");
    j.rule = Justification::Rule::Axiom;
    j.schema = head[1];
    if (brace != std::string::npos) {
      const auto close = text.rfind('}');
      if (close == std::string::npos || close < brace) throw err("unclosed '{'");
      if (!trim(text.substr(close + 1)).empty()) throw err("text after '}'");
      const std::string body = text.substr(brace + 1, close - brace - 1);
      std::size_t start = 0;
      while (start <= body.size()) {
        auto comma = body.find(',', start);
        std::string item = trim(body.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!item.empty()) {
          auto eq = item.find(":=");
          if (eq == std::string::npos) throw err("binding without ':=' in '" + item + "'");
          j.bindings.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 2)));
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (j.bindings.empty()) throw err("empty substitution");
    }
  } else {
    throw err("unknown rule '" + rule + "'");
  }
  return j;
}

}  // namespace detail

inline Proof parse_proof(const std::string& text) {
  Proof proof;
  bool in_premises = false;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    std::string raw = text.substr(start, nl == std::string::npos ? std::string::npos
                                                                 : nl - start);
    start = nl == std::string::npos ? text.size() : nl + 1;
    ++lineno;
    const std::string line = detail::trim(raw);
    if (line.empty() || line.rfind("//", 0) == 0) continue;
    if (line == "premises:") {
      if (!proof.lines.empty() || in_premises) {
        throw ProofFormatError("line " + std::to_string(lineno) + ": misplaced 'premises:'");
      }
      in_premises = true;
      continue;
    }
    const auto dot = line.find('.');
    const bool numbered = dot != std::string::npos && dot > 0 &&
                          line.substr(0, dot).find_first_not_of("0123456789") ==
                              std::string::npos;
    try {
      if (!numbered) {
        if (!in_premises || !proof.lines.empty()) {
          throw ProofFormatError("line " + std::to_string(lineno) +
                                 ": expected 'n. formula ; justification'");
        }
        proof.premises.push_back(parse(line));
        continue;
      }
      const std::size_t n = std::stoul(line.substr(0, dot));
      if (n != proof.lines.size() + 1) {
        throw ProofFormatError("line " + std::to_string(lineno) + ": expected step " +
                               std::to_string(proof.lines.size() + 1) + ", found " +
                               std::to_string(n));
      }
      const auto semi = line.find(';', dot);
      if (semi == std::string::npos) {
        throw ProofFormatError("line " + std::to_string(lineno) + ": missing ';'");
      }
      Formula f = parse(line.substr(dot + 1, semi - dot - 1));
      proof.lines.push_back(
          ProofLine{std::move(f), detail::parse_justification(line.substr(semi + 1), lineno)});
    } catch (const ParseError& e) {
      throw ProofFormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return proof;
}

// ---------------------------------------------------------------------------
// Soundness audit

struct AuditFinding {
  std::size_t line;  // 1-based
  bool premise_free;
  Verdict verdict;
};

struct AuditReport {
  std::size_t lines_checked = 0;
  std::vector<AuditFinding> counterexamples;

  bool sound_on_suite() const { return counterexamples.empty(); }
};

/// Checks every line of an accepted proof against the model space:
/// premise-free lines must be globally valid; a line that depends on
/// premises must be 1 at every world where all premises are 1.
inline AuditReport audit_soundness(const Proof& proof, const ModelSpaceParams& params,
                                   const SchemaDatabase& db = standard_schemas(),
                                   const ProofOptions& options = {}) {
  AuditReport report;
  if (proof.lines.empty()) return report;
  const ProofVerdict v = check_proof(proof, db, options);
  if (!v.accepted) {
    throw Error("audit of a rejected proof (line " + std::to_string(v.line) + ": " +
                v.reason + ")");
  }
  const auto tainted = premise_taint(proof);
  std::vector<Formula> all = proof.premises;
  for (const auto& l : proof.lines) all.push_back(l.formula);
  ModelSpace space(detail::with_constants(params, all));

  const std::size_t n = proof.lines.size();
  auto verdicts = search_space(
      space, n, [&](Evaluator& ev, std::size_t k) -> std::optional<Failure> {
        std::vector<bool> premises_hold(ev.model().world_count(), true);
        if (tainted[k]) {
          for (const Formula& prem : proof.premises) {
            const auto pv = ev.values(prem);
            for (std::size_t w = 0; w < pv.size(); ++w) {
              if (!pv[w].is_one()) premises_hold[w] = false;
            }
          }
        }
        const auto values = ev.values(proof.lines[k].formula);
        for (std::size_t w = 0; w < values.size(); ++w) {
          if (premises_hold[w] && !values[w].is_one()) return Failure{w, values[w], {}};
        }
        return std::nullopt;
      });
  report.lines_checked = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (!verdicts[k].valid()) {
      report.counterexamples.push_back({k + 1, !tainted[k], std::move(verdicts[k])});
    }
  }
  return report;
}

}  // namespace gpal

#endif  // GPAL_CALCULUS_HPP
