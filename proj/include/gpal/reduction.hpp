#ifndef GPAL_REDUCTION_HPP
#define GPAL_REDUCTION_HPP

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gpal/formula.hpp"
#include "gpal/truth_value.hpp"

namespace gpal {

/// Natural-number complexity. Nested announcements multiply, so this is
/// unbounded.
using Measure = BigInt;

namespace detail {

class Measurer {
 public:
  /// Complexity of a formula without value nodes.
  const Measure& of(const Formula& f) {
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second.second;
    Measure m;
    switch (f.kind()) {
      case Kind::Bottom:
      case Kind::Atom:
      case Kind::Constant:
        m = 1;
        break;
      case Kind::And:
      case Kind::Implies: {
        const Measure& a = of(f.left());
        const Measure& b = of(f.right());
        m = 1 + (a < b ? b : a);
        break;
      }
      case Kind::Delta:
      case Kind::Know:
        m = 1 + of(f.left());
        break;
      case Kind::Announce:
        m = (4 + of(f.left())) * of(f.right());
        break;
      case Kind::ValEq:
      case Kind::ValGt:
        // Callers desugar first; reaching here is a logic error.
        throw Error("complexity of an undesugared value formula");
    }
    return memo_.emplace(f.id(), std::make_pair(f, std::move(m))).first->second.second;
  }

 private:
  // Holding the formula keeps its node, and so the key, from being reused.
  std::unordered_map<const Node*, std::pair<Formula, Measure>> memo_;
};

inline bool has_value_nodes(const Formula& f) {
  return contains_kind(f, Kind::ValEq) || contains_kind(f, Kind::ValGt);
}

}  // namespace detail

/// Complexity measure: 1 for atoms, constants and bot; 1 + max for & and ->;
/// 1 + c for D and K{a}; (4 + c(lambda)) * c(phi) for [lambda]phi. Value
/// formulas are abbreviations and are desugared before measuring.
inline Measure complexity(const Formula& f) {
  detail::Measurer m;
  if (detail::has_value_nodes(f)) return m.of(desugar_value(f));
  return m.of(f);
}

/// One rewrite performed by the translation.
struct ReductionStep {
  /// PA1..PA8 for announcement clauses, VEQ/VGT for value abbreviations.
  std::string rule;
  Formula before;
  Formula after;
  Measure complexity_before;
  Measure complexity_after;

  bool announcement_clause() const { return rule.rfind("PA", 0) == 0; }

  /// Announcement clauses strictly decrease the measure; abbreviation steps
  /// leave it unchanged (the measure already sees through them).
  bool measure_ok() const {
    return announcement_clause() ? complexity_after < complexity_before
                                 : complexity_after <= complexity_before;
  }
};

namespace detail {

/// One-level expansion of a value node (children untouched).
inline Formula expand_value_node(const Formula& v) {
  if (v.kind() == Kind::ValEq) {
    return delta(iff(v.left(), constant(v.value())));
  }
  return neg(delta(implies(v.left(), constant(v.value()))));
}

/// Rewrites [lambda]body by the clause selected by the head of body.
inline Formula rewrite_announcement(const Formula& ann, std::string& rule) {
  const Formula& lambda = ann.left();
  const Formula& body = ann.right();
  switch (body.kind()) {
    case Kind::Bottom:
      rule = "PA1";
      return implies(lambda, bot());
    case Kind::Atom:
      rule = "PA2";
      return implies(lambda, body);
    case Kind::And:
      rule = "PA3";
      return land(announce(lambda, body.left()),
                  announce(lambda, body.right()));
    case Kind::Implies:
      rule = "PA4";
      return implies(announce(lambda, body.left()),
                     announce(lambda, body.right()));
    case Kind::Know:
      rule = "PA5";
      return implies(lambda,
                     know(body.name(), announce(lambda, body.left())));
    case Kind::Announce:
      rule = "PA6";
      return announce(land(lambda, announce(lambda, body.left())),
                      body.right());
    case Kind::Delta:
      rule = "PA7";
      return implies(lambda, delta(announce(lambda, body.left())));
    case Kind::Constant:
      rule = "PA8";
      return implies(lambda, body);
    case Kind::ValEq:
    case Kind::ValGt:
      rule = body.kind() == Kind::ValEq ? "VEQ" : "VGT";
      return announce(lambda, expand_value_node(body));
  }
  return ann;
}

/// The translation as structural recursion. With a trace sink every clause
/// firing is recorded in recursion order and memoization is off, so the
/// trace replays step by step; without one, results are memoized.
class Translator {
 public:
  explicit Translator(std::vector<ReductionStep>* trace = nullptr)
      : trace_(trace) {}

  Formula run(const Formula& f) {
    if (!trace_) {
      if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    }
    Formula out = compute(f);
    if (!trace_) memo_.emplace(f, out);
    return out;
  }

 private:
  Formula compute(const Formula& f) {
    switch (f.kind()) {
      case Kind::Bottom:
      case Kind::Atom:
      case Kind::Constant:
        return f;
      case Kind::And:
      case Kind::Implies: {
        Formula a = run(f.left());
        Formula b = run(f.right());
        if (a.id() == f.left().id() && b.id() == f.right().id()) return f;
        return make_node(f.kind(), {}, {}, std::move(a), std::move(b));
      }
      case Kind::Delta: {
        Formula a = run(f.left());
        return a.id() == f.left().id() ? f : delta(std::move(a));
      }
      case Kind::Know: {
        Formula a = run(f.left());
        return a.id() == f.left().id() ? f : know(f.name(), std::move(a));
      }
      case Kind::ValEq:
      case Kind::ValGt: {
        Formula rewritten = expand_value_node(f);
        record(f.kind() == Kind::ValEq ? "VEQ" : "VGT", f, rewritten);
        return run(rewritten);
      }
      case Kind::Announce: {
        std::string rule;
        Formula rewritten = rewrite_announcement(f, rule);
        record(rule, f, rewritten);
        return run(rewritten);
      }
    }
    return f;
  }

  void record(const std::string& rule, const Formula& before,
              const Formula& after) {
    if (!trace_) return;
    trace_->push_back(ReductionStep{rule, before, after, complexity(before),
                                    complexity(after)});
  }

  std::vector<ReductionStep>* trace_;
  std::unordered_map<Formula, Formula, FormulaHash> memo_;
};

}  // namespace detail

/// Eliminates announcements and value formulas, producing a formula of
/// K_Delta(Q) with the same truth degree everywhere.
inline Formula translate(const Formula& f) {
  return detail::Translator().run(f);
}

/// The rewrites translate performs, in order. Each step rewrites the first
/// announcement or value node (pre-order) of the current formula.
inline std::vector<ReductionStep> translate_trace(const Formula& f) {
  std::vector<ReductionStep> steps;
  detail::Translator(&steps).run(f);
  return steps;
}

namespace detail {

inline bool is_redex(const Formula& f) {
  return f.kind() == Kind::Announce || f.kind() == Kind::ValEq ||
         f.kind() == Kind::ValGt;
}

inline bool has_redex(const Formula& f) {
  return contains_kind(f, Kind::Announce) || contains_kind(f, Kind::ValEq) ||
         contains_kind(f, Kind::ValGt);
}

/// Replaces the first redex of f in pre-order, which must equal `before`.
/// Returns nullopt if there is no redex or it differs from `before`.
inline std::optional<Formula> replace_first_redex(const Formula& f,
                                                  const Formula& before,
                                                  const Formula& after,
                                                  bool& found) {
  if (is_redex(f)) {
    found = true;
    if (!(f == before)) return std::nullopt;
    return after;
  }
  if (!has_redex(f)) return f;
  switch (f.kind()) {
    case Kind::Bottom:
    case Kind::Atom:
    case Kind::Constant:
      return f;
    case Kind::Delta:
    case Kind::Know: {
      auto a = replace_first_redex(f.left(), before, after, found);
      if (!a) return std::nullopt;
      return f.kind() == Kind::Delta ? delta(*a) : know(f.name(), *a);
    }
    default: {
      auto a = replace_first_redex(f.left(), before, after, found);
      if (!a) return std::nullopt;
      if (found) return make_node(f.kind(), {}, {}, *a, f.right());
      auto b = replace_first_redex(f.right(), before, after, found);
      if (!b) return std::nullopt;
      return make_node(f.kind(), {}, {}, f.left(), *b);
    }
  }
}

}  // namespace detail

/// Applies the steps of a trace to f in order. Returns nullopt if some step
/// does not rewrite the first redex of the current formula.
inline std::optional<Formula> replay_trace(const Formula& f,
                                           const std::vector<ReductionStep>& steps) {
  Formula current = f;
  for (const ReductionStep& s : steps) {
    bool found = false;
    auto next = detail::replace_first_redex(current, s.before, s.after, found);
    if (!next || !found) return std::nullopt;
    current = *next;
  }
  return current;
}

/// One line per step: rule, complexity before, complexity after, before,
/// after; tab-separated.
inline std::string format_trace(const std::vector<ReductionStep>& steps) {
  std::string out;
  for (const ReductionStep& s : steps) {
    out += s.rule + "\t" + s.complexity_before.str() + "\t" +
           s.complexity_after.str() + "\t" + print(s.before) + "\t" +
           print(s.after) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Properties of the measure that make the translation terminate.

struct MeasureCheck {
  /// Roman numeral of the property: "i" .. "ix".
  std::string property;
  Formula subject;
  Measure lhs;
  Measure rhs;
  /// ">=" for property (i), ">" otherwise.
  std::string relation;
  bool holds;
};

struct MeasureReport {
  /// True if the input contained value formulas that were desugared first.
  bool desugared = false;
  std::vector<MeasureCheck> checks;

  bool all_hold() const {
    for (const auto& c : checks) {
      if (!c.holds) return false;
    }
    return true;
  }
  std::size_t violations() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.holds ? 0 : 1;
    return n;
  }
};

/// Checks, on f and its subformulas:
///   (i)    c(g) >= c(h) for h in Sub(g), taken for g = f against every
///          subformula and for every subformula against its children;
///   (ii)-(ix) for every announcement [lambda]psi in Sub(f), the inequality
///          between it and its one-step rewrite selected by the head of psi.
inline MeasureReport check_measure_properties(const Formula& f) {
  MeasureReport report;
  Formula g = f;
  if (detail::has_value_nodes(f)) {
    g = desugar_value(f);
    report.desugared = true;
  }
  detail::Measurer c;
  auto add = [&](std::string prop, const Formula& subject, const Formula& lhs,
                 const Formula& rhs, bool strict) {
    Measure l = c.of(lhs);
    Measure r = c.of(rhs);
    const bool holds = strict ? l > r : l >= r;
    report.checks.push_back(MeasureCheck{std::move(prop), subject, std::move(l),
                                         std::move(r), strict ? ">" : ">=",
                                         holds});
  };

  const auto subs = subformulas(g);
  for (const Formula& s : subs) {
    add("i", s, g, s, false);
    switch (s.kind()) {
      case Kind::Delta:
      case Kind::Know:
        add("i", s.left(), s, s.left(), false);
        break;
      case Kind::And:
      case Kind::Implies:
      case Kind::Announce:
        add("i", s.left(), s, s.left(), false);
        add("i", s.right(), s, s.right(), false);
        break;
      default:
        break;
    }
  }

  for (const Formula& s : subs) {
    if (s.kind() != Kind::Announce) continue;
    static const std::unordered_map<int, const char*> kProperty = {
        {static_cast<int>(Kind::Atom), "ii"},
        {static_cast<int>(Kind::Constant), "iii"},
        {static_cast<int>(Kind::Bottom), "iv"},
        {static_cast<int>(Kind::Implies), "v"},
        {static_cast<int>(Kind::And), "vi"},
        {static_cast<int>(Kind::Know), "vii"},
        {static_cast<int>(Kind::Delta), "viii"},
        {static_cast<int>(Kind::Announce), "ix"},
    };
    auto it = kProperty.find(static_cast<int>(s.right().kind()));
    if (it == kProperty.end()) continue;
    std::string rule;
    Formula rewritten = detail::rewrite_announcement(s, rule);
    add(it->second, s, s, rewritten, true);
  }
  return report;
}

}  // namespace gpal

#endif  // GPAL_REDUCTION_HPP
