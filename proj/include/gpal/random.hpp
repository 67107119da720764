#ifndef GPAL_RANDOM_HPP
#define GPAL_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gpal/checker.hpp"
#include "gpal/formula.hpp"
#include "gpal/model.hpp"

namespace gpal {

/// Shape of randomly generated formulas. Depth counts edges, so atoms have
/// depth 0 and V(p)=c has depth 1.
struct FormulaGenOptions {
  std::size_t max_depth = 4;
  std::vector<std::string> atoms = {"p", "q"};
  std::vector<std::string> agents = {"a"};
  /// Values for constant leaves (strictly between 0 and 1).
  std::vector<TruthValue> constants = {TruthValue::of(1, 3), TruthValue::of(1, 2)};
  /// Thresholds of value formulas.
  std::vector<TruthValue> thresholds = {TruthValue::zero(), TruthValue::of(1, 3),
                                        TruthValue::of(1, 2), TruthValue::one()};
  bool use_delta = true;
  bool use_constants = true;
  bool use_announcements = true;
  /// Replace every announcement body by its desugared form.
  bool desugar_bodies = false;
};

/// Seeded generator of formulas and announcement bodies.
class FormulaGenerator {
 public:
  FormulaGenerator(FormulaGenOptions options, std::uint64_t seed)
      : o_(std::move(options)), rng_(seed) {}

  /// A formula of FPA_Delta(Q) (or FPA, if Delta and constants are off).
  Formula formula() { return formula(o_.max_depth); }

  /// An announcement body of depth at least 1.
  Formula body() { return body(std::max<std::size_t>(1, o_.max_depth)); }

  /// A body whose root is a connective, K{a} or an announcement rather than
  /// a bare value formula.
  Formula composite_body() {
    const std::size_t d = std::max<std::size_t>(2, o_.max_depth);
    switch (pick(5)) {
      case 0:
        return land(body(d - 1), body(d - 1));
      case 1:
        return implies(body(d - 1), body(d - 1));
      case 2:
        return know(agent(), body(d - 1));
      case 3:
        return announce(body(d - 1), body(d - 1));
      default:
        return o_.use_delta ? delta(body(d - 1)) : neg(body(d - 1));
    }
  }

  Formula formula(std::size_t depth) {
    if (depth == 0) return leaf();
    // 0 leaf, 1 and, 2 implies, 3 know, 4 delta, 5 announce
    for (;;) {
      switch (pick(6)) {
        case 0:
          return leaf();
        case 1:
          return land(formula(depth - 1), formula(depth - 1));
        case 2:
          return implies(formula(depth - 1), formula(depth - 1));
        case 3:
          return know(agent(), formula(depth - 1));
        case 4:
          if (!o_.use_delta) continue;
          return delta(formula(depth - 1));
        default: {
          if (!o_.use_announcements || depth < 2) continue;
          Formula b = body(depth - 1);
          if (o_.desugar_bodies) b = desugar_value(b);
          return announce(std::move(b), formula(depth - 1));
        }
      }
    }
  }

  Formula body(std::size_t depth) {
    if (depth <= 1) return value_formula(0);
    // 0,1 value formula, 2 and, 3 implies, 4 negation, 5 know, 6 delta,
    // 7 announce
    for (;;) {
      switch (pick(8)) {
        case 0:
        case 1:
          return value_formula(depth - 1);
        case 2:
          return land(body(depth - 1), body(depth - 1));
        case 3:
          return implies(body(depth - 1), body(depth - 1));
        case 4:
          return neg(body(depth - 1));
        case 5:
          return know(agent(), body(depth - 1));
        case 6:
          if (!o_.use_delta) continue;
          return delta(body(depth - 1));
        default:
          if (!o_.use_announcements || depth < 2) continue;
          return announce(body(depth - 1), body(depth - 1));
      }
    }
  }

 private:
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  Formula leaf() {
    const std::size_t k = pick(o_.use_constants ? 6 : 5);
    if (k == 0) return bot();
    if (k == 5) return constant(o_.constants[pick(o_.constants.size())]);
    return atom(o_.atoms[pick(o_.atoms.size())]);
  }

  const std::string& agent() { return o_.agents[pick(o_.agents.size())]; }

  Formula value_formula(std::size_t subject_depth) {
    // Subjects stay small so bodies do not dominate the formula.
    Formula s = formula(std::min<std::size_t>(subject_depth, 1));
    const TruthValue& c = o_.thresholds[pick(o_.thresholds.size())];
    return pick(2) == 0 ? val_eq(std::move(s), c) : val_gt(std::move(s), c);
  }

  FormulaGenOptions o_;
  std::mt19937_64 rng_;
};

/// A random model drawn from the space described by params (the mode and
/// sample count are ignored).
inline KripkeModel random_model(ModelSpaceParams params, std::uint64_t seed) {
  params.mode = SearchMode::Random;
  params.sample_count = 1;
  params.seed = seed;
  return ModelSpace(std::move(params)).model(0);
}

}  // namespace gpal

#endif  // GPAL_RANDOM_HPP
