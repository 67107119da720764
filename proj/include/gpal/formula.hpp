#ifndef GPAL_FORMULA_HPP
#define GPAL_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>

#include "gpal/errors.hpp"
#include "gpal/truth_value.hpp"

namespace gpal {

enum class Kind : std::uint8_t {
  Bottom,
  Atom,
  Constant,
  And,
  Implies,
  Delta,
  Know,
  Announce,
  ValEq,
  ValGt,
};

struct Node;

namespace detail {
inline const std::shared_ptr<const Node>& bottom_ptr();
}  // namespace detail

/// Immutable formula tree shared by every language of the logic.
///
/// Copies share structure. Equality and ordering are structural; a cached
/// hash makes unequal comparisons cheap.

class Formula {
 public:
  Formula();  // bot

  Kind kind() const;
  /// Atom name or agent of a Know node.
  const std::string& name() const;
  /// Constant value, or the threshold of a value formula.
  const TruthValue& value() const;
  /// First child: left operand, Delta/Know body, announcement, value subject.
  const Formula& left() const;
  /// Second child: right operand, or the body of an announcement.
  const Formula& right() const;

  std::size_t hash() const;
  const Node* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Null {};
  explicit Formula(Null) {}
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Formula make_node(Kind, std::string, TruthValue, Formula, Formula);
  friend const std::shared_ptr<const Node>& detail::bottom_ptr();

  std::shared_ptr<const Node> node_;
};

struct Node {
  Kind kind;
  std::string name;
  TruthValue value;
  Formula left;
  Formula right;
  std::size_t hash;
  std::size_t size;
  /// Bit k set iff a node of Kind k occurs in the subtree.
  std::uint16_t kinds;
};

inline std::uint16_t kind_bit(Kind k) {
  return static_cast<std::uint16_t>(1u << static_cast<unsigned>(k));
}

namespace detail {

inline std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace detail

inline Formula make_node(Kind kind, std::string name, TruthValue value,
                         Formula left, Formula right) {
  std::size_t h = static_cast<std::size_t>(kind) * 0x100000001b3ull;
  std::size_t size = 1;
  std::uint16_t kinds = kind_bit(kind);
  switch (kind) {
    case Kind::Bottom:
      break;
    case Kind::Atom:
      h = detail::mix(h, std::hash<std::string>{}(name));
      break;
    case Kind::Constant:
      h = detail::mix(h, value.hash());
      break;
    case Kind::Know:
      h = detail::mix(h, std::hash<std::string>{}(name));
      h = detail::mix(h, left.hash());
      size += left.id()->size;
      kinds |= left.id()->kinds;
      break;
    case Kind::ValEq:
    case Kind::ValGt:
      h = detail::mix(h, value.hash());
      h = detail::mix(h, left.hash());
      size += left.id()->size;
      kinds |= left.id()->kinds;
      break;
    case Kind::Delta:
      h = detail::mix(h, left.hash());
      size += left.id()->size;
      kinds |= left.id()->kinds;
      break;
    case Kind::And:
    case Kind::Implies:
    case Kind::Announce:
      h = detail::mix(h, left.hash());
      h = detail::mix(h, right.hash());
      size += left.id()->size + right.id()->size;
      kinds |= left.id()->kinds | right.id()->kinds;
      break;
  }
  return Formula(std::make_shared<const Node>(
      Node{kind, std::move(name), std::move(value), std::move(left),
           std::move(right), h, size, kinds}));
}

namespace detail {

// The shared bottom node is built once; its own children are null pointers,
// so it cannot go through make_node (which would recurse into Formula()).
inline const std::shared_ptr<const Node>& bottom_ptr() {
  static const std::shared_ptr<const Node> node = std::make_shared<const Node>(
      Node{Kind::Bottom, {}, {}, Formula(Formula::Null{}),
           Formula(Formula::Null{}), 0x6a09e667f3bcc908ull, 1,
           kind_bit(Kind::Bottom)});
  return node;
}

}  // namespace detail

inline Formula::Formula() : node_(detail::bottom_ptr()) {}

inline Kind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const TruthValue& Formula::value() const { return node_->value; }
inline const Formula& Formula::left() const { return node_->left; }
inline const Formula& Formula::right() const { return node_->right; }
inline std::size_t Formula::hash() const { return node_->hash; }

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.size != y.size) return false;
  switch (x.kind) {
    case Kind::Bottom:
      return true;
    case Kind::Atom:
      return x.name == y.name;
    case Kind::Constant:
      return x.value == y.value;
    case Kind::Know:
      return x.name == y.name && x.left == y.left;
    case Kind::ValEq:
    case Kind::ValGt:
      return x.value == y.value && x.left == y.left;
    case Kind::Delta:
      return x.left == y.left;
    case Kind::And:
    case Kind::Implies:
    case Kind::Announce:
      return x.left == y.left && x.right == y.right;
  }
  return false;
}

/// Total order consistent with structural equality (hash first, then
/// structure). Not meaningful beyond use as a container key.
inline std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (auto c = x.hash <=> y.hash; c != 0) return c;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.value <=> y.value; c != 0) return c;
  switch (x.kind) {
    case Kind::Bottom:
    case Kind::Atom:
    case Kind::Constant:
      return std::strong_ordering::equal;
    case Kind::Know:
    case Kind::ValEq:
    case Kind::ValGt:
    case Kind::Delta:
      return x.left <=> y.left;
    case Kind::And:
    case Kind::Implies:
    case Kind::Announce:
      if (auto c = x.left <=> y.left; c != 0) return c;
      return x.right <=> y.right;
  }
  return std::strong_ordering::equal;
}

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Number of nodes in the tree (shared subtrees counted once per use).
inline std::size_t tree_size(const Formula& f) { return f.id()->size; }

// ---------------------------------------------------------------------------
// Constructors. Sugar (neg, lor, iff, top and the derived value relations)
// expands into core nodes immediately.

inline Formula bot() { return Formula(); }

inline Formula atom(std::string name) {
  return make_node(Kind::Atom, std::move(name), {}, {}, {});
}

inline Formula land(Formula a, Formula b) {
  return make_node(Kind::And, {}, {}, std::move(a), std::move(b));
}

inline Formula implies(Formula a, Formula b) {
  return make_node(Kind::Implies, {}, {}, std::move(a), std::move(b));
}

inline Formula top() { return implies(bot(), bot()); }

/// The constant c-bar. The endpoints are not constants of the language:
/// 0 yields bot and 1 yields top.
inline Formula constant(TruthValue c) {
  if (c.is_zero()) return bot();
  if (c.is_one()) return top();
  return make_node(Kind::Constant, {}, std::move(c), {}, {});
}

inline Formula delta(Formula a) {
  return make_node(Kind::Delta, {}, {}, std::move(a), {});
}

inline Formula know(std::string agent, Formula a) {
  return make_node(Kind::Know, std::move(agent), {}, std::move(a), {});
}

inline Formula announce(Formula announcement, Formula body) {
  return make_node(Kind::Announce, {}, {}, std::move(announcement),
                   std::move(body));
}

inline Formula val_eq(Formula subject, TruthValue c) {
  return make_node(Kind::ValEq, {}, std::move(c), std::move(subject), {});
}

inline Formula val_gt(Formula subject, TruthValue c) {
  return make_node(Kind::ValGt, {}, std::move(c), std::move(subject), {});
}

inline Formula neg(Formula a) { return implies(std::move(a), bot()); }

/// Goedel disjunction ((a -> b) -> b) & ((b -> a) -> a).
inline Formula lor(const Formula& a, const Formula& b) {
  return land(implies(implies(a, b), b), implies(implies(b, a), a));
}

inline Formula iff(const Formula& a, const Formula& b) {
  return land(implies(a, b), implies(b, a));
}

inline Formula val_ne(Formula s, TruthValue c) {
  return neg(val_eq(std::move(s), std::move(c)));
}
inline Formula val_le(Formula s, TruthValue c) {
  return neg(val_gt(std::move(s), std::move(c)));
}
inline Formula val_ge(const Formula& s, const TruthValue& c) {
  return lor(val_eq(s, c), val_gt(s, c));
}
inline Formula val_lt(const Formula& s, const TruthValue& c) {
  return neg(val_ge(s, c));
}

inline bool is_top(const Formula& f) {
  return f.kind() == Kind::Implies && f.left().kind() == Kind::Bottom &&
         f.right().kind() == Kind::Bottom;
}

// ---------------------------------------------------------------------------

namespace detail {

inline bool wrapped(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && i + 1 < s.size()) return false;
  }
  return true;
}

inline std::string unwrap(std::string s) {
  if (wrapped(s)) return s.substr(1, s.size() - 2);
  return s;
}

inline void print_to(const Formula& f, std::string& out);

inline std::string print_string(const Formula& f) {
  std::string s;
  print_to(f, s);
  return s;
}

inline void print_to(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Bottom:
      out += "bot";
      return;
    case Kind::Atom:
      out += f.name();
      return;
    case Kind::Constant:
      out += "#" + f.value().to_string();
      return;
    case Kind::And:
    case Kind::Implies:
      out += "(";
      print_to(f.left(), out);
      out += f.kind() == Kind::And ? " & " : " -> ";
      print_to(f.right(), out);
      out += ")";
      return;
    case Kind::Delta:
      out += "(D ";
      print_to(f.left(), out);
      out += ")";
      return;
    case Kind::Know:
      out += "(K{" + f.name() + "} ";
      print_to(f.left(), out);
      out += ")";
      return;
    case Kind::Announce:
      out += "([" + unwrap(print_string(f.left())) + "]";
      print_to(f.right(), out);
      out += ")";
      return;
    case Kind::ValEq:
    case Kind::ValGt:
      out += "(V(" + unwrap(print_string(f.left())) + ")";
      out += f.kind() == Kind::ValEq ? "=" : ">";
      out += f.value().to_string() + ")";
      return;
  }
}

}  // namespace detail

/// Fully parenthesized canonical text; the parser reads it back to an equal
/// tree. Brackets and V(...) delimit their contents, so the outermost
/// parentheses of an announcement or value subject are dropped there.
inline std::string print(const Formula& f) { return detail::print_string(f); }

inline std::ostream& operator<<(std::ostream& os, const Formula& f) {
  return os << print(f);
}

/// Sub(f): f and the subformulas of its immediate children.
inline std::set<Formula> subformulas(const Formula& f) {
  std::set<Formula> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (!out.insert(g).second) return;
    switch (g.kind()) {
      case Kind::Bottom:
      case Kind::Atom:
      case Kind::Constant:
        return;
      case Kind::Delta:
      case Kind::Know:
      case Kind::ValEq:
      case Kind::ValGt:
        walk(g.left());
        return;
      case Kind::And:
      case Kind::Implies:
      case Kind::Announce:
        walk(g.left());
        walk(g.right());
        return;
    }
  };
  walk(f);
  return out;
}

/// True if any node of f has the given kind.
inline bool contains_kind(const Formula& f, Kind k) {
  return (f.id()->kinds & kind_bit(k)) != 0;
}

/// Collects every constant value and value-formula threshold in f.
inline void collect_constants(const Formula& f, std::set<TruthValue>& out) {
  switch (f.kind()) {
    case Kind::Bottom:
    case Kind::Atom:
      return;
    case Kind::Constant:
      out.insert(f.value());
      return;
    case Kind::ValEq:
    case Kind::ValGt:
      out.insert(f.value());
      collect_constants(f.left(), out);
      return;
    case Kind::Delta:
    case Kind::Know:
      collect_constants(f.left(), out);
      return;
    case Kind::And:
    case Kind::Implies:
    case Kind::Announce:
      collect_constants(f.left(), out);
      collect_constants(f.right(), out);
      return;
  }
}

inline void collect_atoms(const Formula& f, std::set<std::string>& out) {
  for (const Formula& g : subformulas(f)) {
    if (g.kind() == Kind::Atom) out.insert(g.name());
  }
}

inline void collect_agents(const Formula& f, std::set<std::string>& out) {
  for (const Formula& g : subformulas(f)) {
    if (g.kind() == Kind::Know) out.insert(g.name());
  }
}

/// Replaces every value formula by its Delta/constant counterpart:
/// V(s)=c becomes D(s <-> c-bar) and V(s)>c becomes ~D(s -> c-bar).
inline Formula desugar_value(const Formula& f) {
  std::unordered_map<const Node*, Formula> memo;
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    if (auto it = memo.find(g.id()); it != memo.end()) return it->second;
    Formula out = g;
    switch (g.kind()) {
      case Kind::Bottom:
      case Kind::Atom:
      case Kind::Constant:
        break;
      case Kind::ValEq:
        out = delta(iff(go(g.left()), constant(g.value())));
        break;
      case Kind::ValGt:
        out = neg(delta(implies(go(g.left()), constant(g.value()))));
        break;
      case Kind::Delta: {
        Formula a = go(g.left());
        if (a.id() != g.left().id()) out = delta(std::move(a));
        break;
      }
      case Kind::Know: {
        Formula a = go(g.left());
        if (a.id() != g.left().id()) out = know(g.name(), std::move(a));
        break;
      }
      case Kind::And:
      case Kind::Implies:
      case Kind::Announce: {
        Formula a = go(g.left());
        Formula b = go(g.right());
        if (a.id() != g.left().id() || b.id() != g.right().id()) {
          out = make_node(g.kind(), {}, {}, std::move(a), std::move(b));
        }
        break;
      }
    }
    memo.emplace(g.id(), out);
    return out;
  };
  return go(f);
}

}  // namespace gpal

template <>
struct std::hash<gpal::Formula> {
  std::size_t operator()(const gpal::Formula& f) const { return f.hash(); }
};

#endif  // GPAL_FORMULA_HPP
