#ifndef GPAL_PARSER_HPP
#define GPAL_PARSER_HPP

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpal/errors.hpp"
#include "gpal/formula.hpp"

namespace gpal {

// Concrete syntax, loosest binding first:
//
//   formula  := disj ( "<->" disj )?          non-associative
//   disj'    := disj ( "->" disj' )?          right-associative
//   disj     := conj ( "|" conj )*
//   conj     := unary ( "&" unary )*
//   unary    := "~" unary | "D" unary | "K{" agent "}" unary
//             | "[" formula "]" unary | primary
//   primary  := "bot" | "top" | atom | "#" rational
//             | "V(" formula ")" relation rational | "(" formula ")"
//   relation := "=" | ">" | "!=" | "<=" | ">=" | "<"
//
// Atoms match [a-z][A-Za-z0-9_]*, agents [A-Za-z0-9_]+, rationals n or n/d.
// All sugar is expanded while parsing.

namespace detail {

enum class Tok {
  Word,
  Number,
  Hash,
  Slash,
  LParen,
  RParen,
  LBrack,
  RBrack,
  LBrace,
  RBrace,
  Tilde,
  Amp,
  Bar,
  Arrow,
  Iff,
  Eq,
  Ne,
  Le,
  Ge,
  Lt,
  Gt,
  End,
  Invalid,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : src_(text) {}

  Formula parse_all() {
    Formula f = formula();
    const Token& t = peek();
    if (t.kind != Tok::End) {
      fail("unexpected '" + t.text + "'", t,
           {"&", "|", "->", "<->", "end of input"});
    }
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& at,
                         std::vector<std::string> expected = {}) {
    throw ParseError(msg, at.line, at.column, std::move(expected));
  }

  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      advance_char();
    }
  }

  void advance_char() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Token lex() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::End;
      t.text = "end of input";
      return t;
    }
    auto take = [&](Tok k, std::size_t n) {
      t.kind = k;
      t.text = std::string(src_.substr(pos_, n));
      for (std::size_t i = 0; i < n; ++i) advance_char();
      return t;
    };
    const char c = src_[pos_];
    auto next_is = [&](std::string_view s) {
      return src_.substr(pos_, s.size()) == s;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = 0;
      while (pos_ + n < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_ + n])) ||
              src_[pos_ + n] == '_')) {
        ++n;
      }
      return take(Tok::Word, n);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      while (pos_ + n < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + n]))) {
        ++n;
      }
      return take(Tok::Number, n);
    }
    if (next_is("<->")) return take(Tok::Iff, 3);
    if (next_is("->")) return take(Tok::Arrow, 2);
    if (next_is("!=")) return take(Tok::Ne, 2);
    if (next_is("<=")) return take(Tok::Le, 2);
    if (next_is(">=")) return take(Tok::Ge, 2);
    switch (c) {
      case '#':
        return take(Tok::Hash, 1);
      case '/':
        return take(Tok::Slash, 1);
      case '(':
        return take(Tok::LParen, 1);
      case ')':
        return take(Tok::RParen, 1);
      case '[':
        return take(Tok::LBrack, 1);
      case ']':
        return take(Tok::RBrack, 1);
      case '{':
        return take(Tok::LBrace, 1);
      case '}':
        return take(Tok::RBrace, 1);
      case '~':
        return take(Tok::Tilde, 1);
      case '&':
        return take(Tok::Amp, 1);
      case '|':
        return take(Tok::Bar, 1);
      case '=':
        return take(Tok::Eq, 1);
      case '<':
        return take(Tok::Lt, 1);
      case '>':
        return take(Tok::Gt, 1);
      default:
        return take(Tok::Invalid, 1);
    }
  }

  const Token& peek() {
    if (!lookahead_) lookahead_ = lex();
    return *lookahead_;
  }

  Token next() {
    Token t = peek();
    lookahead_.reset();
    return t;
  }

  Token expect(Tok kind, const std::string& what) {
    const Token& t = peek();
    if (t.kind != kind) fail("unexpected '" + t.text + "'", t, {what});
    return next();
  }

  Formula formula() {
    Formula lhs = implication();
    if (peek().kind == Tok::Iff) {
      next();
      Formula rhs = implication();
      if (peek().kind == Tok::Iff) {
        fail("'<->' is non-associative; add parentheses", peek());
      }
      return iff(lhs, rhs);
    }
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Arrow) {
      next();
      return implies(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (peek().kind == Tok::Bar) {
      next();
      lhs = lor(lhs, conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (peek().kind == Tok::Amp) {
      next();
      lhs = land(std::move(lhs), unary());
    }
    return lhs;
  }

  std::string agent() {
    expect(Tok::LBrace, "'{'");
    // Agents may start with a digit, so they are read as raw characters.
    skip_space();
    Token at;
    at.line = line_;
    at.column = col_;
    std::string name;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_')) {
      name += src_[pos_];
      advance_char();
    }
    if (name.empty()) {
      at.text = pos_ < src_.size() ? std::string(1, src_[pos_]) : "end";
      fail("missing agent name", at, {"agent name"});
    }
    expect(Tok::RBrace, "'}'");
    return name;
  }

  Formula unary() {
    const Token& t = peek();
    if (t.kind == Tok::Tilde) {
      next();
      return neg(unary());
    }
    if (t.kind == Tok::Word && t.text == "D") {
      next();
      return delta(unary());
    }
    if (t.kind == Tok::Word && t.text == "K") {
      next();
      std::string a = agent();
      return know(std::move(a), unary());
    }
    if (t.kind == Tok::LBrack) {
      next();
      Formula body = formula();
      expect(Tok::RBrack, "']'");
      return announce(std::move(body), unary());
    }
    return primary();
  }

  TruthValue rational() {
    const Token first = peek();
    if (first.kind != Tok::Number) {
      fail("unexpected '" + first.text + "'", first, {"rational"});
    }
    std::string text = next().text;
    if (peek().kind == Tok::Slash) {
      next();
      const Token& den = peek();
      if (den.kind != Tok::Number) {
        fail("unexpected '" + den.text + "'", den, {"denominator"});
      }
      text += "/" + next().text;
    }
    BigRational q;
    try {
      const auto slash = text.find('/');
      BigInt n(text.substr(0, slash));
      BigInt d(slash == std::string::npos ? std::string("1")
                                          : text.substr(slash + 1));
      if (d == 0) fail("zero denominator in '" + text + "'", first);
      q = BigRational(n, d);
    } catch (const std::runtime_error& e) {
      if (dynamic_cast<const ParseError*>(&e)) throw;
      fail("malformed rational '" + text + "'", first);
    }
    if (q > 1) {
      throw ConstantRangeError("constant " + text + " outside [0,1]",
                               first.line, first.column);
    }
    return TruthValue::from_rational(q);
  }

  Formula primary() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Word: {
        if (t.text == "bot") {
          next();
          return bot();
        }
        if (t.text == "top") {
          next();
          return top();
        }
        if (t.text == "V") {
          next();
          return value_formula();
        }
        if (std::islower(static_cast<unsigned char>(t.text[0]))) {
          next();
          return atom(t.text);
        }
        break;
      }
      case Tok::Hash: {
        next();
        return constant(rational());
      }
      case Tok::LParen: {
        next();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        break;
    }
    fail("unexpected '" + t.text + "'", t,
         {"bot", "top", "atom", "#constant", "V(", "(", "~", "D", "K{", "["});
  }

  Formula value_formula() {
    expect(Tok::LParen, "'('");
    Formula subject = formula();
    expect(Tok::RParen, "')'");
    const Token rel = next();
    switch (rel.kind) {
      case Tok::Eq:
        return val_eq(std::move(subject), rational());
      case Tok::Gt:
        return val_gt(std::move(subject), rational());
      case Tok::Ne:
        return val_ne(std::move(subject), rational());
      case Tok::Le:
        return val_le(std::move(subject), rational());
      case Tok::Ge:
        return val_ge(subject, rational());
      case Tok::Lt:
        return val_lt(subject, rational());
      default:
        fail("unexpected '" + rel.text + "'", rel,
             {"=", ">", "!=", "<=", ">=", "<"});
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::optional<Token> lookahead_;
};

}  // namespace detail

/// Parses formula text; throws ParseError (or ConstantRangeError).
inline Formula parse(std::string_view text) {
  return detail::FormulaParser(text).parse_all();
}

}  // namespace gpal

#endif  // GPAL_PARSER_HPP
