#ifndef GPAL_LANGUAGE_HPP
#define GPAL_LANGUAGE_HPP

#include <set>
#include <string>
#include <unordered_map>

#include "gpal/formula.hpp"

namespace gpal {

/// The languages a formula can belong to.
///
///   G         bot | p | & | ->
///   KDeltaQ   G plus constants, D and K{a}
///   FPA       G plus K{a} and [lambda], no D or constants
///   FPADeltaQ KDeltaQ plus [lambda]
///   FPAValue  announcement bodies: V(s)=c | V(s)>c closed under &, ->,
///             K{a}, [lambda], D and negation (lambda -> bot), with subjects
///             s in FPADeltaQ. Negation makes the relations !=, <=, < bodies.
///
/// The body grammar of FPA proper is the same without D and with subjects in
/// FPA; it is checked internally when deciding FPA membership.
enum class LanguageTag { G, KDeltaQ, FPA, FPADeltaQ, FPAValue };

inline std::string to_string(LanguageTag t) {
  switch (t) {
    case LanguageTag::G:
      return "G";
    case LanguageTag::KDeltaQ:
      return "K_Delta(Q)";
    case LanguageTag::FPA:
      return "FPA";
    case LanguageTag::FPADeltaQ:
      return "FPA_Delta(Q)";
    case LanguageTag::FPAValue:
      return "FPA_V";
  }
  return "?";
}

namespace detail {

class LanguageOracle {
 public:
  bool g(const Formula& f) { return cached(g_, f, [&] { return g_raw(f); }); }
  bool kdq(const Formula& f) {
    return cached(kdq_, f, [&] { return kdq_raw(f); });
  }
  bool fpa(const Formula& f) {
    return cached(fpa_, f, [&] { return fpa_raw(f); });
  }
  bool fpadq(const Formula& f) {
    return cached(fpadq_, f, [&] { return fpadq_raw(f); });
  }
  bool body_fpa(const Formula& f) {
    return cached(body_fpa_, f, [&] { return body_raw(f, false); });
  }
  bool body_fpadq(const Formula& f) {
    return cached(body_fpadq_, f, [&] { return body_raw(f, true); });
  }

 private:
  using Cache = std::unordered_map<const Node*, bool>;

  template <typename Fn>
  static bool cached(Cache& cache, const Formula& f, Fn&& fn) {
    if (auto it = cache.find(f.id()); it != cache.end()) return it->second;
    bool r = fn();
    cache.emplace(f.id(), r);
    return r;
  }

  bool g_raw(const Formula& f) {
    switch (f.kind()) {
      case Kind::Bottom:
      case Kind::Atom:
        return true;
      case Kind::And:
      case Kind::Implies:
        return g(f.left()) && g(f.right());
      default:
        return false;
    }
  }

  bool kdq_raw(const Formula& f) {
    switch (f.kind()) {
      case Kind::Bottom:
      case Kind::Atom:
      case Kind::Constant:
        return true;
      case Kind::And:
      case Kind::Implies:
        return kdq(f.left()) && kdq(f.right());
      case Kind::Delta:
      case Kind::Know:
        return kdq(f.left());
      default:
        return false;
    }
  }

  bool fpa_raw(const Formula& f) {
    switch (f.kind()) {
      case Kind::Bottom:
      case Kind::Atom:
        return true;
      case Kind::And:
      case Kind::Implies:
        return fpa(f.left()) && fpa(f.right());
      case Kind::Know:
        return fpa(f.left());
      case Kind::Announce:
        return body_fpa(f.left()) && fpa(f.right());
      default:
        return false;
    }
  }

  bool fpadq_raw(const Formula& f) {
    switch (f.kind()) {
      case Kind::Bottom:
      case Kind::Atom:
      case Kind::Constant:
        return true;
      case Kind::And:
      case Kind::Implies:
        return fpadq(f.left()) && fpadq(f.right());
      case Kind::Delta:
      case Kind::Know:
        return fpadq(f.left());
      case Kind::Announce:
        return body_fpadq(f.left()) && fpadq(f.right());
      default:
        return false;
    }
  }

  bool body_raw(const Formula& f, bool with_delta) {
    auto body = [&](const Formula& x) {
      return with_delta ? body_fpadq(x) : body_fpa(x);
    };
    switch (f.kind()) {
      case Kind::ValEq:
      case Kind::ValGt:
        return with_delta ? fpadq(f.left()) : fpa(f.left());
      case Kind::Implies:
        return body(f.left()) &&
               (f.right().kind() == Kind::Bottom || body(f.right()));
      case Kind::And:
      case Kind::Announce:
        return body(f.left()) && body(f.right());
      case Kind::Know:
        return body(f.left());
      case Kind::Delta:
        return with_delta && body(f.left());
      default:
        return false;
    }
  }

  Cache g_, kdq_, fpa_, fpadq_, body_fpa_, body_fpadq_;
};

}  // namespace detail

/// Every language of which f is a well-formed member.
inline std::set<LanguageTag> classify(const Formula& f) {
  detail::LanguageOracle oracle;
  std::set<LanguageTag> out;
  if (oracle.g(f)) out.insert(LanguageTag::G);
  if (oracle.kdq(f)) out.insert(LanguageTag::KDeltaQ);
  if (oracle.fpa(f)) out.insert(LanguageTag::FPA);
  if (oracle.fpadq(f)) out.insert(LanguageTag::FPADeltaQ);
  if (oracle.body_fpadq(f)) out.insert(LanguageTag::FPAValue);
  return out;
}

/// True if f may appear inside [ ] (a value formula of the richest language).
inline bool is_announcement_body(const Formula& f) {
  detail::LanguageOracle oracle;
  return oracle.body_fpadq(f);
}

inline bool in_language(const Formula& f, LanguageTag tag) {
  return classify(f).count(tag) > 0;
}

}  // namespace gpal

#endif  // GPAL_LANGUAGE_HPP
