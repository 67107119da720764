#ifndef GPAL_TRUTH_VALUE_HPP
#define GPAL_TRUTH_VALUE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "gpal/errors.hpp"

namespace gpal {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact rational truth degree in [0,1].
///
/// The representation is canonical (lowest terms, positive denominator), so
/// equality, ordering and hashing are structural. Values whose numerator and
/// denominator fit in 64 bits are stored inline; anything larger falls back
/// to an arbitrary-precision rational. The split is invisible to callers.
class TruthValue {
 public:
  TruthValue() = default;

  static TruthValue zero() { return TruthValue(); }
  static TruthValue one() { return TruthValue(1, 1, Canonical{}); }

  /// n/d in lowest terms; throws RangeError unless 0 <= n/d <= 1.
  static TruthValue of(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw RangeError("zero denominator");
    return from_rational(BigRational(BigInt(numerator), BigInt(denominator)));
  }

  static TruthValue from_rational(const BigRational& q) {
    if (q < 0 || q > 1) {
      throw RangeError("truth value " + q.str() + " outside [0,1]");
    }
    const BigInt n = boost::multiprecision::numerator(q);
    const BigInt d = boost::multiprecision::denominator(q);
    constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
    if (d <= kMax) {
      return TruthValue(static_cast<std::int64_t>(n),
                        static_cast<std::int64_t>(d), Canonical{});
    }
    TruthValue v;
    v.big_ = std::make_shared<const BigRational>(q);
    return v;
  }

  /// Parses "n/d" or an integer "n". Surrounding whitespace is ignored.
  static TruthValue parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
      }
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
      }
      return s;
    };
    text = trim(text);
    auto digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char ch : s) {
        if (ch < '0' || ch > '9') return false;
      }
      return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den =
        slash == std::string_view::npos ? std::string_view("1")
                                        : text.substr(slash + 1);
    if (!digits(num) || !digits(den)) {
      throw RangeError("malformed rational '" + std::string(text) + "'");
    }
    BigInt n{std::string(num)};
    BigInt d{std::string(den)};
    if (d == 0) throw RangeError("zero denominator in '" + std::string(text) + "'");
    return from_rational(BigRational(n, d));
  }

  BigRational rational() const {
    if (big_) return *big_;
    return BigRational(BigInt(num_), BigInt(den_));
  }

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }

  std::string to_string() const {
    if (big_) return big_->str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  std::size_t hash() const {
    if (big_) return std::hash<std::string>{}(big_->str());
    return std::hash<std::int64_t>{}(num_) * 31u ^
           std::hash<std::int64_t>{}(den_);
  }

  friend bool operator==(const TruthValue& a, const TruthValue& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }

  friend std::strong_ordering operator<=>(const TruthValue& a,
                                          const TruthValue& b) {
    if (!a.big_ && !b.big_) {
      const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
      const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
      return lhs <=> rhs;
    }
    const BigRational x = a.rational();
    const BigRational y = b.rational();
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const TruthValue& v) {
    return os << v.to_string();
  }

 private:
  struct Canonical {};
  TruthValue(std::int64_t n, std::int64_t d, Canonical) : num_(n), den_(d) {}

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const BigRational> big_;
};

// Standard Goedel algebra with the Baaz-Monteiro delta. None of these
// operations creates a new value; each returns one of its inputs or an
// endpoint, which is what keeps evaluation inside any finite chain.

/// Minimum t-norm.
inline TruthValue tnorm(const TruthValue& a, const TruthValue& b) {
  return b < a ? b : a;
}

/// Lattice join.
inline TruthValue join(const TruthValue& a, const TruthValue& b) {
  return a < b ? b : a;
}

/// Goedel residuum: 1 if a <= b, otherwise b.
inline TruthValue residuum(const TruthValue& a, const TruthValue& b) {
  return a <= b ? TruthValue::one() : b;
}

inline TruthValue delta(const TruthValue& a) {
  return a.is_one() ? TruthValue::one() : TruthValue::zero();
}

}  // namespace gpal

template <>
struct std::hash<gpal::TruthValue> {
  std::size_t operator()(const gpal::TruthValue& v) const { return v.hash(); }
};

#endif  // GPAL_TRUTH_VALUE_HPP
