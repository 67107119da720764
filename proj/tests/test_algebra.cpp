#include <gtest/gtest.h>

#include <array>
#include <string>
#include <vector>

#include "gpal/truth_value.hpp"

using gpal::TruthValue;

namespace {

TruthValue v(const char* s) { return TruthValue::parse(s); }

const std::array<const char*, 5> kChain = {"0", "1/4", "1/2", "3/4", "1"};

// Frozen tables over kChain, row = left argument.
const std::array<std::array<const char*, 5>, 5> kTnorm = {{
    {"0", "0", "0", "0", "0"},
    {"0", "1/4", "1/4", "1/4", "1/4"},
    {"0", "1/4", "1/2", "1/2", "1/2"},
    {"0", "1/4", "1/2", "3/4", "3/4"},
    {"0", "1/4", "1/2", "3/4", "1"},
}};
const std::array<std::array<const char*, 5>, 5> kJoin = {{
    {"0", "1/4", "1/2", "3/4", "1"},
    {"1/4", "1/4", "1/2", "3/4", "1"},
    {"1/2", "1/2", "1/2", "3/4", "1"},
    {"3/4", "3/4", "3/4", "3/4", "1"},
    {"1", "1", "1", "1", "1"},
}};
const std::array<std::array<const char*, 5>, 5> kResiduum = {{
    {"1", "1", "1", "1", "1"},
    {"0", "1", "1", "1", "1"},
    {"0", "1/4", "1", "1", "1"},
    {"0", "1/4", "1/2", "1", "1"},
    {"0", "1/4", "1/2", "3/4", "1"},
}};

}  // namespace

TEST(TruthValue, ParsesAndNormalizes) {
  EXPECT_EQ(v("2/4"), TruthValue::of(1, 2));
  EXPECT_EQ(v(" 1 "), TruthValue::one());
  EXPECT_EQ(v("0/7"), TruthValue::zero());
  EXPECT_EQ(v("3/6").to_string(), "1/2");
  EXPECT_EQ(v("4/4").to_string(), "1");
  EXPECT_TRUE(v("1").is_one());
  EXPECT_TRUE(v("0").is_zero());
}

TEST(TruthValue, RejectsOutOfRange) {
  EXPECT_THROW(v("3/2"), gpal::RangeError);
  EXPECT_THROW(v("1/0"), gpal::RangeError);
  EXPECT_THROW(v("-1/2"), gpal::RangeError);
  EXPECT_THROW(v("x"), gpal::RangeError);
  EXPECT_THROW(v(""), gpal::RangeError);
  EXPECT_THROW(TruthValue::of(5, 4), gpal::RangeError);
}

TEST(TruthValue, OrdersExactly) {
  EXPECT_LT(v("1/3"), v("1/2"));
  EXPECT_LT(v("333333333/1000000000"), v("1/3"));
  EXPECT_EQ(v("1/3") <=> v("2/6"), std::strong_ordering::equal);
}

TEST(TruthValue, LargeDenominatorsStayExact) {
  const TruthValue a = v("1/100000000000000000000000");
  const TruthValue b = v("2/200000000000000000000000");
  EXPECT_EQ(a, b);
  EXPECT_LT(TruthValue::zero(), a);
  EXPECT_LT(a, v("1/1000"));
  EXPECT_EQ(a.to_string(), "1/100000000000000000000000");
}

TEST(Algebra, ListedValues) {
  EXPECT_EQ(tnorm(v("1/2"), v("3/4")), v("1/2"));
  EXPECT_EQ(tnorm(v("1"), v("2/3")), v("2/3"));
  EXPECT_EQ(tnorm(v("0"), v("2/3")), v("0"));
  EXPECT_EQ(residuum(v("1/2"), v("3/4")), v("1"));
  EXPECT_EQ(residuum(v("3/4"), v("1/2")), v("1/2"));
  EXPECT_EQ(gpal::delta(v("1")), v("1"));
  EXPECT_EQ(gpal::delta(v("1/2")), v("0"));
  EXPECT_EQ(gpal::delta(v("0")), v("0"));
  EXPECT_EQ(join(v("1/2"), v("3/4")), v("3/4"));
}

TEST(Algebra, FrozenTables) {
  for (std::size_t i = 0; i < kChain.size(); ++i) {
    for (std::size_t j = 0; j < kChain.size(); ++j) {
      const TruthValue a = v(kChain[i]), b = v(kChain[j]);
      EXPECT_EQ(tnorm(a, b), v(kTnorm[i][j])) << a << " " << b;
      EXPECT_EQ(join(a, b), v(kJoin[i][j])) << a << " " << b;
      EXPECT_EQ(residuum(a, b), v(kResiduum[i][j])) << a << " " << b;
    }
  }
}

TEST(Algebra, LawsOnChain) {
  std::vector<TruthValue> c;
  for (const char* s : kChain) c.push_back(v(s));
  c.push_back(v("1/3"));
  for (const auto& a : c) {
    EXPECT_EQ(tnorm(a, a), a);
    EXPECT_EQ(join(a, a), a);
    EXPECT_TRUE(residuum(a, a).is_one());
    EXPECT_EQ(join(TruthValue::zero(), a), a);
    EXPECT_EQ(residuum(TruthValue::one(), a), a);
    for (const auto& b : c) {
      EXPECT_EQ(tnorm(a, b), tnorm(b, a));
      EXPECT_EQ(join(a, b), join(b, a));
      for (const auto& d : c) {
        // residuation: a*b <= d iff a <= (b => d)
        EXPECT_EQ(tnorm(a, b) <= d, a <= residuum(b, d));
        EXPECT_EQ(tnorm(a, tnorm(b, d)), tnorm(tnorm(a, b), d));
        // prelinearity
        EXPECT_TRUE(join(residuum(a, b), residuum(b, a)).is_one());
      }
    }
  }
}

TEST(Algebra, ResultsAreInputsOrEndpoints) {
  const TruthValue a = v("2/7"), b = v("5/9");
  for (const TruthValue& r : {tnorm(a, b), join(a, b), residuum(a, b), residuum(b, a),
                              gpal::delta(a)}) {
    EXPECT_TRUE(r == a || r == b || r.is_zero() || r.is_one()) << r;
  }
}
