#include <gtest/gtest.h>

#include <random>

#include "loco/enumeration.hpp"
#include "loco/rank.hpp"
#include "test_helpers.hpp"

namespace loco {
namespace {

TEST(Rank, CardinalityMatchesRecurrences) {
  // N(0) = 2 is a formal recurrence seed; actual word counts agree from m = 1.
  CountingDfa ot(PatternSet::builtin(BuiltinSet::ot8));
  for (int m = 1; m <= 30; ++m) EXPECT_EQ(ot.cardinality(m), n8(m)) << "m=" << m;
  CountingDfa st(PatternSet::builtin(BuiltinSet::st4));
  for (int m = 1; m <= 30; ++m) EXPECT_EQ(st.cardinality(m), n4(m)) << "m=" << m;
}

TEST(Rank, AllZeroWordRanksFirst) {
  CountingDfa ot(PatternSet::builtin(BuiltinSet::ot8));
  Word zeros(6, 0);
  EXPECT_EQ(ot.rank(zeros), 0);
  EXPECT_EQ(ot.unrank(0, 6), zeros);
}

TEST(Rank, Gf4TopCodewordRank) {
  CountingDfa st(PatternSet::builtin(BuiltinSet::st4));
  Word top(5, 3);  // a2 a2 a2 a2 a2
  EXPECT_EQ(st.rank(top), 139);
  EXPECT_EQ(st.unrank(BigInt(139), 5), top);
}

TEST(Rank, AgreesWithEnumerationOrder) {
  // rank == position in the fully enumerated sorted list (GF(8), length 4).
  PatternSet set = PatternSet::builtin(BuiltinSet::ot8);
  CountingDfa dfa(set);
  auto words = testing::all_valid_words(set, 4);
  ASSERT_EQ(words.size(), n8(4));
  for (std::size_t i = 0; i < words.size(); ++i) {
    EXPECT_EQ(dfa.rank(words[i]), i);
    EXPECT_EQ(dfa.unrank(BigInt(i), 4), words[i]);
  }
}

TEST(Rank, UnrankRankIdentityOp8) {
  CountingDfa op(PatternSet::builtin(BuiltinSet::op8));
  const BigInt total = op.cardinality(3);
  for (BigInt i = 0; i < total; ++i) {
    Word w = op.unrank(i, 3);
    EXPECT_EQ(op.rank(w), i);
  }
}

TEST(Rank, OrderPreservation) {
  PatternSet set = PatternSet::builtin(BuiltinSet::st4);
  CountingDfa dfa(set);
  for (int m = 1; m <= 4; ++m) {
    auto words = testing::all_valid_words(set, m);
    for (std::size_t i = 1; i < words.size(); ++i) {
      ASSERT_LT(words[i - 1], words[i]);
      EXPECT_LT(dfa.rank(words[i - 1]), dfa.rank(words[i]));
    }
  }
}

TEST(Rank, RejectsInvalidInput) {
  CountingDfa ot(PatternSet::builtin(BuiltinSet::ot8));
  Word bad{2, 0, 0};  // starts with forbidden alpha-0
  EXPECT_THROW(ot.rank(bad), ConstraintViolation);
  EXPECT_THROW(ot.unrank(n8(3), 3), std::out_of_range);
  EXPECT_THROW(ot.unrank(BigInt(-1), 3), std::out_of_range);
}

TEST(Rank, OpMessageLengthsFromCounts) {
  // Adder sizes implied by the generic count: s = 67 at m = 23, 40 at m = 14.
  CountingDfa op(PatternSet::builtin(BuiltinSet::op8));
  EXPECT_EQ(floor_log2(op.cardinality(23)), 67);
  EXPECT_EQ(floor_log2(op.cardinality(14)), 40);
}

TEST(Rank, EmptyLanguageRejected) {
  std::vector<Word> everything;
  for (int z = 0; z < 4; ++z) everything.push_back({static_cast<std::uint8_t>(z)});
  EXPECT_THROW(CountingDfa(PatternSet(4, everything)), std::invalid_argument);
}

TEST(Rank, RandomRoundTripLongWords) {
  PatternSet set = PatternSet::builtin(BuiltinSet::ot8);
  CountingDfa dfa(set);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Word w = testing::random_valid_word(set, 23, rng);
    EXPECT_EQ(dfa.unrank(dfa.rank(w), 23), w);
  }
}

}  // namespace
}  // namespace loco
