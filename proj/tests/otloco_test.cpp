#include <gtest/gtest.h>

#include <random>

#include "loco/otloco.hpp"
#include "loco/rank.hpp"
#include "test_helpers.hpp"

namespace loco {
namespace {

TEST(OtClassify, SpecialCases) {
  // alpha after alpha: case 13.
  auto mv = ot_classify(std::nullopt, std::uint8_t{2}, 2);
  EXPECT_EQ(mv.case_id, 13);
  EXPECT_EQ(mv.y, (std::array<int, 5>{0, 1, 0, 0, 0}));

  // Typical alpha^5 with no special prefix.
  mv = ot_classify(std::nullopt, std::nullopt, 6);
  EXPECT_EQ(mv.case_id, 1);
  EXPECT_EQ(mv.y, (std::array<int, 5>{0, 1, 0, 1, 0}));

  // beta1' beta3 alpha with beta1' = 0, beta3 = alpha^2: case 2.
  mv = ot_classify(std::uint8_t{0}, std::uint8_t{3}, 2);
  EXPECT_EQ(mv.case_id, 2);
  EXPECT_EQ(mv.y, (std::array<int, 5>{0, 1, 0, 0, 0}));

  // Same two symbols without the length-3 prefix context: case 10.
  mv = ot_classify(std::nullopt, std::uint8_t{3}, 2);
  EXPECT_EQ(mv.case_id, 10);
}

TEST(OtCodec, LengthOneIndices) {
  OtCodec codec(1);
  for (int l = 0; l < 8; ++l) {
    Word w{static_cast<std::uint8_t>(l)};
    EXPECT_EQ(codec.index_of(w), l);
  }
}

TEST(OtCodec, AllZeroIsFirst) {
  OtCodec codec(6);
  Word zeros(6, 0);
  EXPECT_EQ(codec.index_of(zeros), 0);
  EXPECT_EQ(codec.encode_index(0), zeros);
}

// The closed-form rule must agree with the independent DFA rank everywhere.
TEST(OtCodec, OracleEquivalenceExhaustive) {
  PatternSet set = PatternSet::builtin(BuiltinSet::ot8);
  CountingDfa oracle(set);
  for (int m = 1; m <= 5; ++m) {
    OtCodec codec(m);
    auto words = testing::all_valid_words(set, m);
    ASSERT_EQ(words.size(), n8(m));
    for (std::size_t i = 0; i < words.size(); ++i) {
      ASSERT_EQ(codec.index_of(words[i]), i) << word_to_text(words[i]);
      ASSERT_EQ(oracle.rank(words[i]), i);
    }
    // The last codeword in lexicographic order gets the maximal index.
    EXPECT_EQ(codec.index_of(words.back()), n8(m) - 1);
  }
}

TEST(OtCodec, EncodeMatchesUnrank) {
  OtCodec codec(4);
  CountingDfa oracle(PatternSet::builtin(BuiltinSet::ot8));
  for (BigInt x = 0; x < n8(4); ++x) EXPECT_EQ(codec.encode_index(x), oracle.unrank(x, 4));
}

TEST(OtCodec, RandomRoundTripM23) {
  PatternSet set = PatternSet::builtin(BuiltinSet::ot8);
  OtCodec codec(23);
  CountingDfa oracle(set);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10000; ++t) {
    Word w = testing::random_valid_word(set, 23, rng);
    BigInt g = codec.index_of(w);
    ASSERT_EQ(g, oracle.rank(w));
    ASSERT_EQ(codec.encode_index(g), w);
  }
}

TEST(OtCodec, RandomOracleAgreementM14) {
  PatternSet set = PatternSet::builtin(BuiltinSet::ot8);
  OtCodec codec(14);
  CountingDfa oracle(set);
  std::mt19937_64 rng(14);
  for (int t = 0; t < 100000; ++t) {
    Word w = testing::random_valid_word(set, 14, rng);
    ASSERT_EQ(codec.index_of(w), oracle.rank(w));
  }
}

TEST(OtCodec, DecodeErrors) {
  OtCodec codec(3);
  Word bad{3, 2, 0};  // contains alpha-0
  EXPECT_EQ(codec.decode(bad).status, OtCodec::Status::constraint_violation);

  OtCodec c2(2);
  Word top{7, 7};  // last valid word, index 49 >= 2^5
  EXPECT_EQ(c2.message_bits(), 5);
  auto d = c2.decode(top);
  EXPECT_EQ(d.status, OtCodec::Status::index_out_of_range);
  EXPECT_EQ(d.index, 49);

  EXPECT_THROW(codec.encode_index(n8(3)), std::out_of_range);
  EXPECT_THROW(codec.index_of(bad), ConstraintViolation);
}

TEST(OtBridge, TightestBoundary) {
  // tail ends beta1' beta3, head starts beta4 beta2': bridge alphabet
  // beta2-bar' beta1-bar', exactly 9 admissible, 8 used.
  Word tail{0, 3};  // 0 alpha^2
  Word head{1, 3};  // 1 alpha^2
  auto cands = ot_bridge_candidates(tail, head);
  EXPECT_EQ(cands.size(), 9u);
  using namespace sets;
  for (const auto& d : cands) {
    EXPECT_TRUE(contains(beta2p, d[0]));
    EXPECT_TRUE(contains(beta1p, d[1]));
  }
  // The 9th admissible pattern is never mapped to a payload.
  EXPECT_FALSE(ot_bridge_decode(tail, cands[8], head).has_value());
  for (int p = 0; p < 8; ++p) {
    auto d = ot_bridge_encode(tail, head, p);
    auto back = ot_bridge_decode(tail, d, head);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, p);
  }
}

// Every boundary of valid codeword edges selects a bridge alphabet with at
// least 8 admissible patterns, and the used patterns keep the window clean.
TEST(OtBridge, ExhaustiveBoundaries) {
  PatternSet set = PatternSet::builtin(BuiltinSet::ot8);
  auto grams = testing::all_valid_words(set, 2);
  ASSERT_EQ(grams.size(), 50u);
  for (const Word& tail : grams) {
    for (const Word& head : grams) {
      auto cands = ot_bridge_candidates(tail, head);
      ASSERT_GE(cands.size(), 8u) << word_to_text(tail) << " | " << word_to_text(head);
      for (std::size_t i = 0; i < 8; ++i) {
        Word window = tail;
        window.push_back(cands[i][0]);
        window.push_back(cands[i][1]);
        window.insert(window.end(), head.begin(), head.end());
        ASSERT_TRUE(set.find_forbidden(window).empty());
      }
    }
    // Stream-final bridge: no head context.
    auto cands = ot_bridge_candidates(tail, {});
    ASSERT_GE(cands.size(), 8u);
  }
}

TEST(OtBridge, PayloadRoundTripRandomPairs) {
  PatternSet set = PatternSet::builtin(BuiltinSet::ot8);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1000; ++t) {
    Word a = testing::random_valid_word(set, 6, rng);
    Word b = testing::random_valid_word(set, 6, rng);
    std::span<const std::uint8_t> tail(a.data() + 4, 2), head(b.data(), 2);
    const int payload = static_cast<int>(rng() % 8);
    auto d = ot_bridge_encode(tail, head, payload);
    auto back = ot_bridge_decode(tail, d, head);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, payload);
  }
}

TEST(OtBridge, CorruptBridgeRejected) {
  Word tail{0, 3}, head{1, 3};
  EXPECT_FALSE(ot_bridge_decode(tail, {2, 2}, head).has_value());
}

}  // namespace
}  // namespace loco
