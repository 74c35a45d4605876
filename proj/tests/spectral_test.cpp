#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "loco/enumeration.hpp"
#include "loco/spectral.hpp"

namespace loco {
namespace {

// Same labeled graph up to a renumbering of the states.
bool permutation_equivalent(const std::vector<std::vector<long>>& a,
                            const std::vector<std::vector<long>>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) return false;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  do {
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i)
      for (std::size_t j = 0; j < n && match; ++j) match = a[i][j] == b[perm[i]][perm[j]];
    if (match) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

TEST(Spectral, OtFstdAdjacency) {
  Fstd f = build_fstd(PatternSet::builtin(BuiltinSet::ot8));
  ASSERT_EQ(f.states(), 4);
  EXPECT_EQ(f.row_sums(), (std::vector<long>{7, 4, 4, 7}));
  const std::vector<std::vector<long>> expected{{3, 2, 1, 1}, {0, 1, 0, 3}, {3, 0, 1, 0}, {1, 1, 2, 3}};
  EXPECT_EQ(f.adjacency, expected);
}

TEST(Spectral, StFstdAdjacency) {
  Fstd f = build_fstd(PatternSet::builtin(BuiltinSet::st4));
  ASSERT_EQ(f.states(), 4);
  const std::vector<std::vector<long>> expected{{1, 1, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 1, 1}};
  EXPECT_TRUE(permutation_equivalent(f.adjacency, expected));
}

TEST(Spectral, EmptyLanguageRejected) {
  std::vector<Word> everything;
  for (int z = 0; z < 8; ++z) everything.push_back({static_cast<std::uint8_t>(z)});
  EXPECT_THROW(build_fstd(PatternSet(8, everything)), std::invalid_argument);
}

TEST(Spectral, DominantEigenvalues) {
  Fstd f1 = build_fstd(PatternSet::builtin(BuiltinSet::ot8));
  const double l1 = dominant_eigenvalue(f1.adjacency);
  EXPECT_NEAR(l1, 5.8541, 1e-4);
  EXPECT_LT(std::abs(l1 * l1 - 5 * l1 - 5), 1e-9);  // (x^2 - 5x - 5) factor

  Fstd f2 = build_fstd(PatternSet::builtin(BuiltinSet::st4));
  const double l2 = dominant_eigenvalue(f2.adjacency);
  EXPECT_NEAR(l2, 2.4142, 1e-4);
  EXPECT_LT(std::abs(l2 * l2 - 2 * l2 - 1), 1e-9);

  const std::vector<std::vector<long>> identity{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  EXPECT_DOUBLE_EQ(dominant_eigenvalue(identity), 1.0);
}

TEST(Spectral, Capacities) {
  Capacity ot = capacity(PatternSet::builtin(BuiltinSet::ot8), 3, 3);
  EXPECT_NEAR(ot.c, 2.5494, 1e-4);
  EXPECT_NEAR(ot.cn, 0.8498, 1e-4);

  Capacity st = capacity(PatternSet::builtin(BuiltinSet::st4), 2, 3);
  EXPECT_NEAR(st.c, 1.2715, 1e-4);
  EXPECT_NEAR(st.cn, 0.7572, 1e-4);

  Capacity op = capacity(PatternSet::builtin(BuiltinSet::op8), 3, 3);
  EXPECT_NEAR(op.cn, 0.9710, 1e-4);

  EXPECT_THROW(capacity(PatternSet::builtin(BuiltinSet::ot8), 4, 3), std::invalid_argument);
}

// log2 lambda_max equals the growth rate of the cardinalities; the limit is
// estimated from the increment at m = 60.
TEST(Spectral, CapacityMatchesEnumerationGrowth) {
  const double c_ot = capacity(PatternSet::builtin(BuiltinSet::ot8), 3, 3).c;
  const double growth_ot =
      std::log2(static_cast<double>(n8(61))) - std::log2(static_cast<double>(n8(60)));
  EXPECT_NEAR(c_ot, growth_ot, 1e-3);

  const double c_st = capacity(PatternSet::builtin(BuiltinSet::st4), 2, 3).c;
  const double growth_st =
      std::log2(static_cast<double>(n4(61))) - std::log2(static_cast<double>(n4(60)));
  EXPECT_NEAR(c_st, growth_st, 1e-3);
}

TEST(Spectral, EdgeLabelsGenerateOnlyValidWalks) {
  PatternSet set = PatternSet::builtin(BuiltinSet::ot8);
  Fstd f = build_fstd(set);
  // Every two-step walk's labels must avoid the 2-tuple patterns.
  for (int i = 0; i < f.states(); ++i)
    for (int j = 0; j < f.states(); ++j)
      for (std::uint8_t a : f.edge_labels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        for (int k = 0; k < f.states(); ++k)
          for (std::uint8_t b : f.edge_labels[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]) {
            Word pair{a, b};
            EXPECT_FALSE(set.contains_pattern(pair));
          }
}

}  // namespace
}  // namespace loco
