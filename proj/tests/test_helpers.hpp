// Shared test oracles: brute-force enumeration of pattern-avoiding words
// (independent of the DFA and codec paths), random valid words, run lengths.
#pragma once

#include <algorithm>
#include <random>
#include <span>
#include <vector>

#include "loco/patterns.hpp"

namespace loco::testing {

// All valid words of length m in lexicographic order, by plain DFS over
// levels in ascending order. Deliberately unrelated to CountingDfa.
inline void enumerate_valid(const PatternSet& set, int m, Word& scratch, std::vector<Word>& out) {
  if (static_cast<int>(scratch.size()) == m) {
    out.push_back(scratch);
    return;
  }
  for (int z = 0; z < set.alphabet(); ++z) {
    scratch.push_back(static_cast<std::uint8_t>(z));
    if (!set.violation_at_end(scratch)) enumerate_valid(set, m, scratch, out);
    scratch.pop_back();
  }
}

inline std::vector<Word> all_valid_words(const PatternSet& set, int m) {
  std::vector<Word> out;
  Word scratch;
  enumerate_valid(set, m, scratch, out);
  return out;
}

// Uniformly random continuation walk (not uniform over the code, which the
// tests do not need).
inline Word random_valid_word(const PatternSet& set, int m, std::mt19937_64& rng) {
  Word w;
  w.reserve(static_cast<std::size_t>(m));
  while (static_cast<int>(w.size()) < m) {
    std::vector<std::uint8_t> allowed;
    for (int z = 0; z < set.alphabet(); ++z) {
      w.push_back(static_cast<std::uint8_t>(z));
      if (!set.violation_at_end(w)) allowed.push_back(static_cast<std::uint8_t>(z));
      w.pop_back();
    }
    w.push_back(allowed[rng() % allowed.size()]);
  }
  return w;
}

inline std::size_t max_identical_run(std::span<const std::uint8_t> seq) {
  std::size_t best = 0, cur = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    cur = (i > 0 && seq[i] == seq[i - 1]) ? cur + 1 : 1;
    best = std::max(best, cur);
  }
  return best;
}

}  // namespace loco::testing
