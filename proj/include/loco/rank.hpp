// Generic DFA-backed lexicographic rank/unrank over any minimal pattern set.
// This is the independent correctness oracle for the closed-form OT/ST index
// rules and the production codec for OP-LOCO.
#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include "loco/bigint.hpp"
#include "loco/patterns.hpp"

namespace loco {

// States are the allowed suffix contexts of length < max pattern length,
// reached from an unconstrained start ("no history" before the first symbol).
// count[s][k] is the number of valid length-k completions from state s.
class CountingDfa {
 public:
  explicit CountingDfa(PatternSet set) : set_(std::move(set)) {
    const int q = set_.alphabet();
    const int ctx_len = set_.max_length() - 1;
    std::map<Word, int> ids;
    auto intern = [&](const Word& ctx) {
      auto [it, fresh] = ids.emplace(ctx, static_cast<int>(contexts_.size()));
      if (fresh) {
        contexts_.push_back(ctx);
        next_.emplace_back(static_cast<std::size_t>(q), -1);
      }
      return it->second;
    };
    start_ = intern(Word{});
    for (std::size_t s = 0; s < contexts_.size(); ++s) {
      Word ctx = contexts_[s];
      for (int z = 0; z < q; ++z) {
        Word w = ctx;
        w.push_back(static_cast<std::uint8_t>(z));
        if (set_.violation_at_end(w)) continue;
        Word nxt = w;
        if (static_cast<int>(nxt.size()) > ctx_len)
          nxt.erase(nxt.begin(), nxt.end() - ctx_len);
        next_[s][static_cast<std::size_t>(z)] = intern(nxt);
      }
    }
    if (!has_live_state()) throw std::invalid_argument("pattern set forbids every symbol");
  }

  const PatternSet& pattern_set() const { return set_; }
  int states() const { return static_cast<int>(contexts_.size()); }
  int start() const { return start_; }
  int next(int state, int symbol) const {
    return next_[static_cast<std::size_t>(state)][static_cast<std::size_t>(symbol)];
  }

  // Grow the completion-count table; safe against concurrent readers of
  // already-filled rows (rows are appended to a deque, never moved).
  void ensure(int length) const {
    if (static_cast<int>(filled_.load(std::memory_order_acquire)) > length) return;
    std::lock_guard<std::mutex> lock(grow_mutex_);
    const int q = set_.alphabet();
    for (int k = static_cast<int>(filled_.load(std::memory_order_relaxed)); k <= length; ++k) {
      std::vector<BigInt> row(contexts_.size());
      for (std::size_t s = 0; s < contexts_.size(); ++s) {
        if (k == 0) {
          row[s] = 1;
          continue;
        }
        BigInt total = 0;
        for (int z = 0; z < q; ++z) {
          int t = next_[s][static_cast<std::size_t>(z)];
          if (t >= 0) total += counts_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(t)];
        }
        row[s] = total;
      }
      counts_.push_back(std::move(row));
      filled_.store(static_cast<std::size_t>(k) + 1, std::memory_order_release);
    }
  }

  const BigInt& completions(int state, int remaining) const {
    return counts_[static_cast<std::size_t>(remaining)][static_cast<std::size_t>(state)];
  }

  const BigInt& cardinality(int m) const {
    ensure(m);
    return completions(start_, m);
  }

  // Index of `word` among all same-length avoiding words in lexicographic order.
  BigInt rank(std::span<const std::uint8_t> word) const {
    const int m = static_cast<int>(word.size());
    ensure(m);
    BigInt r = 0;
    int state = start_;
    for (int i = 0; i < m; ++i) {
      for (int z = 0; z < word[static_cast<std::size_t>(i)]; ++z) {
        int t = next(state, z);
        if (t >= 0) r += completions(t, m - 1 - i);
      }
      state = next(state, word[static_cast<std::size_t>(i)]);
      if (state < 0) throw ConstraintViolation("word violates the pattern set");
    }
    return r;
  }

  Word unrank(BigInt index, int m) const {
    ensure(m);
    if (index < 0 || index >= completions(start_, m))
      throw std::out_of_range("rank index out of range");
    Word word;
    word.reserve(static_cast<std::size_t>(m));
    int state = start_;
    for (int i = 0; i < m; ++i) {
      for (int z = 0; z < set_.alphabet(); ++z) {
        int t = next(state, z);
        if (t < 0) continue;
        const BigInt& c = completions(t, m - 1 - i);
        if (index < c) {
          word.push_back(static_cast<std::uint8_t>(z));
          state = t;
          break;
        }
        index -= c;
      }
    }
    return word;
  }

 private:
  bool has_live_state() const {
    for (const auto& row : next_)
      for (int t : row)
        if (t >= 0) return true;
    return false;
  }

  PatternSet set_;
  std::vector<Word> contexts_;
  std::vector<std::vector<int>> next_;
  int start_;
  mutable std::deque<std::vector<BigInt>> counts_;  // counts_[k][state]
  mutable std::atomic<std::size_t> filled_{0};
  mutable std::mutex grow_mutex_;
};

}  // namespace loco
