// OT-LOCO codec over GF(8): the 16-case symbol classification, the
// index <-> codeword rule, greedy encoding, and payload-carrying bridging.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "loco/bigint.hpp"
#include "loco/enumeration.hpp"
#include "loco/patterns.hpp"

namespace loco {

// Merging variables y1..y5 for one symbol; theta1 <= a_i and theta2 <= 3.
struct OtMergeVector {
  int case_id = 1;
  std::array<int, 5> y{0, 0, 0, 0, 0};

  int theta1() const { return 4 * y[0] + 2 * y[1] + y[2]; }
  int theta2() const { return 2 * y[3] + y[4]; }
};

// Ordered if-else chain over (c_{i+2}, c_{i+1}, c_i); the first matching rule
// wins. Missing context near the left edge never matches a special case.
inline OtMergeVector ot_classify(std::optional<std::uint8_t> c2, std::optional<std::uint8_t> c1,
                                 std::uint8_t c0) {
  using namespace sets;
  auto mv = [](int id, std::array<int, 5> y) { return OtMergeVector{id, y}; };
  if (c2 && c1) {
    const bool pre13 = contains(beta1p, *c2) && contains(beta3, *c1);
    const bool pre24 = contains(beta2p, *c2) && contains(beta4, *c1);
    if (pre13 && c0 == 2) return mv(2, {0, 1, 0, 0, 0});
    if (pre13 && c0 == 3) return mv(3, {0, 1, 1, 0, 1});
    if (pre13 && contains(gamma1, c0)) return mv(4, {1, 0, 1, 0, 1});
    if (pre24 && contains(gamma2, c0)) return mv(5, {0, 1, 0, 0, 0});
  }
  if (c1) {
    if (contains(beta1p, *c1)) {
      if (c0 == 3) return mv(6, {0, 0, 1, 0, 0});
      if (contains(gamma2, c0)) return mv(7, {0, 1, 0, 0, 1});
      if (c0 == 6) return mv(8, {0, 1, 1, 1, 0});
      if (c0 == 7) return mv(9, {1, 0, 0, 1, 1});
    }
    if (contains(beta2p, *c1)) {
      if (c0 == 2) return mv(10, {0, 0, 1, 0, 1});
      if (contains(gamma3, c0)) return mv(11, {0, 1, 0, 1, 0});
      if (contains(gamma1, c0)) return mv(12, {1, 0, 0, 1, 1});
    }
    if (*c1 == 2) {
      if (c0 == 2) return mv(13, {0, 1, 0, 0, 0});
      if (c0 == 3) return mv(14, {0, 1, 1, 0, 1});
      if (contains(gamma1, c0)) return mv(15, {1, 0, 1, 0, 1});
    }
    if (*c1 == 5 && contains(gamma2, c0)) return mv(16, {0, 1, 0, 0, 0});
  }
  if (c0 <= 2) return mv(1, {0, 0, 0, 0, 0});
  if (c0 <= 5) return mv(1, {0, 0, 1, 0, 1});
  return mv(1, {0, 1, 0, 1, 0});
}

// g_i(c_i) = [(a - theta1) N8(i+1) + (theta1 + 3 theta2 - a) N8(i)] / 6.
// The combined numerator is always divisible by 6.
inline BigInt ot_contribution(int i, std::uint8_t c0, const OtMergeVector& mv) {
  const int a = c0;
  BigInt num = BigInt(a - mv.theta1()) * n8(i + 1) + BigInt(mv.theta1() + 3 * mv.theta2() - a) * n8(i);
  if (num % 6 != 0) throw std::logic_error("OT contribution not divisible by 6");
  return num / 6;
}

class OtCodec {
 public:
  explicit OtCodec(int m) : m_(m), set_(PatternSet::builtin(BuiltinSet::ot8)) {
    if (m < 1) throw std::invalid_argument("codeword length must be >= 1");
    s_ = floor_log2(n8(m));
  }

  int m() const { return m_; }
  int message_bits() const { return s_; }
  const PatternSet& pattern_set() const { return set_; }
  const BigInt& cardinality() const { return n8(m_); }

  // Lexicographic index of a valid codeword (the decoding core).
  BigInt index_of(std::span<const std::uint8_t> cw) const {
    if (static_cast<int>(cw.size()) != m_) throw std::invalid_argument("codeword length mismatch");
    if (!set_.satisfies(cw)) throw ConstraintViolation("codeword contains a forbidden pattern");
    BigInt g = 0;
    for (int p = 0; p < m_; ++p) {
      const int i = m_ - 1 - p;
      auto mv = ot_classify(context(cw, p, 2), context(cw, p, 1), cw[static_cast<std::size_t>(p)]);
      g += ot_contribution(i, cw[static_cast<std::size_t>(p)], mv);
    }
    return g;
  }

  // Greedy inversion: at each position take the largest symbol that does not
  // complete a forbidden pattern and whose contribution fits the residual.
  Word encode_index(BigInt index) const {
    if (index < 0 || index >= cardinality()) throw std::out_of_range("message index out of range");
    Word cw;
    cw.reserve(static_cast<std::size_t>(m_));
    for (int p = 0; p < m_; ++p) {
      const int i = m_ - 1 - p;
      int best = -1;
      BigInt best_g = 0;
      for (int z = 0; z < 8; ++z) {
        cw.push_back(static_cast<std::uint8_t>(z));
        const bool ok = !set_.violation_at_end(cw);
        cw.pop_back();
        if (!ok) continue;
        auto mv = ot_classify(context(cw, p, 2), context(cw, p, 1), static_cast<std::uint8_t>(z));
        BigInt g = ot_contribution(i, static_cast<std::uint8_t>(z), mv);
        if (g <= index) {
          best = z;
          best_g = g;
        }
      }
      if (best < 0) throw std::logic_error("no admissible symbol during OT encoding");
      cw.push_back(static_cast<std::uint8_t>(best));
      index -= best_g;
    }
    if (index != 0) throw std::logic_error("OT encoding left a nonzero residual");
    return cw;
  }

  enum class Status { ok, constraint_violation, index_out_of_range };

  struct Decoded {
    Status status = Status::ok;
    BigInt index;
  };

  // Corrupted input allowed; both failure modes count as frame errors.
  Decoded decode(std::span<const std::uint8_t> cw) const {
    Decoded d;
    if (static_cast<int>(cw.size()) != m_ || !set_.satisfies(cw)) {
      d.status = Status::constraint_violation;
      return d;
    }
    d.index = index_of(cw);
    if (d.index >= pow2(s_)) d.status = Status::index_out_of_range;
    return d;
  }

 private:
  // c_{i+k} for the symbol at word position p (absent near the left edge).
  static std::optional<std::uint8_t> context(const Word& cw, int p, int k) {
    return p - k >= 0 ? std::optional<std::uint8_t>(cw[static_cast<std::size_t>(p - k)]) : std::nullopt;
  }
  static std::optional<std::uint8_t> context(std::span<const std::uint8_t> cw, int p, int k) {
    return p - k >= 0 ? std::optional<std::uint8_t>(cw[static_cast<std::size_t>(p - k)]) : std::nullopt;
  }

  int m_;
  int s_;
  PatternSet set_;
};

// ---------------------------------------------------------------------------
// Bridging: two symbols between consecutive codewords, carrying 3 payload
// bits. The scenario table keys on the codeword boundary; within a scenario,
// cells are tried row-major and the first match fixes the bridge alphabet.

namespace detail {

enum class OtTailCond { any, last_alpha, last_alpha4, last_beta1, last_beta2, last_beta1p, last_beta2p, last2_b1p_b3, last2_b2p_b4 };
enum class OtHeadCond { any, first_alpha, first_alpha4, first_beta1, first_beta2, first_beta1p, first_beta2p, first2_b3_b1p, first2_b4_b2p };
enum class OtBridgeAlphabet { b21, b12, b22, b11 };  // (d1 set, d0 set) over beta2' / beta1'

struct OtBridgeCell {
  OtTailCond tail;
  OtHeadCond head;
  OtBridgeAlphabet alphabet;
};

inline bool matches(OtTailCond cond, std::span<const std::uint8_t> tail) {
  using namespace sets;
  const bool h1 = !tail.empty();
  const bool h2 = tail.size() >= 2;
  const int last = h1 ? tail.back() : -1;
  const int prev = h2 ? tail[tail.size() - 2] : -1;
  switch (cond) {
    case OtTailCond::any: return true;
    case OtTailCond::last_alpha: return last == 2;
    case OtTailCond::last_alpha4: return last == 5;
    case OtTailCond::last_beta1: return h1 && contains(beta1, last);
    case OtTailCond::last_beta2: return h1 && contains(beta2, last);
    case OtTailCond::last_beta1p: return h1 && contains(beta1p, last);
    case OtTailCond::last_beta2p: return h1 && contains(beta2p, last);
    case OtTailCond::last2_b1p_b3: return h2 && contains(beta1p, prev) && contains(beta3, last);
    case OtTailCond::last2_b2p_b4: return h2 && contains(beta2p, prev) && contains(beta4, last);
  }
  return false;
}

inline bool matches(OtHeadCond cond, std::span<const std::uint8_t> head) {
  using namespace sets;
  const bool h1 = !head.empty();
  const bool h2 = head.size() >= 2;
  const int first = h1 ? head.front() : -1;
  const int second = h2 ? head[1] : -1;
  switch (cond) {
    case OtHeadCond::any: return true;
    case OtHeadCond::first_alpha: return first == 2;
    case OtHeadCond::first_alpha4: return first == 5;
    case OtHeadCond::first_beta1: return h1 && contains(beta1, first);
    case OtHeadCond::first_beta2: return h1 && contains(beta2, first);
    case OtHeadCond::first_beta1p: return h1 && contains(beta1p, first);
    case OtHeadCond::first_beta2p: return h1 && contains(beta2p, first);
    case OtHeadCond::first2_b3_b1p: return h2 && contains(beta3, first) && contains(beta1p, second);
    case OtHeadCond::first2_b4_b2p: return h2 && contains(beta4, first) && contains(beta2p, second);
  }
  return false;
}

inline const std::array<OtBridgeCell, 21>& ot_bridge_table() {
  using T = OtTailCond;
  using H = OtHeadCond;
  using A = OtBridgeAlphabet;
  static const std::array<OtBridgeCell, 21> table{{
      // Scenario 1
      {T::last_alpha, H::first_beta1, A::b21},
      {T::last_beta1, H::first_alpha, A::b12},
      {T::last_alpha4, H::first_beta2, A::b12},
      {T::last_beta2, H::first_alpha4, A::b21},
      {T::last2_b1p_b3, H::first_beta1p, A::b21},
      {T::last_beta1p, H::first2_b3_b1p, A::b12},
      {T::last2_b2p_b4, H::first_beta2p, A::b12},
      {T::last_beta2p, H::first2_b4_b2p, A::b21},
      // Scenario 2
      {T::last_alpha, H::any, A::b22},
      {T::any, H::first_alpha, A::b22},
      {T::last_alpha4, H::any, A::b11},
      {T::any, H::first_alpha4, A::b11},
      {T::last2_b1p_b3, H::any, A::b22},
      {T::any, H::first2_b3_b1p, A::b22},
      {T::last2_b2p_b4, H::any, A::b11},
      {T::any, H::first2_b4_b2p, A::b11},
      // Scenario 3
      {T::last_beta1p, H::first_beta1p, A::b22},
      {T::last_beta2p, H::first_beta2p, A::b11},
      {T::last_beta1p, H::first_beta2p, A::b12},
      {T::last_beta2p, H::first_beta1p, A::b21},
      // Scenario 4
      {T::any, H::any, A::b12},
  }};
  return table;
}

inline std::pair<std::span<const std::uint8_t>, std::span<const std::uint8_t>> ot_bridge_sets(
    OtBridgeAlphabet a) {
  using namespace sets;
  std::span<const std::uint8_t> b1(beta1p.data(), beta1p.size());
  std::span<const std::uint8_t> b2(beta2p.data(), beta2p.size());
  switch (a) {
    case OtBridgeAlphabet::b21: return {b2, b1};
    case OtBridgeAlphabet::b12: return {b1, b2};
    case OtBridgeAlphabet::b22: return {b2, b2};
    case OtBridgeAlphabet::b11: return {b1, b1};
  }
  return {b1, b2};
}

}  // namespace detail

// Admissible bridge patterns for a codeword boundary, lexicographically
// ordered; the first 8 carry payloads 0..7. `tail` is the end of the
// previous codeword, `head` the start of the next (empty at stream end).
inline std::vector<std::array<std::uint8_t, 2>> ot_bridge_candidates(
    std::span<const std::uint8_t> tail, std::span<const std::uint8_t> head) {
  static const PatternSet set = PatternSet::builtin(BuiltinSet::ot8);
  // Bridge symbols are always drawn from beta1' or beta2' (never alpha or
  // alpha^4). A real boundary picks its alphabet from the scenario table; the
  // stream-final bridge, with no head context, enumerates both alphabets.
  static constexpr std::array<std::uint8_t, 6> any_bridge{0, 1, 3, 4, 6, 7};
  std::span<const std::uint8_t> d1_set(any_bridge), d0_set(any_bridge);
  if (!head.empty()) {
    for (const auto& c : detail::ot_bridge_table()) {
      if (detail::matches(c.tail, tail) && detail::matches(c.head, head)) {
        std::tie(d1_set, d0_set) = detail::ot_bridge_sets(c.alphabet);
        break;
      }
    }
  }

  std::vector<std::array<std::uint8_t, 2>> out;
  Word window;
  for (auto d1 : d1_set) {
    for (auto d0 : d0_set) {
      window.assign(tail.begin(), tail.end());
      window.push_back(d1);
      window.push_back(d0);
      window.insert(window.end(), head.begin(), head.end());
      if (set.satisfies(window)) out.push_back({d1, d0});
    }
  }
  return out;
}

inline std::array<std::uint8_t, 2> ot_bridge_encode(std::span<const std::uint8_t> tail,
                                                    std::span<const std::uint8_t> head, int payload) {
  if (payload < 0 || payload > 7) throw std::invalid_argument("OT bridge payload must be 0..7");
  auto cands = ot_bridge_candidates(tail, head);
  if (cands.size() < 8) throw std::logic_error("fewer than 8 admissible OT bridge patterns");
  return cands[static_cast<std::size_t>(payload)];
}

// Inverse lookup in the same ordered list; unmapped patterns are frame errors.
inline std::optional<int> ot_bridge_decode(std::span<const std::uint8_t> tail,
                                           const std::array<std::uint8_t, 2>& bridge,
                                           std::span<const std::uint8_t> head) {
  auto cands = ot_bridge_candidates(tail, head);
  const std::size_t used = std::min<std::size_t>(cands.size(), 8);
  for (std::size_t i = 0; i < used; ++i)
    if (cands[i] == bridge) return static_cast<int>(i);
  return std::nullopt;
}

}  // namespace loco
