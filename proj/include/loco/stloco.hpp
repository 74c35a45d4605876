// ST-LOCO codec over GF(4): index rule (Cases 1.a-10), greedy encoding,
// 3-symbol bridging with 2 payload bits, and assembly of the coded
// upper/middle tracks with an uncoded lower track.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "loco/bigint.hpp"
#include "loco/enumeration.hpp"
#include "loco/grid.hpp"
#include "loco/patterns.hpp"

namespace loco {

struct StMergeVector {
  int case_id = 0;  // 0 = zero-contribution symbol
  std::array<int, 5> y{0, 0, 0, 0, 0};

  int theta1() const { return y[0] + y[2] + y[3]; }
  int theta2() const { return y[1] + y[2] + y[4]; }
  int theta3() const { return y[0] + y[1] + y[2]; }
};

// Case selection over (c_{i+2}, c_{i+1}, c_i); `leftmost` marks i = m-1.
// A missing c_{i+2} satisfies the "c_{i+2} != 0" side conditions vacuously.
inline StMergeVector st_classify(bool leftmost, std::optional<std::uint8_t> c2,
                                 std::optional<std::uint8_t> c1, std::uint8_t c0) {
  auto mv = [](int id, std::array<int, 5> y) { return StMergeVector{id, y}; };
  if (leftmost) {
    if (c0 == 1) return mv(1, {1, 0, 0, 0, 0});   // 1.a
    if (c0 == 2) return mv(2, {0, 1, 0, 0, 0});   // 1.b
    if (c0 == 3) return mv(3, {0, 0, 1, 0, 0});   // 1.c
    return mv(0, {});
  }
  if (!c1) return mv(0, {});
  const bool c2_nonzero = !c2 || *c2 != 0;
  if (*c1 == 0 && c0 == 2) return mv(4, {1, 0, 0, 0, 0});                  // 2
  if (*c1 == 0 && c0 == 3) return mv(5, {0, 1, 0, 0, 0});                  // 3
  if (*c1 == 1 && c0 == 1) return mv(6, {});                               // 4: g = 0
  if (*c1 == 1 && c0 == 3) return mv(7, {0, 0, 0, 1, 0});                  // 5
  if (*c1 == 2 && c0 == 2) return mv(8, {1, 0, 0, 0, 0});                  // 6
  if (*c1 == 3 && c0 == 1 && !c2_nonzero) return mv(9, {});                // 7: g = 0
  if (*c1 == 3 && c0 == 3 && !c2_nonzero) return mv(10, {0, 0, 0, 1, 0});  // 8
  if (*c1 == 3 && c0 == 1 && c2_nonzero) return mv(11, {0, 0, 0, 1, 0});   // 9
  if (*c1 == 3 && c0 == 3 && c2_nonzero) return mv(12, {0, 0, 0, 0, 1});   // 10
  return mv(0, {});
}

// g_i(c_i) = (theta1/2 + theta2) N4(i) + (theta3/2) N4(i-1); N4 values are
// even for i >= 0 and N4(-1) = 0, so both halvings are exact.
inline BigInt st_contribution(int i, const StMergeVector& mv) {
  BigInt num = BigInt(mv.theta1()) * n4(i) + BigInt(mv.theta3()) * n4(i - 1);
  if (num % 2 != 0) throw std::logic_error("ST contribution not divisible by 2");
  return num / 2 + BigInt(mv.theta2()) * n4(i);
}

class StCodec {
 public:
  explicit StCodec(int m) : m_(m), set_(PatternSet::builtin(BuiltinSet::st4)) {
    if (m < 1) throw std::invalid_argument("codeword length must be >= 1");
    s_ = floor_log2(n4(m));
  }

  int m() const { return m_; }
  int message_bits() const { return s_; }
  const PatternSet& pattern_set() const { return set_; }
  const BigInt& cardinality() const { return n4(m_); }

  BigInt index_of(std::span<const std::uint8_t> cw) const {
    if (static_cast<int>(cw.size()) != m_) throw std::invalid_argument("codeword length mismatch");
    if (!set_.satisfies(cw)) throw ConstraintViolation("codeword contains a forbidden pattern");
    BigInt g = 0;
    for (int p = 0; p < m_; ++p) {
      const int i = m_ - 1 - p;
      auto mv = st_classify(p == 0, context(cw, p, 2), context(cw, p, 1), cw[static_cast<std::size_t>(p)]);
      g += st_contribution(i, mv);
    }
    return g;
  }

  Word encode_index(BigInt index) const {
    if (index < 0 || index >= cardinality()) throw std::out_of_range("message index out of range");
    Word cw;
    cw.reserve(static_cast<std::size_t>(m_));
    for (int p = 0; p < m_; ++p) {
      const int i = m_ - 1 - p;
      int best = -1;
      BigInt best_g = 0;
      for (int z = 0; z < 4; ++z) {
        cw.push_back(static_cast<std::uint8_t>(z));
        const bool ok = !set_.violation_at_end(cw);
        cw.pop_back();
        if (!ok) continue;
        auto mv = st_classify(p == 0, context(cw, p, 2), context(cw, p, 1), static_cast<std::uint8_t>(z));
        BigInt g = st_contribution(i, mv);
        if (g <= index) {
          best = z;
          best_g = g;
        }
      }
      if (best < 0) throw std::logic_error("no admissible symbol during ST encoding");
      cw.push_back(static_cast<std::uint8_t>(best));
      index -= best_g;
    }
    if (index != 0) throw std::logic_error("ST encoding left a nonzero residual");
    return cw;
  }

  enum class Status { ok, constraint_violation, index_out_of_range };

  struct Decoded {
    Status status = Status::ok;
    BigInt index;
  };

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
  static std::optional<std::uint8_t> context(std::span<const std::uint8_t> cw, int p, int k) {
    return p - k >= 0 ? std::optional<std::uint8_t>(cw[static_cast<std::size_t>(p - k)]) : std::nullopt;
  }

  int m_;
  int s_;
  PatternSet set_;
};

// ---------------------------------------------------------------------------
// Bridging: three GF(4) symbols between codewords, 2 payload bits. The
// admissible patterns are generated by enumeration over the boundary window;
// every boundary admits at least 4 and the first 4 carry payloads 0..3.

inline std::vector<std::array<std::uint8_t, 3>> st_bridge_candidates(
    std::span<const std::uint8_t> tail, std::span<const std::uint8_t> head) {
  static const PatternSet set = PatternSet::builtin(BuiltinSet::st4);
  const int t0 = tail.empty() ? -1 : tail.back();
  const int h0 = head.empty() ? -1 : head.front();
  std::vector<std::array<std::uint8_t, 3>> out;
  Word window;
  for (int d2 = 0; d2 < 4; ++d2)
    for (int d1 = 0; d1 < 4; ++d1)
      for (int d0 = 0; d0 < 4; ++d0) {
        // Self-clocking: a symbol transition must occur within the bridging
        // interval or directly before/after it.
        const bool no_transition = d2 == d1 && d1 == d0 && (t0 < 0 || t0 == d2) &&
                                   (h0 < 0 || h0 == d2);
        if (no_transition) continue;
        window.assign(tail.begin(), tail.end());
        window.push_back(static_cast<std::uint8_t>(d2));
        window.push_back(static_cast<std::uint8_t>(d1));
        window.push_back(static_cast<std::uint8_t>(d0));
        window.insert(window.end(), head.begin(), head.end());
        if (set.satisfies(window))
          out.push_back({static_cast<std::uint8_t>(d2), static_cast<std::uint8_t>(d1),
                         static_cast<std::uint8_t>(d0)});
      }
  return out;
}

inline std::array<std::uint8_t, 3> st_bridge_encode(std::span<const std::uint8_t> tail,
                                                    std::span<const std::uint8_t> head, int payload) {
  if (payload < 0 || payload > 3) throw std::invalid_argument("ST bridge payload must be 0..3");
  auto cands = st_bridge_candidates(tail, head);
  if (cands.size() < 4) throw std::logic_error("fewer than 4 admissible ST bridge patterns");
  return cands[static_cast<std::size_t>(payload)];
}

inline std::optional<int> st_bridge_decode(std::span<const std::uint8_t> tail,
                                           const std::array<std::uint8_t, 3>& bridge,
                                           std::span<const std::uint8_t> head) {
  auto cands = st_bridge_candidates(tail, head);
  const std::size_t used = std::min<std::size_t>(cands.size(), 4);
  for (std::size_t i = 0; i < used; ++i)
    if (cands[i] == bridge) return static_cast<int>(i);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Track assembly: coded GF(4) symbols on the upper and middle tracks, the
// uncoded lower track passed through untouched.

struct TrackTriple {
  Word symbols;                          // GF(4) levels
  std::vector<std::uint8_t> lower_bits;  // same length as symbols

  friend bool operator==(const TrackTriple&, const TrackTriple&) = default;
};

inline BitGrid assemble(const TrackTriple& t) {
  if (t.symbols.size() != t.lower_bits.size())
    throw std::invalid_argument("lower track length must equal the symbol count");
  BitGrid g(static_cast<int>(t.symbols.size()));
  for (std::size_t c = 0; c < t.symbols.size(); ++c) {
    auto col = to_column3(make_symbol(t.symbols[c], 4));
    g.at(0, static_cast<int>(c)) = col[0];
    g.at(1, static_cast<int>(c)) = col[1];
    g.at(2, static_cast<int>(c)) = t.lower_bits[c] & 1;
  }
  return g;
}

inline TrackTriple split(const BitGrid& g) {
  TrackTriple t;
  t.symbols.reserve(static_cast<std::size_t>(g.cols()));
  t.lower_bits.reserve(static_cast<std::size_t>(g.cols()));
  for (int c = 0; c < g.cols(); ++c) {
    const std::array<std::uint8_t, 2> col{g.at(0, c), g.at(1, c)};
    t.symbols.push_back(from_column(std::span<const std::uint8_t>(col.data(), 2), 4).level);
    t.lower_bits.push_back(g.at(2, c));
  }
  return t;
}

}  // namespace loco
