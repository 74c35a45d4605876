// Exact cardinalities N8(m)/N4(m), group cardinalities, message lengths
// (adder sizes) and finite-length rates for the three code families.
#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "loco/bigint.hpp"
#include "loco/rank.hpp"

namespace loco {

// Memoized second-order linear recurrence f(m) = c1*f(m-1) + c2*f(m-2).
// Values are appended to a deque so concurrent readers of filled entries
// stay valid while the table grows.
class CardinalityTable {
 public:
  CardinalityTable(int first_index, std::vector<BigInt> seeds, long c1, long c2)
      : first_(first_index), c1_(c1), c2_(c2) {
    for (auto& s : seeds) vals_.push_back(std::move(s));
    filled_.store(vals_.size(), std::memory_order_release);
  }

  int first_index() const { return first_; }

  const BigInt& at(int m) const {
    if (m < first_) throw std::out_of_range("cardinality index below table start");
    const auto idx = static_cast<std::size_t>(m - first_);
    if (idx >= filled_.load(std::memory_order_acquire)) {
      std::lock_guard<std::mutex> lock(grow_mutex_);
      while (filled_.load(std::memory_order_relaxed) <= idx) {
        const std::size_t n = vals_.size();
        vals_.push_back(c1_ * vals_[n - 1] + c2_ * vals_[n - 2]);
        filled_.store(vals_.size(), std::memory_order_release);
      }
    }
    return vals_[idx];
  }

 private:
  int first_;
  long c1_, c2_;
  mutable std::deque<BigInt> vals_;
  mutable std::atomic<std::size_t> filled_{0};
  mutable std::mutex grow_mutex_;
};

// N8(m) = 5 N8(m-1) + 5 N8(m-2), N8(0) = 2, N8(1) = 8.
inline const CardinalityTable& ot_cardinalities() {
  static CardinalityTable t(0, {BigInt(2), BigInt(8)}, 5, 5);
  return t;
}

// N4(m) = 2 N4(m-1) + N4(m-2), N4(-1) = 0, N4(0) = 2, N4(1) = 4.
inline const CardinalityTable& st_cardinalities() {
  static CardinalityTable t(-1, {BigInt(0), BigInt(2), BigInt(4)}, 2, 1);
  return t;
}

inline const BigInt& n8(int m) { return ot_cardinalities().at(m); }
inline const BigInt& n4(int m) { return st_cardinalities().at(m); }

// Group cardinalities from the OT enumeration: both divisions are exact.
inline BigInt n8_group1(int m) {
  BigInt d = n8(m) - n8(m - 1);
  if (d % 6 != 0) throw std::logic_error("N8(m) - N8(m-1) not divisible by 6");
  return d / 6;
}

inline BigInt n8_group3(int m) {
  const BigInt& v = n8(m - 1);
  if (v % 2 != 0) throw std::logic_error("N8(m-1) not divisible by 2");
  return v / 2;
}

enum class CodeFamily { ot, st, op };

inline const char* family_name(CodeFamily f) {
  switch (f) {
    case CodeFamily::ot: return "ot";
    case CodeFamily::st: return "st";
    case CodeFamily::op: return "op";
  }
  return "?";
}

inline CodeFamily family_from_name(const std::string& s) {
  if (s == "ot") return CodeFamily::ot;
  if (s == "st") return CodeFamily::st;
  if (s == "op") return CodeFamily::op;
  throw std::invalid_argument("unknown code family: " + s);
}

// OP-LOCO has no closed-form recurrence here; its cardinality comes from the
// generic counting DFA over OP8.
inline const CountingDfa& op_counting_dfa() {
  static CountingDfa dfa(PatternSet::builtin(BuiltinSet::op8));
  return dfa;
}

inline BigInt code_cardinality(CodeFamily f, int m) {
  switch (f) {
    case CodeFamily::ot: return n8(m);
    case CodeFamily::st: return n4(m);
    case CodeFamily::op: return op_counting_dfa().cardinality(m);
  }
  throw std::invalid_argument("bad code family");
}

// s = floor(log2(N(m))): the message length and the adder size.
inline int message_length(CodeFamily f, int m) {
  if (m < 1) throw std::invalid_argument("message_length requires m >= 1");
  return floor_log2(code_cardinality(f, m));
}

// Payload bits carried inside one bridging interval.
constexpr int bridge_payload_bits(CodeFamily f) {
  return f == CodeFamily::ot ? 3 : f == CodeFamily::st ? 2 : 0;
}

// Bridging symbols between consecutive codewords in this artifact's streams.
// OP uses two payload-free columns: no single GF(8) symbol can separate a
// codeword ending beta1-alpha from one starting alpha^4-beta2.
constexpr int bridge_symbol_count(CodeFamily f) {
  return f == CodeFamily::st ? 3 : 2;
}

// Exact rational rate R = num/den and normalized rate Rn = num_n/den_n.
struct RateInfo {
  int m = 0;
  int s = 0;
  long num = 0, den = 1;
  long num_n = 0, den_n = 1;

  double rate() const { return static_cast<double>(num) / static_cast<double>(den); }
  double normalized() const { return static_cast<double>(num_n) / static_cast<double>(den_n); }
};

inline RateInfo rates(CodeFamily f, int m) {
  RateInfo r;
  r.m = m;
  r.s = message_length(f, m);
  switch (f) {
    case CodeFamily::ot:  // R = (s+3)/(m+2), Rn = R/3
      r.num = r.s + 3;
      r.den = m + 2;
      r.num_n = r.num;
      r.den_n = 3 * r.den;
      break;
    case CodeFamily::st:  // R = (s+2)/(m+3), Rn = (R+1)/3
      r.num = r.s + 2;
      r.den = m + 3;
      r.num_n = r.num + r.den;
      r.den_n = 3 * r.den;
      break;
    case CodeFamily::op:  // one payload-free bridging symbol per codeword
      r.num = r.s;
      r.den = m + 1;
      r.num_n = r.num;
      r.den_n = 3 * r.den;
      break;
  }
  return r;
}

// Exact 4-decimal rendering of num/den (round half away from zero).
inline std::string format_fixed4(long num, long den) {
  if (den <= 0 || num < 0) throw std::invalid_argument("format_fixed4 expects a nonnegative fraction");
  long scaled = (num * 10000 + den / 2) / den;
  std::string frac = std::to_string(scaled % 10000);
  frac.insert(0, 4 - frac.size(), '0');
  return std::to_string(scaled / 10000) + "." + frac;
}

}  // namespace loco
