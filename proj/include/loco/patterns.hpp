// Forbidden-pattern sets (OS8, OP8, OT8, ST4), sequence scanners, and the
// 3x3 isolation-pattern classifiers (SIS / PIS / IPIS, RTIS = PIS u IPIS).
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loco/gf.hpp"
#include "loco/grid.hpp"

namespace loco {

class ConstraintViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BuiltinSet { os8, op8, ot8, st4 };

// Symbol subsets from the pattern-set definitions, as levels.
namespace sets {
inline constexpr std::array<std::uint8_t, 4> beta1{0, 1, 4, 5};       // {0,1,a3,a4}
inline constexpr std::array<std::uint8_t, 4> beta2{2, 3, 6, 7};       // {a,a2,a5,a6}
inline constexpr std::array<std::uint8_t, 3> beta1p{0, 1, 4};         // {0,1,a3}
inline constexpr std::array<std::uint8_t, 3> beta2p{3, 6, 7};         // {a2,a5,a6}
inline constexpr std::array<std::uint8_t, 2> beta3{3, 6};             // {a2,a5}
inline constexpr std::array<std::uint8_t, 2> beta4{1, 4};             // {1,a3}
inline constexpr std::array<std::uint8_t, 2> gamma1{6, 7};            // {a5,a6}
inline constexpr std::array<std::uint8_t, 2> gamma2{4, 5};            // {a3,a4}
inline constexpr std::array<std::uint8_t, 2> gamma3{3, 4};            // {a2,a3}
inline constexpr std::array<std::uint8_t, 2> zeta1{0, 2};             // {0,a} over GF(4)
inline constexpr std::array<std::uint8_t, 2> zeta2{1, 3};             // {1,a2} over GF(4)

template <std::size_t N>
constexpr bool contains(const std::array<std::uint8_t, N>& s, int v) {
  for (auto e : s)
    if (e == v) return true;
  return false;
}
}  // namespace sets

// A minimal set of forbidden contiguous symbol tuples over one alphabet.
class PatternSet {
 public:
  PatternSet(int alphabet, std::vector<Word> patterns) : q_(alphabet) {
    if (alphabet != 4 && alphabet != 8) throw std::invalid_argument("alphabet must be 4 or 8");
    if (patterns.empty()) throw std::invalid_argument("pattern set must not be empty");
    std::set<Word> dedup(patterns.begin(), patterns.end());
    patterns_.assign(dedup.begin(), dedup.end());
    max_len_ = 0;
    for (const Word& p : patterns_) {
      if (p.empty() || p.size() > 3) throw std::invalid_argument("patterns must have length 1..3");
      for (auto s : p)
        if (s >= q_) throw std::invalid_argument("pattern symbol outside alphabet");
      max_len_ = std::max(max_len_, static_cast<int>(p.size()));
    }
    check_first_offenders();
  }

  static PatternSet builtin(BuiltinSet name);
  static PatternSet parse(std::istream& is, int alphabet);
  static PatternSet load(const std::string& path, int alphabet);

  int alphabet() const { return q_; }
  int max_length() const { return max_len_; }
  std::size_t size() const { return patterns_.size(); }
  const std::vector<Word>& patterns() const { return patterns_; }

  bool contains_pattern(const Word& p) const {
    return std::binary_search(patterns_.begin(), patterns_.end(), p);
  }

  // True iff some pattern matches a suffix of `seq` ending at its last symbol.
  bool violation_at_end(std::span<const std::uint8_t> seq) const {
    for (const Word& p : patterns_) {
      if (p.size() > seq.size()) continue;
      if (std::equal(p.begin(), p.end(), seq.end() - static_cast<std::ptrdiff_t>(p.size()))) return true;
    }
    return false;
  }

  // All contiguous occurrences, left to right; empty iff `seq` satisfies the constraint.
  std::vector<std::pair<std::size_t, Word>> find_forbidden(std::span<const std::uint8_t> seq) const {
    std::vector<std::pair<std::size_t, Word>> hits;
    for (std::size_t pos = 0; pos < seq.size(); ++pos) {
      for (const Word& p : patterns_) {
        if (pos + p.size() > seq.size()) continue;
        if (std::equal(p.begin(), p.end(), seq.begin() + static_cast<std::ptrdiff_t>(pos)))
          hits.emplace_back(pos, p);
      }
    }
    return hits;
  }

  bool satisfies(std::span<const std::uint8_t> seq) const {
    for (std::size_t pos = 1; pos <= seq.size(); ++pos)
      if (violation_at_end(seq.first(pos))) return false;
    return true;
  }

 private:
  void check_first_offenders() const {
    for (const Word& p : patterns_) {
      for (const Word& q : patterns_) {
        if (&p == &q || q.size() >= p.size()) continue;
        for (std::size_t off = 0; off + q.size() <= p.size(); ++off)
          if (std::equal(q.begin(), q.end(), p.begin() + static_cast<std::ptrdiff_t>(off)))
            throw std::invalid_argument("pattern set is not minimal: contained sub-pattern");
      }
    }
  }

  std::uint8_t q_;
  std::vector<Word> patterns_;  // sorted, unique
  int max_len_;
};

inline PatternSet PatternSet::builtin(BuiltinSet name) {
  using namespace sets;
  std::vector<Word> p;
  switch (name) {
    case BuiltinSet::os8:
      p = {{0, 2, 0}, {7, 5, 7}};
      return PatternSet(8, std::move(p));
    case BuiltinSet::op8:
      for (auto a : beta1)
        for (auto b : beta1) p.push_back({a, 2, b});
      for (auto a : beta2)
        for (auto b : beta2) p.push_back({a, 5, b});
      return PatternSet(8, std::move(p));
    case BuiltinSet::ot8:
      for (auto b : beta1) {
        p.push_back({2, b});
        p.push_back({b, 2});
      }
      for (auto b : beta2) {
        p.push_back({5, b});
        p.push_back({b, 5});
      }
      for (auto a : beta1p)
        for (auto m : beta3)
          for (auto b : beta1p) p.push_back({a, m, b});
      for (auto a : beta2p)
        for (auto m : beta4)
          for (auto b : beta2p) p.push_back({a, m, b});
      return PatternSet(8, std::move(p));
    case BuiltinSet::st4:
      p = {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {0, 3, 0}, {3, 0, 3}};
      return PatternSet(4, std::move(p));
  }
  throw std::invalid_argument("unknown builtin pattern set");
}

inline PatternSet PatternSet::parse(std::istream& is, int alphabet) {
  std::vector<Word> patterns;
  std::string line;
  while (std::getline(is, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    Word p;
    int lvl;
    while (ls >> lvl) {
      if (lvl < 0 || lvl >= alphabet) throw std::invalid_argument("pattern symbol outside alphabet");
      p.push_back(static_cast<std::uint8_t>(lvl));
    }
    if (!p.empty()) patterns.push_back(std::move(p));
  }
  return PatternSet(alphabet, std::move(patterns));
}

inline PatternSet PatternSet::load(const std::string& path, int alphabet) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open pattern file: " + path);
  return parse(f, alphabet);
}

inline PatternSet builtin_set(BuiltinSet name) { return PatternSet::builtin(name); }

inline BuiltinSet builtin_from_name(const std::string& name) {
  if (name == "os" || name == "os8" || name == "OS8") return BuiltinSet::os8;
  if (name == "op" || name == "op8" || name == "OP8") return BuiltinSet::op8;
  if (name == "ot" || name == "ot8" || name == "OT8") return BuiltinSet::ot8;
  if (name == "st" || name == "st4" || name == "ST4") return BuiltinSet::st4;
  throw std::invalid_argument("unknown pattern set name: " + name);
}

// ---------------------------------------------------------------------------
// Isolation-pattern classification on the 3-row grid.

enum class GridClass { none, sis, pis, ipis };

// SIS implies PIS implies RTIS.
constexpr bool counts_as_pis(GridClass c) { return c == GridClass::sis || c == GridClass::pis; }
constexpr bool is_rtis(GridClass c) { return c != GridClass::none; }

inline const char* to_string(GridClass c) {
  switch (c) {
    case GridClass::none: return "none";
    case GridClass::sis: return "SIS";
    case GridClass::pis: return "PIS";
    case GridClass::ipis: return "IPIS";
  }
  return "?";
}

// Full 3x3 context: SIS iff all 8 neighbors complement the center, PIS iff
// all 4 Manhattan-1 neighbors do, IPIS iff exactly 3 of those 4 do.
inline GridClass classify_grid(int center, const std::array<int, 4>& plus,
                               const std::array<int, 4>& corners) {
  int m1 = 0, cr = 0;
  for (int v : plus) m1 += (v != center);
  for (int v : corners) cr += (v != center);
  if (m1 == 4 && cr == 4) return GridClass::sis;
  if (m1 == 4) return GridClass::pis;
  if (m1 == 3) return GridClass::ipis;
  return GridClass::none;
}

// Partial-context classification: neighbors outside the grid count as
// non-complementary (they contribute no interference). Cells in the top or
// bottom row can therefore never be SIS or PIS, only IPIS.
inline GridClass classify_at(const BitGrid& g, int r, int c) {
  const int center = g.at(r, c);
  static constexpr int dr[] = {-1, 1, 0, 0};
  static constexpr int dc[] = {0, 0, 1, -1};
  int m1 = 0;
  for (int k = 0; k < 4; ++k)
    if (g.in_range(r + dr[k], c + dc[k]) && g.at(r + dr[k], c + dc[k]) != center) ++m1;
  int cr = 0;
  for (int sr : {-1, 1})
    for (int sc : {-1, 1})
      if (g.in_range(r + sr, c + sc) && g.at(r + sr, c + sc) != center) ++cr;
  if (m1 == 4 && cr == 4) return GridClass::sis;
  if (m1 == 4) return GridClass::pis;
  if (m1 == 3) return GridClass::ipis;
  return GridClass::none;
}

// Classifications of interior middle-row cells (full 3x3 context only).
inline std::vector<std::pair<int, GridClass>> grid_scan(const BitGrid& g) {
  if (g.cols() < 3) throw std::invalid_argument("grid_scan requires at least 3 columns");
  std::vector<std::pair<int, GridClass>> out;
  for (int c = 1; c + 1 < g.cols(); ++c) {
    const int center = g.at(1, c);
    std::array<int, 4> plus{g.at(0, c), g.at(2, c), g.at(1, c + 1), g.at(1, c - 1)};
    std::array<int, 4> corners{g.at(0, c - 1), g.at(0, c + 1), g.at(2, c - 1), g.at(2, c + 1)};
    GridClass cls = classify_grid(center, plus, corners);
    if (cls != GridClass::none) out.emplace_back(c, cls);
  }
  return out;
}

// Middle-row cells that are RTIS under *every* horizontal extension of the
// grid: at least 3 of the present Manhattan-1 neighbors complement the
// center. Edge columns are included; this is what makes a forbidden-pattern
// hit equivalent to a guaranteed isolation victim for short strings.
inline std::vector<int> guaranteed_rtis_columns(const BitGrid& g) {
  std::vector<int> out;
  for (int c = 0; c < g.cols(); ++c)
    if (is_rtis(classify_at(g, 1, c))) out.push_back(c);
  return out;
}

// Column expansion of a symbol word (GF(8): 3 coded rows; GF(4): coded upper
// and middle rows plus a caller-supplied lower row).
inline BitGrid expand_word(const Word& w, int order) {
  BitGrid g(static_cast<int>(w.size()));
  const int nbits = bits_per_column(order);
  for (std::size_t c = 0; c < w.size(); ++c) {
    auto col = to_column3(make_symbol(w[c], order));
    for (int b = 0; b < nbits; ++b) g.at(b, static_cast<int>(c)) = col[static_cast<std::size_t>(b)];
  }
  return g;
}

}  // namespace loco
