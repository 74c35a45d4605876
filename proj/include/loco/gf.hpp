// GF(4)/GF(8) symbol domain: integer levels, complements, and the bijection
// between symbols and binary track columns. Symbols are ordered by level
// (0 < 1 < alpha < alpha^2 < ...); no field arithmetic is needed anywhere.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace loco {

// A codeword is a sequence of levels, most significant symbol first.
using Word = std::vector<std::uint8_t>;

struct Symbol {
  std::uint8_t level{0};
  std::uint8_t order{8};  // field size q, 4 or 8

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

inline Symbol make_symbol(int level, int order) {
  if (order != 4 && order != 8) throw std::invalid_argument("field order must be 4 or 8");
  if (level < 0 || level >= order) throw std::invalid_argument("symbol level out of range");
  return Symbol{static_cast<std::uint8_t>(level), static_cast<std::uint8_t>(order)};
}

inline int level(Symbol s) { return s.level; }

// Levels of complementary symbols sum to q-1.
inline Symbol complement(Symbol s) {
  return Symbol{static_cast<std::uint8_t>(s.order - 1 - s.level), s.order};
}

constexpr int bits_per_column(int order) { return order == 8 ? 3 : 2; }

// Level written as a big-endian bit column, uppermost track first.
inline void to_column(Symbol s, std::span<std::uint8_t> out) {
  const int n = bits_per_column(s.order);
  if (static_cast<int>(out.size()) != n) throw std::invalid_argument("column size mismatch");
  for (int b = 0; b < n; ++b) out[b] = (s.level >> (n - 1 - b)) & 1;
}

inline std::array<std::uint8_t, 3> to_column3(Symbol s) {
  std::array<std::uint8_t, 3> col{};
  to_column(s, std::span<std::uint8_t>(col.data(), bits_per_column(s.order)));
  return col;
}

inline Symbol from_column(std::span<const std::uint8_t> bits, int order) {
  const int n = bits_per_column(order);
  if (static_cast<int>(bits.size()) != n) throw std::invalid_argument("column size mismatch");
  int lvl = 0;
  for (int b = 0; b < n; ++b) lvl = (lvl << 1) | (bits[b] & 1);
  return make_symbol(lvl, order);
}

inline char to_digit(Symbol s) { return static_cast<char>('0' + s.level); }

inline Symbol from_digit(char c, int order) {
  if (c < '0' || c >= '0' + order) throw std::invalid_argument("bad symbol digit");
  return make_symbol(c - '0', order);
}

// "3 3 3 3 3" style rendering used by the CLI and the stream text format.
inline std::string word_to_text(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += static_cast<char>('0' + w[i]);
  }
  return out;
}

inline Word word_from_text(const std::string& text, int order) {
  Word w;
  for (char c : text) {
    if (c == ' ' || c == '\t') continue;
    w.push_back(from_digit(c, order).level);
  }
  return w;
}

}  // namespace loco
