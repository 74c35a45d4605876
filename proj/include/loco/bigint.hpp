// Arbitrary-precision integer alias plus bit-level helpers shared by the
// enumeration, rank, and framing code.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace loco {

using BigInt = boost::multiprecision::cpp_int;

// floor(log2(v)) from the bit length; never goes through floating point.
inline int floor_log2(const BigInt& v) {
  if (v <= 0) throw std::domain_error("floor_log2 requires a positive value");
  return static_cast<int>(boost::multiprecision::msb(v));
}

inline BigInt pow2(int e) {
  BigInt v = 1;
  return v << e;
}

// Bits are 0/1 bytes, most significant first.
inline BigInt bits_to_bigint(const std::uint8_t* bits, std::size_t n) {
  BigInt v = 0;
  for (std::size_t i = 0; i < n; ++i) v = (v << 1) | static_cast<int>(bits[i] & 1);
  return v;
}

inline std::vector<std::uint8_t> bigint_to_bits(BigInt v, int width) {
  if (v < 0) throw std::domain_error("negative value");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(width), 0);
  for (int i = width - 1; i >= 0 && v != 0; --i) {
    bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 1);
    v >>= 1;
  }
  if (v != 0) throw std::domain_error("value does not fit in the requested width");
  return bits;
}

}  // namespace loco
