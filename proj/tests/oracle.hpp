// SPDX-License-Identifier: Apache-2.0
#pragma once

// Brute-force GF(2) helpers for tests. Polynomials fit in a uint64_t (bit i
// is the x^i coefficient) and are handled with textbook long division and
// carry-less multiplication, independent of the library's CRC routines.

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

inline int degree(std::uint64_t p) { return p ? 63 - std::countl_zero(p) : -1; }

inline std::uint64_t mod(std::uint64_t a, std::uint64_t g) {
  const int dg = degree(g);
  while (degree(a) >= dg) a ^= g << (degree(a) - dg);
  return a;
}

inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  for (int i = 0; i < 64; ++i) {
    if ((b >> i) & 1u) r ^= a << i;
  }
  return r;
}

inline std::uint64_t from_bits(const std::string& s) {
  std::uint64_t v = 0;
  for (char c : s) v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  return v;
}

inline std::string to_bits(std::uint64_t v, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((v >> i) & 1u) s[static_cast<std::size_t>(width - 1 - i)] = '1';
  }
  return s;
}

// Every codeword of the cyclic code generated by g: u(x) g(x), deg u < k.
inline std::vector<std::uint64_t> codewords(std::uint64_t g, int n) {
  const int k = n - degree(g);
  std::vector<std::uint64_t> out;
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << k); ++u) out.push_back(clmul(u, g));
  return out;
}

// Nearest codeword at Hamming distance <= 1, found by exhaustive search.
inline std::optional<std::uint64_t> nearest_codeword(std::uint64_t body, const std::vector<std::uint64_t>& words) {
  for (auto c : words) {
    if (std::popcount(c ^ body) <= 1) return c;
  }
  return std::nullopt;
}

}  // namespace oracle
