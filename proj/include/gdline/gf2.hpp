// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "gdline/bit_chunk.hpp"

namespace gdline {

// m-bit remainder of a chunk polynomial.
using Syndrome = std::uint32_t;

// Degree-m polynomial over GF(2). The x^m coefficient is implicit; low_bits
// holds x^(m-1)..x^0 in the same form as the CRC-m parameter.
struct GeneratorPolynomial {
  unsigned degree = 0;
  std::uint32_t low_bits = 0;

  std::uint32_t full() const noexcept { return (std::uint32_t{1} << degree) | low_bits; }
  std::string to_string() const;  // "x^3+x+1"
  friend bool operator==(const GeneratorPolynomial&, const GeneratorPolynomial&) = default;
};

inline constexpr unsigned kMinM = 3;
inline constexpr unsigned kMaxM = 15;

// Hamming generator polynomials for m = 3..15. Every m has a primary entry;
// m = 5 and m = 9 also carry an alternate.
struct RegistryEntry {
  unsigned m;
  std::uint32_t low_bits;
  bool alternate;
};
std::span<const RegistryEntry> generator_registry() noexcept;

// Primary (or alternate) polynomial for m; throws UnsupportedM.
GeneratorPolynomial generator_for(unsigned m, bool alternate = false);

// data(x) mod g(x), plain long division: no x^m pre-shift, zero initial
// register, no reflection and no final XOR. This is NOT the usual CRC-m
// convention of most CRC libraries, which append m zero bits first.
Syndrome poly_mod(const BitChunk& data, const GeneratorPolynomial& g) noexcept;

}  // namespace gdline
