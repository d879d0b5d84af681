// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gdline/bit_chunk.hpp"
#include "gdline/gf2.hpp"

namespace gdline {

// (n, k) = (2^m - 1, 2^m - m - 1) Hamming code realized through its CRC-m
// generator. No G/H matrices are materialized: the parity-check matrix lives
// in the generator and the single-bit syndrome table.
class HammingCode {
 public:
  unsigned m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return n_ - m_; }
  const GeneratorPolynomial& generator() const noexcept { return generator_; }

  // Bit position flipped by a nonzero syndrome; nullopt for syndrome 0 or
  // values wider than m bits.
  std::optional<std::size_t> position_of(Syndrome s) const noexcept {
    if (s == 0 || s >= position_.size()) return std::nullopt;
    return static_cast<std::size_t>(position_[s]);
  }
  Syndrome syndrome_at(std::size_t position) const noexcept { return syndrome_[position]; }

  // poly_mod(data, generator()) evaluated a byte at a time.
  Syndrome remainder(const BitChunk& data) const noexcept;
  // (data(x) * x^m) mod g(x).
  Syndrome shifted_remainder(const BitChunk& data) const noexcept;

  friend HammingCode build_code(unsigned m, bool alternate_generator);

 private:
  HammingCode() = default;
  Syndrome fold_bits(Syndrome r, std::uint8_t bits, unsigned count) const noexcept;

  unsigned m_ = 0;
  std::size_t n_ = 0;
  GeneratorPolynomial generator_;
  std::vector<std::uint16_t> position_;   // indexed by syndrome, [0] unused
  std::vector<Syndrome> syndrome_;        // indexed by position
  std::array<std::uint16_t, 256> step_{}; // (h * x^m) mod g for every byte h
};

// Throws UnsupportedM when m has no registered generator.
HammingCode build_code(unsigned m, bool alternate_generator = false);

}  // namespace gdline
