// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gdline {

// Fixed-length bit string. Bit i is the coefficient of x^i; bit size()-1 is
// the MSB and is printed first, so "0000001" has only bit 0 set.
//
// Byte serialization is MSB first: bit size()-1 is the top bit of byte 0.
class BitChunk {
 public:
  BitChunk() = default;
  explicit BitChunk(std::size_t length);

  static BitChunk from_string(std::string_view bits);
  static BitChunk from_uint(std::uint64_t value, std::size_t length);
  // length must equal 8 * bytes.size().
  static BitChunk from_bytes(std::span<const std::uint8_t> bytes);

  std::size_t size() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }

  bool test(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  // Eight bits lo+7..lo as a byte (bit lo+7 on top). Requires lo + 8 <= size().
  std::uint8_t byte_at(std::size_t lo) const noexcept;

  bool any() const noexcept;
  std::size_t popcount() const noexcept;

  // Bits [lo, lo+length) as a new chunk.
  BitChunk slice(std::size_t lo, std::size_t length) const;
  // Copies src into bits [lo, lo+src.size()).
  void assign(std::size_t lo, const BitChunk& src);

  std::uint64_t to_uint() const;  // size() <= 64
  std::string to_string() const;
  // Big-endian hex of the value, ceil(size/4) digits.
  std::string to_hex() const;
  static BitChunk from_hex(std::string_view hex, std::size_t length);

  std::vector<std::uint8_t> to_bytes() const;  // size() % 8 == 0
  void write_bytes(std::span<std::uint8_t> out) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  BitChunk& operator^=(const BitChunk& other);
  friend BitChunk operator^(BitChunk lhs, const BitChunk& rhs) { return lhs ^= rhs; }
  friend bool operator==(const BitChunk& a, const BitChunk& b) noexcept {
    return a.length_ == b.length_ && a.words_ == b.words_;
  }

  std::size_t hash() const noexcept;

 private:
  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitChunkHash {
  std::size_t operator()(const BitChunk& c) const noexcept { return c.hash(); }
};

}  // namespace gdline
