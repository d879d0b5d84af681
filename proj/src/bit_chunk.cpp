// SPDX-License-Identifier: Apache-2.0
#include "gdline/bit_chunk.hpp"

#include <bit>

#include "gdline/error.hpp"

namespace gdline {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitChunk::BitChunk(std::size_t length) : length_(length), words_(word_count(length), 0) {}

BitChunk BitChunk::from_string(std::string_view bits) {
  BitChunk c(bits.size());
  for (std::size_t j = 0; j < bits.size(); ++j) {
    const char ch = bits[j];
    if (ch != '0' && ch != '1') {
      throw Error(Errc::InvalidSpec, "bit string contains '" + std::string(1, ch) + "'");
    }
    if (ch == '1') c.set(bits.size() - 1 - j);
  }
  return c;
}

BitChunk BitChunk::from_uint(std::uint64_t value, std::size_t length) {
  BitChunk c(length);
  for (std::size_t i = 0; i < length && i < 64; ++i) {
    if ((value >> i) & 1u) c.set(i);
  }
  return c;
}

BitChunk BitChunk::from_bytes(std::span<const std::uint8_t> bytes) {
  const std::size_t n = bytes.size();
  BitChunk c(8 * n);
  // byte j holds bits 8(n-1-j)+7 .. 8(n-1-j)
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t lo = 8 * (n - 1 - j);
    c.words_[lo >> 6] |= std::uint64_t{bytes[j]} << (lo & 63);
  }
  return c;
}

std::uint8_t BitChunk::byte_at(std::size_t lo) const noexcept {
  const std::size_t w = lo >> 6;
  const unsigned off = lo & 63;
  std::uint64_t v = words_[w] >> off;
  if (off > 56) v |= words_[w + 1] << (64 - off);
  return static_cast<std::uint8_t>(v);
}

bool BitChunk::any() const noexcept {
  for (auto w : words_) {
    if (w) return true;
  }
  return false;
}

std::size_t BitChunk::popcount() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

BitChunk BitChunk::slice(std::size_t lo, std::size_t length) const {
  if (lo + length > length_) {
    throw Error(Errc::LengthMismatch, "slice out of range");
  }
  BitChunk out(length);
  const unsigned off = lo & 63;
  const std::size_t base = lo >> 6;
  for (std::size_t w = 0; w < out.words_.size(); ++w) {
    std::uint64_t v = words_[base + w] >> off;
    if (off != 0 && base + w + 1 < words_.size()) v |= words_[base + w + 1] << (64 - off);
    out.words_[w] = v;
  }
  if (length & 63) out.words_.back() &= (std::uint64_t{1} << (length & 63)) - 1;
  return out;
}

void BitChunk::assign(std::size_t lo, const BitChunk& src) {
  if (lo + src.length_ > length_) {
    throw Error(Errc::LengthMismatch, "assign out of range");
  }
  if ((lo & 63) == 0) {
    const std::size_t base = lo >> 6;
    const std::size_t full = src.length_ >> 6;
    for (std::size_t w = 0; w < full; ++w) words_[base + w] = src.words_[w];
    for (std::size_t i = full * 64; i < src.length_; ++i) set(lo + i, src.test(i));
    return;
  }
  for (std::size_t i = 0; i < src.length_; ++i) set(lo + i, src.test(i));
}

std::uint64_t BitChunk::to_uint() const {
  if (length_ > 64) throw Error(Errc::LengthMismatch, "chunk wider than 64 bits");
  return words_.empty() ? 0 : words_[0];
}

std::string BitChunk::to_string() const {
  std::string s(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if (test(i)) s[length_ - 1 - i] = '1';
  }
  return s;
}

std::string BitChunk::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (length_ + 3) / 4;
  std::string s(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    unsigned v = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const std::size_t i = 4 * d + b;
      if (i < length_ && test(i)) v |= 1u << b;
    }
    s[digits - 1 - d] = kDigits[v];
  }
  return s;
}

BitChunk BitChunk::from_hex(std::string_view hex, std::size_t length) {
  if (hex.size() != (length + 3) / 4) {
    throw Error(Errc::LengthMismatch, "hex string has " + std::to_string(hex.size()) +
                                          " digits, expected " + std::to_string((length + 3) / 4));
  }
  BitChunk c(length);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const int v = hex_value(hex[hex.size() - 1 - d]);
    if (v < 0) throw Error(Errc::InvalidSpec, "bad hex digit");
    for (unsigned b = 0; b < 4; ++b) {
      if (!((v >> b) & 1)) continue;
      const std::size_t i = 4 * d + b;
      if (i >= length) throw Error(Errc::InvalidSpec, "hex value exceeds chunk length");
      c.set(i);
    }
  }
  return c;
}

std::vector<std::uint8_t> BitChunk::to_bytes() const {
  std::vector<std::uint8_t> out(length_ / 8);
  write_bytes(out);
  return out;
}

void BitChunk::write_bytes(std::span<std::uint8_t> out) const {
  if (length_ % 8 != 0 || out.size() != length_ / 8) {
    throw Error(Errc::LengthMismatch, "byte serialization needs a whole number of bytes");
  }
  const std::size_t n = out.size();
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t lo = 8 * (n - 1 - j);
    out[j] = static_cast<std::uint8_t>(words_[lo >> 6] >> (lo & 63));
  }
}

BitChunk& BitChunk::operator^=(const BitChunk& other) {
  if (other.length_ != length_) throw Error(Errc::LengthMismatch, "xor of unequal lengths");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::size_t BitChunk::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ length_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace gdline
