// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "gdline/bit_chunk.hpp"

namespace gdline {

// Ordered run of equal-sized chunks, stored back-to-back in serialized form.
class Trace {
 public:
  Trace() = default;
  explicit Trace(std::uint32_t chunk_bits);

  std::uint32_t chunk_bits() const noexcept { return chunk_bits_; }
  std::size_t chunk_bytes() const noexcept { return chunk_bits_ / 8; }
  std::size_t size() const noexcept { return chunk_bytes() ? data_.size() / chunk_bytes() : 0; }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const std::uint8_t> bytes(std::size_t i) const noexcept {
    return {data_.data() + i * chunk_bytes(), chunk_bytes()};
  }
  BitChunk chunk(std::size_t i) const { return BitChunk::from_bytes(bytes(i)); }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  void push_back(const BitChunk& chunk);
  void push_back(std::span<const std::uint8_t> bytes);
  void reserve(std::size_t chunks) { data_.reserve(chunks * chunk_bytes()); }

  // Byte length of the source file when the trace came from chunk_file.
  std::optional<std::uint64_t> original_length;

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::uint32_t chunk_bits_ = 0;
  std::vector<std::uint8_t> data_;
};

enum class BasisDistribution { Uniform, RoundRobin };

struct TraceSpec {
  std::uint64_t seed = 1;
  std::size_t chunk_count = 3'124'000;
  unsigned m = 8;  // chunk_bits = 2^m
  std::size_t distinct_bases = 100;
  double codeword_prob = 0.2;
  BasisDistribution distribution = BasisDistribution::Uniform;
  bool random_msb = true;
};

void validate(const TraceSpec& spec);  // throws InvalidSpec / UnsupportedM

// Sensor-like trace: every chunk is a drawn basis's codeword, optionally
// with one flipped bit, plus an MSB.
Trace gen_synthetic(const TraceSpec& spec);
// The bases gen_synthetic draws for this spec, in draw order.
std::vector<BitChunk> synthetic_bases(const TraceSpec& spec);

// Splits bytes into chunk_bits/8-byte chunks; the last one is zero-filled.
Trace chunk_file(std::span<const std::uint8_t> bytes, std::uint32_t chunk_bits);
// Inverse of chunk_file, using original_length when present.
std::vector<std::uint8_t> reassemble(const Trace& trace);

// GDTRACE format: "GDTRACE\0", u32 chunk_bits, u32 chunk_count (little
// endian), then the chunks. A trace carrying original_length appends the
// 16-byte trailer "GDLENGTH" + u64.
void write_trace(const std::filesystem::path& path, const Trace& trace);
Trace read_trace(const std::filesystem::path& path);
std::vector<std::uint8_t> encode_trace_file(const Trace& trace);
Trace decode_trace_file(std::span<const std::uint8_t> file);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace gdline
