// SPDX-License-Identifier: Apache-2.0
#pragma once

// Batch codec kernels over whole traces. Each *_parallel kernel splits the
// chunk index range across OpenMP threads; the *_serial twin is the
// reference it is tested against. Outputs are identical for any thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "gdline/bit_chunk.hpp"
#include "gdline/codec.hpp"
#include "gdline/dictionary.hpp"
#include "gdline/frame.hpp"
#include "gdline/hamming.hpp"
#include "gdline/trace.hpp"

namespace gdline::kernels {

using BasisTable = std::unordered_map<BitChunk, BasisId, BitChunkHash>;

// Thread count used when a kernel is passed threads <= 0.
int default_threads() noexcept;

std::vector<EncodedChunk> encode_serial(const Trace& trace, const HammingCode& code);
std::vector<EncodedChunk> encode_parallel(const Trace& trace, const HammingCode& code, int threads);

Trace decode_serial(std::span<const EncodedChunk> encoded, const HammingCode& code);
Trace decode_parallel(std::span<const EncodedChunk> encoded, const HammingCode& code, int threads);

// Distinct bases in order of first appearance.
std::vector<BitChunk> distinct_bases_serial(const Trace& trace, const HammingCode& code);
std::vector<BitChunk> distinct_bases_parallel(const Trace& trace, const HammingCode& code, int threads);

// Payload bytes after encoding against a fixed (read-only) table.
struct StaticTotals {
  std::uint64_t raw_bytes = 0;
  std::uint64_t encoded_bytes = 0;
  std::uint64_t syn_basis = 0;
  std::uint64_t syn_id = 0;
  friend bool operator==(const StaticTotals&, const StaticTotals&) = default;
};

StaticTotals static_totals_serial(const Trace& trace, const HammingCode& code, const FrameLayout& layout,
                                  const BasisTable& table);
StaticTotals static_totals_parallel(const Trace& trace, const HammingCode& code, const FrameLayout& layout,
                                    const BasisTable& table, int threads);

// Round trip of every chunk; returns the number that failed to restore.
std::size_t roundtrip_failures_serial(const Trace& trace, const HammingCode& code);
std::size_t roundtrip_failures_parallel(const Trace& trace, const HammingCode& code, int threads);

}  // namespace gdline::kernels
