// SPDX-License-Identifier: Apache-2.0
#include "gdline/kernels.hpp"

#include <algorithm>
#include <unordered_set>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "gdline/error.hpp"

namespace gdline::kernels {

namespace {

using Index = std::ptrdiff_t;

int resolve(int threads) { return threads > 0 ? threads : default_threads(); }

void require_chunk_bits(const Trace& trace, const HammingCode& code) {
  if (!trace.empty() && trace.chunk_bits() != code.n() + 1) {
    throw Error(Errc::LengthMismatch, "trace chunk size does not match the code");
  }
}

struct FirstSeen {
  std::size_t index;
  BitChunk basis;
};

// Distinct bases of chunks [begin, end) with their first index.
std::vector<FirstSeen> scan_block(const Trace& trace, const HammingCode& code, std::size_t begin,
                                  std::size_t end) {
  std::unordered_set<BitChunk, BitChunkHash> seen;
  std::vector<FirstSeen> out;
  for (std::size_t i = begin; i < end; ++i) {
    auto enc = encode_chunk(trace.chunk(i), code);
    if (seen.insert(enc.basis).second) out.push_back({i, std::move(enc.basis)});
  }
  return out;
}

}  // namespace

int default_threads() noexcept {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<EncodedChunk> encode_serial(const Trace& trace, const HammingCode& code) {
  require_chunk_bits(trace, code);
  std::vector<EncodedChunk> out(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) out[i] = encode_chunk(trace.chunk(i), code);
  return out;
}

std::vector<EncodedChunk> encode_parallel(const Trace& trace, const HammingCode& code, int threads) {
  require_chunk_bits(trace, code);
  std::vector<EncodedChunk> out(trace.size());
  const Index count = static_cast<Index>(trace.size());
#pragma omp parallel for schedule(static) num_threads(resolve(threads))
  for (Index i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = encode_chunk(trace.chunk(static_cast<std::size_t>(i)), code);
  }
  return out;
}

Trace decode_serial(std::span<const EncodedChunk> encoded, const HammingCode& code) {
  Trace trace(static_cast<std::uint32_t>(code.n() + 1));
  trace.reserve(encoded.size());
  for (const auto& e : encoded) trace.push_back(decode_chunk(e, code));
  return trace;
}

Trace decode_parallel(std::span<const EncodedChunk> encoded, const HammingCode& code, int threads) {
  const std::size_t cb = (code.n() + 1) / 8;
  std::vector<std::uint8_t> bytes(encoded.size() * cb);
  const Index count = static_cast<Index>(encoded.size());
#pragma omp parallel for schedule(static) num_threads(resolve(threads))
  for (Index i = 0; i < count; ++i) {
    const auto at = static_cast<std::size_t>(i);
    decode_chunk(encoded[at], code).write_bytes(std::span<std::uint8_t>(bytes.data() + at * cb, cb));
  }
  Trace trace(static_cast<std::uint32_t>(code.n() + 1));
  trace.reserve(encoded.size());
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    trace.push_back(std::span<const std::uint8_t>(bytes.data() + i * cb, cb));
  }
  return trace;
}

std::vector<BitChunk> distinct_bases_serial(const Trace& trace, const HammingCode& code) {
  require_chunk_bits(trace, code);
  auto found = scan_block(trace, code, 0, trace.size());
  std::vector<BitChunk> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.basis));
  return out;
}

std::vector<BitChunk> distinct_bases_parallel(const Trace& trace, const HammingCode& code, int threads) {
  require_chunk_bits(trace, code);
  const int blocks = std::max(1, resolve(threads));
  std::vector<std::vector<FirstSeen>> partial(static_cast<std::size_t>(blocks));
  const std::size_t total = trace.size();
#pragma omp parallel for schedule(static, 1) num_threads(blocks)
  for (int b = 0; b < blocks; ++b) {
    const std::size_t begin = total * static_cast<std::size_t>(b) / static_cast<std::size_t>(blocks);
    const std::size_t end = total * static_cast<std::size_t>(b + 1) / static_cast<std::size_t>(blocks);
    partial[static_cast<std::size_t>(b)] = scan_block(trace, code, begin, end);
  }
  // Blocks are in index order, so the first block holding a basis also
  // holds its first appearance.
  std::unordered_set<BitChunk, BitChunkHash> seen;
  std::vector<FirstSeen> merged;
  for (auto& block : partial) {
    for (auto& f : block) {
      if (seen.insert(f.basis).second) merged.push_back(std::move(f));
    }
  }
  std::sort(merged.begin(), merged.end(), [](const FirstSeen& a, const FirstSeen& b) { return a.index < b.index; });
  std::vector<BitChunk> out;
  out.reserve(merged.size());
  for (auto& f : merged) out.push_back(std::move(f.basis));
  return out;
}

StaticTotals static_totals_serial(const Trace& trace, const HammingCode& code, const FrameLayout& layout,
                                  const BasisTable& table) {
  require_chunk_bits(trace, code);
  StaticTotals t;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto enc = encode_chunk(trace.chunk(i), code);
    t.raw_bytes += layout.raw_bytes();
    if (table.contains(enc.basis)) {
      ++t.syn_id;
      t.encoded_bytes += layout.syn_id_bytes();
    } else {
      ++t.syn_basis;
      t.encoded_bytes += layout.syn_basis_bytes();
    }
  }
  return t;
}

StaticTotals static_totals_parallel(const Trace& trace, const HammingCode& code, const FrameLayout& layout,
                                    const BasisTable& table, int threads) {
  require_chunk_bits(trace, code);
  std::uint64_t syn_id = 0;
  const Index count = static_cast<Index>(trace.size());
#pragma omp parallel for schedule(static) reduction(+ : syn_id) num_threads(resolve(threads))
  for (Index i = 0; i < count; ++i) {
    const auto enc = encode_chunk(trace.chunk(static_cast<std::size_t>(i)), code);
    if (table.contains(enc.basis)) ++syn_id;
  }
  StaticTotals t;
  t.syn_id = syn_id;
  t.syn_basis = trace.size() - syn_id;
  t.raw_bytes = trace.size() * layout.raw_bytes();
  t.encoded_bytes = t.syn_id * layout.syn_id_bytes() + t.syn_basis * layout.syn_basis_bytes();
  return t;
}

std::size_t roundtrip_failures_serial(const Trace& trace, const HammingCode& code) {
  require_chunk_bits(trace, code);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const BitChunk c = trace.chunk(i);
    if (!(decode_chunk(encode_chunk(c, code), code) == c)) ++failures;
  }
  return failures;
}

std::size_t roundtrip_failures_parallel(const Trace& trace, const HammingCode& code, int threads) {
  require_chunk_bits(trace, code);
  std::size_t failures = 0;
  const Index count = static_cast<Index>(trace.size());
#pragma omp parallel for schedule(static) reduction(+ : failures) num_threads(resolve(threads))
  for (Index i = 0; i < count; ++i) {
    const BitChunk c = trace.chunk(static_cast<std::size_t>(i));
    if (!(decode_chunk(encode_chunk(c, code), code) == c)) ++failures;
  }
  return failures;
}

}  // namespace gdline::kernels
