// SPDX-License-Identifier: Apache-2.0
#include "gdline/trace.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <unordered_set>

#include "gdline/codec.hpp"
#include "gdline/error.hpp"
#include "gdline/hamming.hpp"

namespace gdline {

namespace {

constexpr char kMagic[8] = {'G', 'D', 'T', 'R', 'A', 'C', 'E', '\0'};
constexpr char kLengthMagic[8] = {'G', 'D', 'L', 'E', 'N', 'G', 'T', 'H'};
constexpr std::size_t kHeaderBytes = 16;

// Draws are built on raw mt19937_64 output so traces are identical across
// standard library implementations.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

BitChunk random_bits(std::mt19937_64& rng, std::size_t length) {
  BitChunk c(length);
  for (std::size_t lo = 0; lo < length; lo += 64) {
    const std::uint64_t w = rng();
    for (std::size_t b = 0; b < 64 && lo + b < length; ++b) {
      if ((w >> b) & 1u) c.set(lo + b);
    }
  }
  return c;
}

std::vector<BitChunk> draw_bases(std::mt19937_64& rng, const TraceSpec& spec, std::size_t k) {
  std::unordered_set<BitChunk, BitChunkHash> seen;
  std::vector<BitChunk> bases;
  bases.reserve(spec.distinct_bases);
  while (bases.size() < spec.distinct_bases) {
    BitChunk b = random_bits(rng, k);
    if (seen.insert(b).second) bases.push_back(std::move(b));
  }
  return bases;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v |= std::uint64_t{in[i]} << (8 * i);
  return v;
}

}  // namespace

Trace::Trace(std::uint32_t chunk_bits) : chunk_bits_(chunk_bits) {
  if (chunk_bits == 0 || chunk_bits % 8 != 0) {
    throw Error(Errc::InvalidSpec, "chunk_bits must be a positive multiple of 8");
  }
}

void Trace::push_back(const BitChunk& chunk) {
  if (chunk.size() != chunk_bits_) throw Error(Errc::LengthMismatch, "chunk size differs from trace");
  const std::size_t at = data_.size();
  data_.resize(at + chunk_bytes());
  chunk.write_bytes(std::span<std::uint8_t>(data_.data() + at, chunk_bytes()));
}

void Trace::push_back(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != chunk_bytes()) throw Error(Errc::LengthMismatch, "chunk size differs from trace");
  data_.insert(data_.end(), bytes.begin(), bytes.end());
}

void validate(const TraceSpec& spec) {
  if (spec.m < kMinM || spec.m > kMaxM) {
    throw Error(Errc::UnsupportedM, "synthetic traces support m=3..15, got " + std::to_string(spec.m));
  }
  const std::size_t k = (std::size_t{1} << spec.m) - spec.m - 1;
  if (spec.distinct_bases < 1) throw Error(Errc::InvalidSpec, "distinct_bases must be >= 1");
  if (k < 63 && spec.distinct_bases > (std::size_t{1} << k)) {
    throw Error(Errc::InvalidSpec, "distinct_bases exceeds 2^k");
  }
  if (!(spec.codeword_prob >= 0.0 && spec.codeword_prob <= 1.0)) {
    throw Error(Errc::InvalidSpec, "codeword_prob must lie in [0,1]");
  }
}

std::vector<BitChunk> synthetic_bases(const TraceSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  return draw_bases(rng, spec, (std::size_t{1} << spec.m) - spec.m - 1);
}

Trace gen_synthetic(const TraceSpec& spec) {
  validate(spec);
  const HammingCode code = build_code(spec.m);
  std::mt19937_64 rng(spec.seed);
  const auto bases = draw_bases(rng, spec, code.k());

  std::vector<BitChunk> codewords;
  codewords.reserve(bases.size());
  for (const auto& b : bases) codewords.push_back(gd_decode(0, b, code));

  Trace trace(static_cast<std::uint32_t>(code.n() + 1));
  trace.reserve(spec.chunk_count);
  std::vector<std::uint8_t> buf(trace.chunk_bytes());
  for (std::size_t i = 0; i < spec.chunk_count; ++i) {
    const std::size_t which = spec.distribution == BasisDistribution::RoundRobin
                                  ? i % bases.size()
                                  : static_cast<std::size_t>(below(rng, bases.size()));
    BitChunk body = codewords[which];
    if (unit(rng) >= spec.codeword_prob) body.flip(static_cast<std::size_t>(below(rng, code.n())));
    const bool msb = spec.random_msb ? (rng() >> 63) != 0 : false;
    join_chunk(msb, body, code).write_bytes(buf);
    trace.push_back(buf);
  }
  return trace;
}

Trace chunk_file(std::span<const std::uint8_t> bytes, std::uint32_t chunk_bits) {
  if (bytes.empty()) throw Error(Errc::EmptyInput, "nothing to chunk");
  Trace trace(chunk_bits);
  const std::size_t cb = trace.chunk_bytes();
  trace.reserve((bytes.size() + cb - 1) / cb);
  std::vector<std::uint8_t> buf(cb);
  for (std::size_t at = 0; at < bytes.size(); at += cb) {
    const std::size_t take = std::min(cb, bytes.size() - at);
    std::fill(buf.begin(), buf.end(), 0);
    std::memcpy(buf.data(), bytes.data() + at, take);
    trace.push_back(buf);
  }
  trace.original_length = bytes.size();
  return trace;
}

std::vector<std::uint8_t> reassemble(const Trace& trace) {
  auto d = trace.data();
  std::vector<std::uint8_t> out(d.begin(), d.end());
  if (trace.original_length && *trace.original_length <= out.size()) {
    out.resize(static_cast<std::size_t>(*trace.original_length));
  }
  return out;
}

std::vector<std::uint8_t> encode_trace_file(const Trace& trace) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_u32(out, trace.chunk_bits());
  put_u32(out, static_cast<std::uint32_t>(trace.size()));
  auto d = trace.data();
  out.insert(out.end(), d.begin(), d.end());
  if (trace.original_length) {
    out.insert(out.end(), std::begin(kLengthMagic), std::end(kLengthMagic));
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(*trace.original_length >> (8 * i)));
  }
  return out;
}

Trace decode_trace_file(std::span<const std::uint8_t> file) {
  if (file.size() < kHeaderBytes) throw Error(Errc::TruncatedFile, "file shorter than header");
  if (std::memcmp(file.data(), kMagic, sizeof kMagic) != 0) throw Error(Errc::BadMagic, "not a GDTRACE file");
  const auto chunk_bits = static_cast<std::uint32_t>(get_le(file.subspan(8), 4));
  const auto count = get_le(file.subspan(12), 4);
  Trace trace(chunk_bits);
  const std::size_t body = static_cast<std::size_t>(count) * trace.chunk_bytes();
  if (file.size() < kHeaderBytes + body) {
    throw Error(Errc::TruncatedFile, "expected " + std::to_string(count) + " chunks");
  }
  trace.reserve(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < count; ++i) {
    trace.push_back(file.subspan(kHeaderBytes + i * trace.chunk_bytes(), trace.chunk_bytes()));
  }
  const auto rest = file.subspan(kHeaderBytes + body);
  if (rest.size() == 16 && std::memcmp(rest.data(), kLengthMagic, 8) == 0) {
    trace.original_length = get_le(rest.subspan(8), 8);
  } else if (!rest.empty()) {
    throw Error(Errc::TruncatedFile, "unexpected trailing bytes after chunk data");
  }
  return trace;
}

void write_trace(const std::filesystem::path& path, const Trace& trace) {
  write_file(path, encode_trace_file(trace));
}

Trace read_trace(const std::filesystem::path& path) { return decode_trace_file(read_file(path)); }

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::Io, "short write to " + path.string());
}

}  // namespace gdline
