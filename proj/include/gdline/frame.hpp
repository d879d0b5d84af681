// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "gdline/bit_chunk.hpp"
#include "gdline/dictionary.hpp"
#include "gdline/gf2.hpp"

namespace gdline {

enum class FrameKind : std::uint8_t { Raw = 1, SynBasis = 2, SynId = 3 };

std::string_view kind_name(FrameKind kind) noexcept;
// Local-experimental EtherTypes used by the pcap exporter.
std::uint16_t ethertype_of(FrameKind kind) noexcept;

struct Frame {
  FrameKind kind = FrameKind::Raw;
  std::vector<std::uint8_t> payload;
  SimTime timestamp{0};
};

// Field widths for one parameter set. Payloads pack fields MSB first and
// zero-fill the tail of the last byte.
//
//   RAW        chunk (2^m bits)
//   SYN_BASIS  syndrome(m) [pad(8) when align_padding] msb(1) basis(k)
//   SYN_ID     syndrome(m) msb(1) id(id_width)
struct FrameLayout {
  unsigned m = 8;
  unsigned id_width = 15;
  bool align_padding = false;

  std::size_t n() const noexcept { return (std::size_t{1} << m) - 1; }
  std::size_t k() const noexcept { return n() - m; }
  std::size_t raw_bytes() const noexcept { return (n() + 1 + 7) / 8; }
  std::size_t syn_basis_bytes() const noexcept {
    return (m + (align_padding ? 8 : 0) + 1 + k() + 7) / 8;
  }
  std::size_t syn_id_bytes() const noexcept { return (m + 1 + id_width + 7) / 8; }
  std::size_t payload_bytes(FrameKind kind) const noexcept;
};

struct SynBasisFields {
  Syndrome syndrome = 0;
  bool msb = false;
  BitChunk basis;
  friend bool operator==(const SynBasisFields&, const SynBasisFields&) = default;
};

struct SynIdFields {
  Syndrome syndrome = 0;
  bool msb = false;
  BasisId id;
  friend bool operator==(const SynIdFields&, const SynIdFields&) = default;
};

// RAW carries the chunk itself.
using FrameFields = std::variant<BitChunk, SynBasisFields, SynIdFields>;

FrameKind kind_of(const FrameFields& fields) noexcept;

// Throws MalformedFrame when a field does not fit the layout.
std::vector<std::uint8_t> serialize_frame(const FrameFields& fields, const FrameLayout& layout);
// Throws MalformedFrame on a wrong length, a nonzero pad byte or nonzero
// tail bits.
FrameFields parse_frame(FrameKind kind, std::span<const std::uint8_t> payload, const FrameLayout& layout);

}  // namespace gdline
