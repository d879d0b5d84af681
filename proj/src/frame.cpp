// SPDX-License-Identifier: Apache-2.0
#include "gdline/frame.hpp"

#include <string>

#include "gdline/error.hpp"

namespace gdline {

namespace {

class BitWriter {
 public:
  explicit BitWriter(std::size_t bytes) : out_(bytes, 0) {}

  void put(std::uint64_t value, unsigned width) {
    for (int b = static_cast<int>(width) - 1; b >= 0; --b) put_bit((value >> b) & 1u);
  }
  void put(const BitChunk& bits) {
    std::size_t i = bits.size();
    // Byte-aligned bulk copy once the cursor allows it.
    while (i > 0 && (pos_ % 8) != 0) put_bit(bits.test(--i));
    while (i >= 8) {
      i -= 8;
      out_[pos_ / 8] = bits.byte_at(i);
      pos_ += 8;
    }
    while (i > 0) put_bit(bits.test(--i));
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  void put_bit(bool bit) {
    if (bit) out_[pos_ / 8] |= static_cast<std::uint8_t>(0x80u >> (pos_ % 8));
    ++pos_;
  }

  std::vector<std::uint8_t> out_;
  std::size_t pos_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint64_t get(unsigned width) {
    std::uint64_t v = 0;
    for (unsigned b = 0; b < width; ++b) v = (v << 1) | get_bit();
    return v;
  }
  BitChunk get_chunk(std::size_t width) {
    BitChunk c(width);
    std::size_t i = width;
    while (i > 0 && (pos_ % 8) != 0) c.set(--i, get_bit());
    while (i >= 8) {
      i -= 8;
      const std::uint8_t byte = in_[pos_ / 8];
      for (unsigned b = 0; b < 8; ++b) {
        if ((byte >> b) & 1u) c.set(i + b);
      }
      pos_ += 8;
    }
    while (i > 0) c.set(--i, get_bit());
    return c;
  }
  // True when every unread bit is zero.
  bool rest_is_zero() {
    while (pos_ < in_.size() * 8) {
      if (get_bit()) return false;
    }
    return true;
  }

 private:
  unsigned get_bit() {
    const unsigned bit = (in_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
    ++pos_;
    return bit;
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::MalformedFrame, what); }

}  // namespace

std::string_view kind_name(FrameKind kind) noexcept {
  switch (kind) {
    case FrameKind::Raw: return "RAW";
    case FrameKind::SynBasis: return "SYN_BASIS";
    case FrameKind::SynId: return "SYN_ID";
  }
  return "?";
}

std::uint16_t ethertype_of(FrameKind kind) noexcept {
  switch (kind) {
    case FrameKind::Raw: return 0x88B5;
    case FrameKind::SynBasis: return 0x88B6;
    case FrameKind::SynId: return 0x88B7;
  }
  return 0;
}

std::size_t FrameLayout::payload_bytes(FrameKind kind) const noexcept {
  switch (kind) {
    case FrameKind::Raw: return raw_bytes();
    case FrameKind::SynBasis: return syn_basis_bytes();
    case FrameKind::SynId: return syn_id_bytes();
  }
  return 0;
}

FrameKind kind_of(const FrameFields& fields) noexcept {
  return static_cast<FrameKind>(fields.index() + 1);
}

std::vector<std::uint8_t> serialize_frame(const FrameFields& fields, const FrameLayout& layout) {
  const std::uint64_t syndrome_limit = std::uint64_t{1} << layout.m;
  if (const auto* raw = std::get_if<BitChunk>(&fields)) {
    if (raw->size() != layout.n() + 1) malformed("RAW chunk must be " + std::to_string(layout.n() + 1) + " bits");
    return raw->to_bytes();
  }
  if (const auto* sb = std::get_if<SynBasisFields>(&fields)) {
    if (sb->syndrome >= syndrome_limit) malformed("syndrome wider than m bits");
    if (sb->basis.size() != layout.k()) malformed("basis must be " + std::to_string(layout.k()) + " bits");
    BitWriter w(layout.syn_basis_bytes());
    w.put(sb->syndrome, layout.m);
    if (layout.align_padding) w.put(0, 8);
    w.put(sb->msb, 1);
    w.put(sb->basis);
    return w.take();
  }
  const auto& si = std::get<SynIdFields>(fields);
  if (si.syndrome >= syndrome_limit) malformed("syndrome wider than m bits");
  if (si.id.value >= (std::uint64_t{1} << layout.id_width)) malformed("id wider than id_width bits");
  BitWriter w(layout.syn_id_bytes());
  w.put(si.syndrome, layout.m);
  w.put(si.msb, 1);
  w.put(si.id.value, layout.id_width);
  return w.take();
}

FrameFields parse_frame(FrameKind kind, std::span<const std::uint8_t> payload, const FrameLayout& layout) {
  const std::size_t expected = layout.payload_bytes(kind);
  if (expected == 0) malformed("unknown frame kind");
  if (payload.size() != expected) {
    malformed(std::string(kind_name(kind)) + " payload is " + std::to_string(payload.size()) +
              " bytes, expected " + std::to_string(expected));
  }
  if (kind == FrameKind::Raw) return BitChunk::from_bytes(payload);

  BitReader r(payload);
  const auto syndrome = static_cast<Syndrome>(r.get(layout.m));
  if (kind == FrameKind::SynBasis) {
    if (layout.align_padding && r.get(8) != 0) malformed("nonzero padding byte");
    SynBasisFields f;
    f.syndrome = syndrome;
    f.msb = r.get(1) != 0;
    f.basis = r.get_chunk(layout.k());
    if (!r.rest_is_zero()) malformed("nonzero trailing bits");
    return f;
  }
  SynIdFields f;
  f.syndrome = syndrome;
  f.msb = r.get(1) != 0;
  f.id = BasisId{static_cast<std::uint32_t>(r.get(layout.id_width))};
  if (!r.rest_is_zero()) malformed("nonzero trailing bits");
  return f;
}

}  // namespace gdline
