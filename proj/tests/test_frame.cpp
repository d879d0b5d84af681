// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "gdline/error.hpp"
#include "gdline/frame.hpp"

using namespace gdline;

namespace {

using Bytes = std::vector<std::uint8_t>;

const FrameLayout kPlain{8, 15, false};
const FrameLayout kPadded{8, 15, true};

Errc parse_error(FrameKind kind, const Bytes& bytes, const FrameLayout& layout) {
  try {
    parse_frame(kind, bytes, layout);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Io;
}

}  // namespace

TEST(FrameLayout, Sizes) {
  EXPECT_EQ(kPlain.raw_bytes(), 32u);
  EXPECT_EQ(kPlain.syn_basis_bytes(), 32u);
  EXPECT_EQ(kPadded.syn_basis_bytes(), 33u);
  EXPECT_EQ(kPlain.syn_id_bytes(), 3u);
  const FrameLayout small{3, 15, false};
  EXPECT_EQ(small.raw_bytes(), 1u);
  EXPECT_EQ(small.syn_basis_bytes(), 1u);
  EXPECT_EQ(small.syn_id_bytes(), 3u);
}

TEST(SynId, ByteLayout) {
  EXPECT_EQ(serialize_frame(SynIdFields{0x00, false, BasisId{0}}, kPlain), (Bytes{0x00, 0x00, 0x00}));
  EXPECT_EQ(serialize_frame(SynIdFields{0xA5, true, BasisId{0x7FFF}}, kPlain), (Bytes{0xA5, 0xFF, 0xFF}));
  EXPECT_EQ(serialize_frame(SynIdFields{0x01, false, BasisId{0x0102}}, kPlain), (Bytes{0x01, 0x01, 0x02}));
  EXPECT_EQ(serialize_frame(SynIdFields{0x00, true, BasisId{0}}, kPlain), (Bytes{0x00, 0x80, 0x00}));
}

TEST(SynId, RejectsWrongLengthAndWideFields) {
  EXPECT_EQ(parse_error(FrameKind::SynId, Bytes{0x00, 0x00}, kPlain), Errc::MalformedFrame);
  EXPECT_EQ(parse_error(FrameKind::SynId, Bytes(4, 0), kPlain), Errc::MalformedFrame);
  EXPECT_THROW(serialize_frame(SynIdFields{0x100, false, BasisId{0}}, kPlain), Error);
  EXPECT_THROW(serialize_frame(SynIdFields{0x00, false, BasisId{0x8000}}, kPlain), Error);
}

TEST(SynId, NonzeroTailBitsAreMalformed) {
  // m=3, 15-bit id: 19 bits in 3 bytes, so the low 5 bits of byte 2 are pad.
  const FrameLayout small{3, 15, false};
  EXPECT_EQ(parse_error(FrameKind::SynId, Bytes{0x00, 0x00, 0x01}, small), Errc::MalformedFrame);
  const auto ok = parse_frame(FrameKind::SynId, Bytes{0x9F, 0xFF, 0xE0}, small);
  EXPECT_EQ(std::get<SynIdFields>(ok), (SynIdFields{0b100, true, BasisId{0x7FFF}}));
}

TEST(SynBasis, ByteLayoutWithAndWithoutPadding) {
  BitChunk basis(247);
  basis.set(246);
  basis.set(0);
  const SynBasisFields f{0x5A, true, basis};

  const Bytes plain = serialize_frame(f, kPlain);
  ASSERT_EQ(plain.size(), 32u);
  EXPECT_EQ(plain[0], 0x5A);
  EXPECT_EQ(plain[1], 0xC0);  // msb, then basis bit 246
  EXPECT_EQ(plain[31], 0x01);

  const Bytes padded = serialize_frame(f, kPadded);
  ASSERT_EQ(padded.size(), 33u);
  EXPECT_EQ(padded[0], 0x5A);
  EXPECT_EQ(padded[1], 0x00);
  EXPECT_EQ(padded[2], 0xC0);
  EXPECT_EQ(padded[32], 0x01);

  EXPECT_EQ(std::get<SynBasisFields>(parse_frame(FrameKind::SynBasis, plain, kPlain)), f);
  EXPECT_EQ(std::get<SynBasisFields>(parse_frame(FrameKind::SynBasis, padded, kPadded)), f);
}

TEST(SynBasis, NonzeroPaddingByteIsMalformed) {
  Bytes padded = serialize_frame(SynBasisFields{0, false, BitChunk(247)}, kPadded);
  padded[1] = 0x10;
  EXPECT_EQ(parse_error(FrameKind::SynBasis, padded, kPadded), Errc::MalformedFrame);
  EXPECT_EQ(parse_error(FrameKind::SynBasis, Bytes(33, 0), kPlain), Errc::MalformedFrame);
}

TEST(SynBasis, SmallCodeLayout) {
  const FrameLayout small{3, 15, false};
  const auto bytes = serialize_frame(SynBasisFields{0b100, false, BitChunk::from_string("0000")}, small);
  EXPECT_EQ(bytes, (Bytes{0x80}));
  const FrameLayout small_padded{3, 15, true};
  EXPECT_EQ(serialize_frame(SynBasisFields{0b100, true, BitChunk::from_string("1011")}, small_padded),
            (Bytes{0x80, 0x1B}));
}

TEST(Raw, IsTheChunkBytes) {
  BitChunk c(256);
  c.set(255);
  const auto bytes = serialize_frame(c, kPlain);
  EXPECT_EQ(bytes.size(), 32u);
  EXPECT_EQ(bytes[0], 0x80);
  EXPECT_EQ(std::get<BitChunk>(parse_frame(FrameKind::Raw, bytes, kPlain)), c);
  EXPECT_THROW(serialize_frame(BitChunk(255), kPlain), Error);
}

TEST(Frames, ParseSerializeIdentityOnRandomFields) {
  std::mt19937_64 rng(31);
  for (unsigned m : {3u, 4u, 5u, 8u, 9u}) {
    for (bool pad : {false, true}) {
      const FrameLayout layout{m, 15, pad};
      for (int i = 0; i < 200; ++i) {
        BitChunk basis(layout.k());
        for (std::size_t b = 0; b < basis.size(); ++b) basis.set(b, rng() & 1u);
        const Syndrome s = static_cast<Syndrome>(rng() & ((1u << m) - 1));
        const bool msb = rng() & 1u;
        const FrameFields sb = SynBasisFields{s, msb, basis};
        const FrameFields si = SynIdFields{s, msb, BasisId{static_cast<std::uint32_t>(rng() & 0x7FFF)}};
        for (const auto& f : {sb, si}) {
          const auto bytes = serialize_frame(f, layout);
          ASSERT_EQ(bytes.size(), layout.payload_bytes(kind_of(f)));
          const auto back = parse_frame(kind_of(f), bytes, layout);
          ASSERT_EQ(back, f);
          ASSERT_EQ(serialize_frame(back, layout), bytes);
        }
      }
    }
  }
}

TEST(Frames, EtherTypes) {
  EXPECT_EQ(ethertype_of(FrameKind::Raw), 0x88B5);
  EXPECT_EQ(ethertype_of(FrameKind::SynBasis), 0x88B6);
  EXPECT_EQ(ethertype_of(FrameKind::SynId), 0x88B7);
}
