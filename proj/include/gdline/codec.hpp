// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gdline/bit_chunk.hpp"
#include "gdline/gf2.hpp"
#include "gdline/hamming.hpp"

namespace gdline {

// Basis/deviation split of one n-bit body.
struct BodyTransform {
  Syndrome syndrome = 0;
  BitChunk basis;  // k bits

  friend bool operator==(const BodyTransform&, const BodyTransform&) = default;
};

// Full transform of a 2^m-bit chunk: the extra MSB rides along unchanged.
struct EncodedChunk {
  Syndrome syndrome = 0;
  bool msb = false;
  BitChunk basis;

  friend bool operator==(const EncodedChunk&, const EncodedChunk&) = default;
};

struct SplitChunk {
  bool msb = false;
  BitChunk body;  // n bits
};

// Syndrome of the body, then the low k bits of its nearest codeword.
BodyTransform gd_encode(const BitChunk& body, const HammingCode& code);

// High m bits of the codeword whose low k bits are basis: basis(x)*x^m mod g.
// Valid because g divides x^n + 1.
Syndrome parity_of(const BitChunk& basis, const HammingCode& code);

// Rebuilds the codeword p || basis and flips the bit named by the syndrome.
BitChunk gd_decode(Syndrome syndrome, const BitChunk& basis, const HammingCode& code);

SplitChunk split_chunk(const BitChunk& chunk, const HammingCode& code);
BitChunk join_chunk(bool msb, const BitChunk& body, const HammingCode& code);

EncodedChunk encode_chunk(const BitChunk& chunk, const HammingCode& code);
BitChunk decode_chunk(const EncodedChunk& encoded, const HammingCode& code);

}  // namespace gdline
