// SPDX-License-Identifier: Apache-2.0
#include "gdline/codec.hpp"

#include <string>

#include "gdline/error.hpp"

namespace gdline {

namespace {

void require_length(const BitChunk& c, std::size_t expected, const char* what) {
  if (c.size() != expected) {
    throw Error(Errc::LengthMismatch, std::string(what) + " has " + std::to_string(c.size()) +
                                          " bits, expected " + std::to_string(expected));
  }
}

}  // namespace

BodyTransform gd_encode(const BitChunk& body, const HammingCode& code) {
  require_length(body, code.n(), "body");
  const Syndrome s = code.remainder(body);
  BitChunk basis = body.slice(0, code.k());
  // Only a flip inside the low k bits changes the basis.
  if (auto pos = code.position_of(s); pos && *pos < code.k()) basis.flip(*pos);
  return {s, std::move(basis)};
}

Syndrome parity_of(const BitChunk& basis, const HammingCode& code) {
  require_length(basis, code.k(), "basis");
  return code.shifted_remainder(basis);
}

BitChunk gd_decode(Syndrome syndrome, const BitChunk& basis, const HammingCode& code) {
  const Syndrome p = parity_of(basis, code);
  BitChunk body(code.n());
  body.assign(0, basis);
  const std::size_t k = code.k();
  for (unsigned b = 0; b < code.m(); ++b) {
    if ((p >> b) & 1u) body.set(k + b);
  }
  if (syndrome >= (Syndrome{1} << code.m())) {
    throw Error(Errc::LengthMismatch, "syndrome wider than m bits");
  }
  if (auto pos = code.position_of(syndrome)) body.flip(*pos);
  return body;
}

SplitChunk split_chunk(const BitChunk& chunk, const HammingCode& code) {
  require_length(chunk, code.n() + 1, "chunk");
  return {chunk.test(code.n()), chunk.slice(0, code.n())};
}

BitChunk join_chunk(bool msb, const BitChunk& body, const HammingCode& code) {
  require_length(body, code.n(), "body");
  BitChunk chunk(code.n() + 1);
  chunk.assign(0, body);
  chunk.set(code.n(), msb);
  return chunk;
}

EncodedChunk encode_chunk(const BitChunk& chunk, const HammingCode& code) {
  auto [msb, body] = split_chunk(chunk, code);
  auto t = gd_encode(body, code);
  return {t.syndrome, msb, std::move(t.basis)};
}

BitChunk decode_chunk(const EncodedChunk& encoded, const HammingCode& code) {
  return join_chunk(encoded.msb, gd_decode(encoded.syndrome, encoded.basis, code), code);
}

}  // namespace gdline
