// SPDX-License-Identifier: Apache-2.0
#include "gdline/gf2.hpp"

#include <array>

#include "gdline/error.hpp"

namespace gdline {

namespace {

constexpr std::array<RegistryEntry, 15> kRegistry{{
    {3, 0x3, false},
    {4, 0x3, false},
    {5, 0x05, false},
    {5, 0x17, true},
    {6, 0x03, false},
    {7, 0x09, false},
    {8, 0x1D, false},
    // Polynomial column; the printed parameters for m=9 are not primitive.
    {9, 0x011, false},
    {9, 0x1E3, true},
    {10, 0x009, false},
    {11, 0x005, false},
    {12, 0x053, false},
    {13, 0x01B, false},
    {14, 0x143, false},
    {15, 0x003, false},
}};

}  // namespace

std::span<const RegistryEntry> generator_registry() noexcept { return kRegistry; }

GeneratorPolynomial generator_for(unsigned m, bool alternate) {
  for (const auto& e : kRegistry) {
    if (e.m == m && e.alternate == alternate) return {m, e.low_bits};
  }
  if (alternate) {
    throw Error(Errc::UnsupportedM, "no alternate generator polynomial for m=" + std::to_string(m));
  }
  throw Error(Errc::UnsupportedM,
              "m=" + std::to_string(m) + " is outside the supported range 3..15");
}

std::string GeneratorPolynomial::to_string() const {
  std::string s;
  for (int e = static_cast<int>(degree); e >= 0; --e) {
    if (!((full() >> e) & 1u)) continue;
    if (!s.empty()) s += '+';
    if (e == 0) {
      s += '1';
    } else if (e == 1) {
      s += 'x';
    } else {
      s += "x^" + std::to_string(e);
    }
  }
  return s;
}

Syndrome poly_mod(const BitChunk& data, const GeneratorPolynomial& g) noexcept {
  const std::uint32_t full = g.full();
  std::uint32_t r = 0;
  for (std::size_t i = data.size(); i-- > 0;) {
    r = (r << 1) | static_cast<std::uint32_t>(data.test(i));
    if (r >> g.degree) r ^= full;
  }
  return r;
}

}  // namespace gdline
