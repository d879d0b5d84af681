// SPDX-License-Identifier: Apache-2.0
#include "gdline/hamming.hpp"

#include <string>

#include "gdline/error.hpp"

namespace gdline {

HammingCode build_code(unsigned m, bool alternate_generator) {
  HammingCode code;
  code.m_ = m;
  code.generator_ = generator_for(m, alternate_generator);
  code.n_ = (std::size_t{1} << m) - 1;

  const std::uint32_t full = code.generator_.full();
  for (std::uint32_t h = 0; h < 256; ++h) {
    std::uint32_t r = 0;
    for (int b = 7; b >= 0; --b) {
      r = (r << 1) | ((h >> b) & 1u);
      if (r >> m) r ^= full;
    }
    for (unsigned z = 0; z < m; ++z) {
      r <<= 1;
      if (r >> m) r ^= full;
    }
    code.step_[h] = static_cast<std::uint16_t>(r);
  }

  code.position_.assign(std::size_t{1} << m, 0);
  code.syndrome_.assign(code.n_, 0);
  std::vector<bool> seen(std::size_t{1} << m, false);
  // x^i mod g, walked incrementally.
  std::uint32_t r = 1;
  for (std::size_t i = 0; i < code.n_; ++i) {
    if (r == 0 || seen[r]) {
      throw Error(Errc::UnsupportedM, "generator " + code.generator_.to_string() +
                                          " does not define a perfect code");
    }
    seen[r] = true;
    code.syndrome_[i] = r;
    code.position_[r] = static_cast<std::uint16_t>(i);
    r <<= 1;
    if (r >> m) r ^= full;
  }
  return code;
}

Syndrome HammingCode::fold_bits(Syndrome r, std::uint8_t bits, unsigned count) const noexcept {
  const std::uint32_t full = generator_.full();
  for (int b = static_cast<int>(count) - 1; b >= 0; --b) {
    r = (r << 1) | ((bits >> b) & 1u);
    if (r >> m_) r ^= full;
  }
  return r;
}

Syndrome HammingCode::remainder(const BitChunk& data) const noexcept {
  const std::size_t len = data.size();
  const std::size_t head = len % 8;
  const std::uint32_t mask = (std::uint32_t{1} << m_) - 1;
  Syndrome r = 0;
  if (head) {
    std::uint8_t top = 0;
    for (std::size_t i = 0; i < head; ++i) top |= static_cast<std::uint8_t>(data.test(len - head + i)) << i;
    r = fold_bits(r, top, static_cast<unsigned>(head));
  }
  for (std::size_t lo = len - head; lo >= 8;) {
    lo -= 8;
    const std::uint32_t v = (r << 8) | data.byte_at(lo);
    r = (v & mask) ^ step_[v >> m_];
  }
  return r;
}

Syndrome HammingCode::shifted_remainder(const BitChunk& data) const noexcept {
  Syndrome r = remainder(data);
  const std::uint32_t full = generator_.full();
  for (unsigned z = 0; z < m_; ++z) {
    r <<= 1;
    if (r >> m_) r ^= full;
  }
  return r;
}

}  // namespace gdline
