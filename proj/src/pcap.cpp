// SPDX-License-Identifier: Apache-2.0
#include "gdline/pcap.hpp"

#include <algorithm>
#include <array>
#include <cstring>

#include "gdline/error.hpp"

namespace gdline {

namespace {

constexpr std::uint32_t kMagicMicros = 0xa1b2c3d4;
constexpr std::uint32_t kLinkEthernet = 1;
constexpr std::uint32_t kSnapLen = 65535;

constexpr std::array<std::uint8_t, 6> kDstMac{0x02, 0x00, 0x00, 0x00, 0x00, 0x02};
constexpr std::array<std::uint8_t, 6> kSrcMac{0x02, 0x00, 0x00, 0x00, 0x00, 0x01};

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int width) {
  for (int i = 0; i < width; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p, bool swap) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    const int shift = swap ? 8 * (3 - i) : 8 * i;
    v |= std::uint32_t{p[i]} << shift;
  }
  return v;
}

}  // namespace

PcapWriter::PcapWriter(const std::filesystem::path& path) : out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw Error(Errc::Io, "cannot create " + path.string());
  std::vector<std::uint8_t> hdr;
  put_le(hdr, kMagicMicros, 4);
  put_le(hdr, 2, 2);
  put_le(hdr, 4, 2);
  put_le(hdr, 0, 4);  // thiszone
  put_le(hdr, 0, 4);  // sigfigs
  put_le(hdr, kSnapLen, 4);
  put_le(hdr, kLinkEthernet, 4);
  out_.write(reinterpret_cast<const char*>(hdr.data()), static_cast<std::streamsize>(hdr.size()));
}

void PcapWriter::write(const Frame& frame) {
  std::vector<std::uint8_t> rec;
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(frame.timestamp).count();
  const std::size_t len = 14 + frame.payload.size();
  put_le(rec, static_cast<std::uint64_t>(micros / 1'000'000), 4);
  put_le(rec, static_cast<std::uint64_t>(micros % 1'000'000), 4);
  put_le(rec, len, 4);
  put_le(rec, len, 4);
  rec.insert(rec.end(), kDstMac.begin(), kDstMac.end());
  rec.insert(rec.end(), kSrcMac.begin(), kSrcMac.end());
  const std::uint16_t type = ethertype_of(frame.kind);
  rec.push_back(static_cast<std::uint8_t>(type >> 8));
  rec.push_back(static_cast<std::uint8_t>(type));
  rec.insert(rec.end(), frame.payload.begin(), frame.payload.end());
  out_.write(reinterpret_cast<const char*>(rec.data()), static_cast<std::streamsize>(rec.size()));
  if (!out_) throw Error(Errc::Io, "pcap write failed");
  ++packets_;
}

std::vector<PcapPacket> read_pcap(const std::filesystem::path& path) {
  const auto file = read_file(path);
  if (file.size() < 24) throw Error(Errc::TruncatedFile, "pcap global header is 24 bytes");
  const std::uint32_t magic = get_u32(file.data(), false);
  bool swap = false;
  bool nanos = false;
  if (magic == kMagicMicros || magic == 0xa1b23c4d) {
    nanos = magic != kMagicMicros;
  } else if (magic == 0xd4c3b2a1 || magic == 0x4d3cb2a1) {
    swap = true;
    nanos = magic == 0x4d3cb2a1;
  } else {
    throw Error(Errc::BadMagic, "not a pcap file");
  }
  std::vector<PcapPacket> packets;
  std::size_t at = 24;
  while (at < file.size()) {
    if (file.size() - at < 16) throw Error(Errc::TruncatedFile, "partial pcap record header");
    const std::uint64_t sec = get_u32(file.data() + at, swap);
    const std::uint64_t frac = get_u32(file.data() + at + 4, swap);
    const std::uint32_t incl = get_u32(file.data() + at + 8, swap);
    at += 16;
    if (file.size() - at < incl) throw Error(Errc::TruncatedFile, "partial pcap record");
    PcapPacket p;
    p.timestamp = std::chrono::seconds{sec} +
                  (nanos ? SimDuration{frac} : SimDuration{std::chrono::microseconds{frac}});
    p.data.assign(file.begin() + static_cast<std::ptrdiff_t>(at),
                  file.begin() + static_cast<std::ptrdiff_t>(at + incl));
    packets.push_back(std::move(p));
    at += incl;
  }
  return packets;
}

Trace pcap_to_trace(const std::vector<PcapPacket>& packets, std::uint32_t chunk_bits, std::size_t header_bytes) {
  Trace trace(chunk_bits);
  std::vector<std::uint8_t> buf(trace.chunk_bytes());
  for (const auto& p : packets) {
    std::fill(buf.begin(), buf.end(), 0);
    if (p.data.size() > header_bytes) {
      const std::size_t take = std::min(buf.size(), p.data.size() - header_bytes);
      std::memcpy(buf.data(), p.data.data() + header_bytes, take);
    }
    trace.push_back(buf);
  }
  return trace;
}

}  // namespace gdline
