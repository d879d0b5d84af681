// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <vector>

#include "gdline/frame.hpp"
#include "gdline/trace.hpp"

namespace gdline {

// Classic little-endian pcap, LINKTYPE_ETHERNET, microsecond timestamps.
// Every frame gets a fixed 14-byte Ethernet header carrying the EtherType of
// its kind.
class PcapWriter {
 public:
  explicit PcapWriter(const std::filesystem::path& path);

  void write(const Frame& frame);
  std::uint64_t packets() const noexcept { return packets_; }

 private:
  std::ofstream out_;
  std::uint64_t packets_ = 0;
};

struct PcapPacket {
  SimTime timestamp{0};
  std::vector<std::uint8_t> data;  // captured bytes including link header
};

// Accepts either byte order of the classic format. Throws BadMagic /
// TruncatedFile.
std::vector<PcapPacket> read_pcap(const std::filesystem::path& path);

// One chunk per packet: the payload after header_bytes, cut or zero-filled
// to chunk_bits/8 bytes.
Trace pcap_to_trace(const std::vector<PcapPacket>& packets, std::uint32_t chunk_bits,
                    std::size_t header_bytes = 14);

}  // namespace gdline
