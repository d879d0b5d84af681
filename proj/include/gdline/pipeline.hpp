// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gdline/bit_chunk.hpp"
#include "gdline/dictionary.hpp"
#include "gdline/frame.hpp"
#include "gdline/hamming.hpp"
#include "gdline/trace.hpp"

namespace gdline {

// A learning delay that never elapses: the compression table stays empty.
inline constexpr SimDuration kNeverLearn = SimDuration::max();

struct PipelineConfig {
  unsigned m = 8;
  unsigned id_width = 15;
  SimDuration learning_delay = std::chrono::microseconds{1770};
  bool align_padding = false;
  // Fraction of learning_delay after which the decoder's reverse mapping is
  // live. The encoder's forward mapping always waits the full delay.
  double decoder_install_lead = 1.0;

  FrameLayout layout() const noexcept { return {m, id_width, align_padding}; }
  void validate() const;  // throws InvalidSpec / UnsupportedM
};

struct Counters {
  std::uint64_t raw_in = 0;
  std::uint64_t out_syn_basis = 0;
  std::uint64_t out_syn_id = 0;
  std::uint64_t in_syn_basis = 0;
  std::uint64_t in_syn_id = 0;
  std::uint64_t restored_raw = 0;
  std::uint64_t digests = 0;
  std::uint64_t installs = 0;
  std::uint64_t evictions = 0;
  std::uint64_t decode_miss = 0;

  // RAW_IN == OUT_SYN_BASIS + OUT_SYN_ID and
  // RESTORED_RAW == IN_SYN_BASIS + IN_SYN_ID - DECODE_MISS.
  bool consistent() const noexcept;
  friend bool operator==(const Counters&, const Counters&) = default;
};

// One "NAME count" line per classification.
std::string format_counters(const Counters& counters);

struct Digest {
  BitChunk basis;
  SimTime emitted_at{0};
};

struct Install {
  BitChunk basis;
  BasisId id;
  SimTime at{0};
};

struct EncoderOutput;

// Encoder switch, decoder switch, control plane and a zero-delay link.
class World {
 public:
  explicit World(PipelineConfig config);

  const PipelineConfig& config() const noexcept { return config_; }
  const HammingCode& code() const noexcept { return code_; }
  const FrameLayout& layout() const noexcept { return layout_; }
  const Counters& counters() const noexcept { return counters_; }
  const Dictionary& control() const noexcept { return control_; }

  // Maps basis in the allocator and both switches at once, as a static
  // table loaded before traffic starts.
  BasisId preload(const BitChunk& basis, SimTime now = SimTime{0});
  // Loads every entry of a snapshot dictionary with its ids.
  void preload(const Dictionary& snapshot, SimTime now = SimTime{0});

  std::optional<BasisId> encoder_entry(const BitChunk& basis) const;
  const BitChunk* decoder_entry(BasisId id) const noexcept;
  std::size_t pending_digests() const noexcept { return learn_queue_.size(); }

  // Every forward mapping visible at the encoder resolves to the same basis
  // at the decoder. Throws std::logic_error otherwise.
  void check_visibility() const;

 private:
  friend EncoderOutput encoder_process(World&, const Frame&, SimTime);
  friend Frame decoder_process(World&, const Frame&);
  friend std::vector<Install> control_plane_step(World&, SimTime);

  struct ForwardInstall {
    BitChunk basis;
    BasisId id;
    SimTime due;
  };

  PipelineConfig config_;
  HammingCode code_;
  FrameLayout layout_;
  Counters counters_;
  Dictionary control_;
  std::unordered_map<BitChunk, BasisId, BitChunkHash> encoder_table_;
  std::unordered_set<BitChunk, BitChunkHash> pending_;
  std::vector<std::optional<BitChunk>> decoder_table_;
  std::deque<Digest> learn_queue_;
  std::deque<ForwardInstall> install_queue_;
};

struct EncoderOutput {
  Frame frame;
  std::optional<Digest> digest;
};

// RAW in, SYN_ID on a hit, otherwise SYN_BASIS plus a digest (one per basis
// while its learning is pending). Throws MalformedFrame.
EncoderOutput encoder_process(World& world, const Frame& raw, SimTime now);

// Restores the RAW frame. Throws DecodeMiss for an unmapped id (counted).
Frame decoder_process(World& world, const Frame& frame);

// Applies every learning step due at or before now: the allocator assigns an
// id and the decoder mapping is installed; the encoder mapping follows once
// the full learning delay has passed. Evicted bases leave the encoder first.
std::vector<Install> control_plane_step(World& world, SimTime now);

struct PipelineResult {
  Counters counters;
  std::uint64_t raw_bytes = 0;
  std::uint64_t encoded_bytes = 0;
  std::uint64_t mismatches = 0;
  std::vector<BitChunk> restored;  // filled when RunOptions::keep_output

  double ratio() const noexcept {
    return raw_bytes ? static_cast<double>(encoded_bytes) / static_cast<double>(raw_bytes) : 0.0;
  }
  bool lossless() const noexcept { return mismatches == 0 && counters.decode_miss == 0; }
};

struct RunOptions {
  SimDuration gap = std::chrono::microseconds{1};
  SimTime start{0};
  bool keep_output = false;
  // Called per chunk with the ingress RAW frame and the frame on the link.
  std::function<void(const Frame& ingress, const Frame& link)> observer;
};

// Replays the trace, chunk i arriving at start + i*gap. Frames arriving at
// the same instant an install becomes due are processed first.
PipelineResult run_pipeline(World& world, const Trace& trace, const RunOptions& options = {});
PipelineResult run_pipeline(const Trace& trace, const PipelineConfig& config, SimDuration gap);

}  // namespace gdline
