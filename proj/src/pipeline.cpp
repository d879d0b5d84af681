// SPDX-License-Identifier: Apache-2.0
#include "gdline/pipeline.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gdline/codec.hpp"
#include "gdline/error.hpp"

namespace gdline {

namespace {

SimTime due_after(SimTime from, SimDuration delay) {
  if (delay == kNeverLearn || from > SimTime::max() - delay) return SimTime::max();
  return from + delay;
}

SimDuration scaled(SimDuration delay, double fraction) {
  if (delay == kNeverLearn || fraction >= 1.0) return delay;
  return SimDuration{static_cast<SimDuration::rep>(std::llround(static_cast<long double>(delay.count()) * fraction))};
}

}  // namespace

void PipelineConfig::validate() const {
  if (m < kMinM || m > kMaxM) throw Error(Errc::UnsupportedM, "m=" + std::to_string(m));
  if (id_width < 1 || id_width > Dictionary::kMaxIdWidth) throw Error(Errc::InvalidSpec, "bad id width");
  if (learning_delay < SimDuration::zero()) throw Error(Errc::InvalidSpec, "learning_delay must be >= 0");
  if (!(decoder_install_lead >= 0.0 && decoder_install_lead <= 1.0)) {
    throw Error(Errc::InvalidSpec, "decoder_install_lead must lie in [0,1]");
  }
}

bool Counters::consistent() const noexcept {
  return raw_in == out_syn_basis + out_syn_id &&
         restored_raw + decode_miss == in_syn_basis + in_syn_id;
}

std::string format_counters(const Counters& c) {
  std::ostringstream out;
  out << "RAW_IN " << c.raw_in << '\n'
      << "OUT_SYN_BASIS " << c.out_syn_basis << '\n'
      << "OUT_SYN_ID " << c.out_syn_id << '\n'
      << "IN_SYN_BASIS " << c.in_syn_basis << '\n'
      << "IN_SYN_ID " << c.in_syn_id << '\n'
      << "RESTORED_RAW " << c.restored_raw << '\n'
      << "DIGESTS " << c.digests << '\n'
      << "INSTALLS " << c.installs << '\n'
      << "EVICTIONS " << c.evictions << '\n'
      << "DECODE_MISS " << c.decode_miss << '\n';
  return out.str();
}

World::World(PipelineConfig config)
    : config_((config.validate(), config)),
      code_(build_code(config.m)),
      layout_(config.layout()),
      control_(config.id_width),
      decoder_table_(std::size_t{1} << config.id_width) {}

BasisId World::preload(const BitChunk& basis, SimTime now) {
  if (auto id = control_.peek_id(basis)) return *id;
  const auto outcome = control_.learn(basis, now);
  if (outcome.evicted_basis) {
    encoder_table_.erase(*outcome.evicted_basis);
    ++counters_.evictions;
  }
  decoder_table_[outcome.assigned.value] = basis;
  encoder_table_[basis] = outcome.assigned;
  return outcome.assigned;
}

void World::preload(const Dictionary& snapshot, SimTime now) {
  if (snapshot.id_width() != config_.id_width) throw Error(Errc::InvalidSpec, "snapshot id width differs");
  for (const auto& [id, basis] : snapshot.entries()) {
    if (basis.size() != code_.k()) throw Error(Errc::LengthMismatch, "snapshot basis width differs from k");
    control_.insert(id, basis, now);
    decoder_table_[id.value] = basis;
    encoder_table_[basis] = id;
  }
}

std::optional<BasisId> World::encoder_entry(const BitChunk& basis) const {
  auto it = encoder_table_.find(basis);
  if (it == encoder_table_.end()) return std::nullopt;
  return it->second;
}

const BitChunk* World::decoder_entry(BasisId id) const noexcept {
  if (id.value >= decoder_table_.size() || !decoder_table_[id.value]) return nullptr;
  return &*decoder_table_[id.value];
}

void World::check_visibility() const {
  for (const auto& [basis, id] : encoder_table_) {
    const BitChunk* back = decoder_entry(id);
    if (back == nullptr || !(*back == basis)) {
      throw std::logic_error("encoder maps a basis to id " + std::to_string(id.value) +
                             " that the decoder cannot resolve");
    }
  }
}

EncoderOutput encoder_process(World& world, const Frame& raw, SimTime now) {
  if (raw.kind != FrameKind::Raw) throw Error(Errc::MalformedFrame, "encoder accepts RAW frames only");
  const auto& layout = world.layout_;
  const auto chunk = std::get<BitChunk>(parse_frame(FrameKind::Raw, raw.payload, layout));
  ++world.counters_.raw_in;

  EncodedChunk enc = encode_chunk(chunk, world.code_);
  EncoderOutput out;
  out.frame.timestamp = now;

  if (auto it = world.encoder_table_.find(enc.basis); it != world.encoder_table_.end()) {
    world.control_.lookup_id(enc.basis, now);
    out.frame.kind = FrameKind::SynId;
    out.frame.payload = serialize_frame(SynIdFields{enc.syndrome, enc.msb, it->second}, layout);
    ++world.counters_.out_syn_id;
    return out;
  }

  if (world.pending_.insert(enc.basis).second) {
    out.digest = Digest{enc.basis, now};
    world.learn_queue_.push_back(*out.digest);
    ++world.counters_.digests;
  }
  out.frame.kind = FrameKind::SynBasis;
  out.frame.payload = serialize_frame(SynBasisFields{enc.syndrome, enc.msb, std::move(enc.basis)}, layout);
  ++world.counters_.out_syn_basis;
  return out;
}

Frame decoder_process(World& world, const Frame& frame) {
  const auto& layout = world.layout_;
  Frame out;
  out.kind = FrameKind::Raw;
  out.timestamp = frame.timestamp;

  if (frame.kind == FrameKind::SynBasis) {
    ++world.counters_.in_syn_basis;
    const auto f = std::get<SynBasisFields>(parse_frame(frame.kind, frame.payload, layout));
    out.payload = decode_chunk({f.syndrome, f.msb, f.basis}, world.code_).to_bytes();
  } else if (frame.kind == FrameKind::SynId) {
    ++world.counters_.in_syn_id;
    const auto f = std::get<SynIdFields>(parse_frame(frame.kind, frame.payload, layout));
    const BitChunk* basis = world.decoder_entry(f.id);
    if (basis == nullptr) {
      ++world.counters_.decode_miss;
      throw Error(Errc::DecodeMiss, "id " + std::to_string(f.id.value) + " has no mapping");
    }
    out.payload = decode_chunk({f.syndrome, f.msb, *basis}, world.code_).to_bytes();
  } else {
    throw Error(Errc::MalformedFrame, "decoder accepts SYN_BASIS and SYN_ID frames only");
  }
  ++world.counters_.restored_raw;
  return out;
}

std::vector<Install> control_plane_step(World& world, SimTime now) {
  std::vector<Install> installs;
  const SimDuration delay = world.config_.learning_delay;
  const SimDuration decoder_delay = scaled(delay, world.config_.decoder_install_lead);

  for (;;) {
    const bool learn_due = !world.learn_queue_.empty() &&
                           due_after(world.learn_queue_.front().emitted_at, decoder_delay) <= now;
    const bool install_due = !world.install_queue_.empty() && world.install_queue_.front().due <= now;
    if (!learn_due && !install_due) break;

    // Decoder-side work goes first when both are due at the same instant.
    const bool take_learn =
        learn_due && (!install_due || due_after(world.learn_queue_.front().emitted_at, decoder_delay) <=
                                          world.install_queue_.front().due);
    if (take_learn) {
      Digest d = std::move(world.learn_queue_.front());
      world.learn_queue_.pop_front();
      const SimTime at = due_after(d.emitted_at, decoder_delay);
      LearnOutcome outcome;
      try {
        outcome = world.control_.learn(d.basis, at);
      } catch (const Error& e) {
        if (e.code() != Errc::AlreadyKnown) throw;
        world.pending_.erase(d.basis);
        continue;
      }
      if (outcome.evicted_basis) {
        world.encoder_table_.erase(*outcome.evicted_basis);
        world.pending_.erase(*outcome.evicted_basis);
        ++world.counters_.evictions;
      }
      world.decoder_table_[outcome.assigned.value] = d.basis;
      world.install_queue_.push_back({std::move(d.basis), outcome.assigned, due_after(d.emitted_at, delay)});
      continue;
    }

    World::ForwardInstall fi = std::move(world.install_queue_.front());
    world.install_queue_.pop_front();
    // Skip mappings that were evicted while the forward install was queued.
    const auto current = world.control_.peek_id(fi.basis);
    if (!current || *current != fi.id) continue;
    const BitChunk* back = world.decoder_entry(fi.id);
    if (back == nullptr || !(*back == fi.basis)) {
      throw std::logic_error("forward install before reverse mapping");
    }
    world.encoder_table_[fi.basis] = fi.id;
    world.pending_.erase(fi.basis);
    ++world.counters_.installs;
    installs.push_back({std::move(fi.basis), fi.id, fi.due});
  }
  return installs;
}

PipelineResult run_pipeline(World& world, const Trace& trace, const RunOptions& options) {
  const auto& layout = world.layout();
  if (trace.chunk_bits() != layout.n() + 1 && !trace.empty()) {
    throw Error(Errc::LengthMismatch, "trace chunks are " + std::to_string(trace.chunk_bits()) +
                                          " bits, pipeline expects " + std::to_string(layout.n() + 1));
  }
  PipelineResult result;
  Frame raw;
  raw.kind = FrameKind::Raw;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const SimTime now = options.start + options.gap * static_cast<SimDuration::rep>(i);
    if (now > SimTime{0}) control_plane_step(world, now - SimDuration{1});

    const auto in = trace.bytes(i);
    raw.payload.assign(in.begin(), in.end());
    raw.timestamp = now;
    auto enc = encoder_process(world, raw, now);
    result.raw_bytes += raw.payload.size();
    result.encoded_bytes += enc.frame.payload.size();

    try {
      Frame restored = decoder_process(world, enc.frame);
      if (restored.payload != raw.payload) ++result.mismatches;
      if (options.keep_output) result.restored.push_back(BitChunk::from_bytes(restored.payload));
    } catch (const Error& e) {
      if (e.code() != Errc::DecodeMiss) throw;
    }
    if (options.observer) options.observer(raw, enc.frame);
  }
  result.counters = world.counters();
  return result;
}

PipelineResult run_pipeline(const Trace& trace, const PipelineConfig& config, SimDuration gap) {
  World world(config);
  RunOptions options;
  options.gap = gap;
  return run_pipeline(world, trace, options);
}

}  // namespace gdline
