// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "gdline/codec.hpp"
#include "gdline/error.hpp"
#include "gdline/pipeline.hpp"
#include "gdline/trace.hpp"

using namespace gdline;
using namespace std::chrono_literals;

namespace {

PipelineConfig demo_config(SimDuration delay = 1770us) {
  PipelineConfig c;
  c.m = 3;
  c.learning_delay = delay;
  return c;
}

Frame raw_frame(const char* bits) {
  return Frame{FrameKind::Raw, BitChunk::from_string(bits).to_bytes(), SimTime{0}};
}

Trace repeated(const BitChunk& chunk, std::size_t count) {
  Trace t(static_cast<std::uint32_t>(chunk.size()));
  for (std::size_t i = 0; i < count; ++i) t.push_back(chunk);
  return t;
}

std::size_t syn_basis_before_first_syn_id(const Trace& trace, const PipelineConfig& config, SimDuration gap,
                                          bool* rest_compressed) {
  World world(config);
  std::size_t before = 0;
  bool seen_id = false;
  bool all_id_after = true;
  RunOptions options;
  options.gap = gap;
  options.observer = [&](const Frame&, const Frame& link) {
    if (link.kind == FrameKind::SynId) {
      seen_id = true;
    } else if (seen_id) {
      all_id_after = false;
    } else {
      ++before;
    }
  };
  run_pipeline(world, trace, options);
  if (rest_compressed) *rest_compressed = all_id_after && seen_id;
  return before;
}

}  // namespace

TEST(Encoder, UnknownBasisLeavesAsSynBasisWithDigest) {
  World w(demo_config());
  const auto out = encoder_process(w, raw_frame("00000100"), SimTime{0});
  EXPECT_EQ(out.frame.kind, FrameKind::SynBasis);
  EXPECT_EQ(std::get<SynBasisFields>(parse_frame(FrameKind::SynBasis, out.frame.payload, w.layout())),
            (SynBasisFields{0b100, false, BitChunk::from_string("0000")}));
  ASSERT_TRUE(out.digest.has_value());
  EXPECT_EQ(out.digest->basis.to_string(), "0000");
  EXPECT_EQ(w.counters().digests, 1u);
}

TEST(Encoder, KnownBasisLeavesAsSynId) {
  World w(demo_config());
  w.preload(BitChunk::from_string("0000"));
  auto out = encoder_process(w, raw_frame("00000100"), SimTime{0});
  EXPECT_EQ(out.frame.kind, FrameKind::SynId);
  EXPECT_EQ(std::get<SynIdFields>(parse_frame(FrameKind::SynId, out.frame.payload, w.layout())),
            (SynIdFields{0b100, false, BasisId{0}}));
  EXPECT_FALSE(out.digest.has_value());

  EXPECT_EQ(w.preload(BitChunk::from_string("1111")), BasisId{1});
  out = encoder_process(w, raw_frame("11111111"), SimTime{0});
  EXPECT_EQ(std::get<SynIdFields>(parse_frame(FrameKind::SynId, out.frame.payload, w.layout())),
            (SynIdFields{0b000, true, BasisId{1}}));
}

TEST(Encoder, RejectsNonRawAndWrongSize) {
  World w(demo_config());
  EXPECT_THROW(encoder_process(w, Frame{FrameKind::SynId, {0, 0, 0}, SimTime{0}}, SimTime{0}), Error);
  EXPECT_THROW(encoder_process(w, Frame{FrameKind::Raw, {0, 0}, SimTime{0}}, SimTime{0}), Error);
}

TEST(Decoder, RestoresBothFrameKinds) {
  World w(demo_config());
  const Frame sb{FrameKind::SynBasis,
                 serialize_frame(SynBasisFields{0b100, false, BitChunk::from_string("0000")}, w.layout()), SimTime{0}};
  EXPECT_EQ(BitChunk::from_bytes(decoder_process(w, sb).payload).to_string(), "00000100");

  w.preload(BitChunk::from_string("0000"));
  w.preload(BitChunk::from_string("1111"));
  const Frame si{FrameKind::SynId, serialize_frame(SynIdFields{0b000, true, BasisId{1}}, w.layout()), SimTime{0}};
  EXPECT_EQ(BitChunk::from_bytes(decoder_process(w, si).payload).to_string(), "11111111");
  EXPECT_EQ(w.counters().restored_raw, 2u);
}

TEST(Decoder, UnknownIdIsDecodeMiss) {
  World w(demo_config());
  const Frame si{FrameKind::SynId, serialize_frame(SynIdFields{0, false, BasisId{5}}, w.layout()), SimTime{0}};
  try {
    decoder_process(w, si);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DecodeMiss);
  }
  EXPECT_EQ(w.counters().decode_miss, 1u);
  EXPECT_EQ(w.counters().in_syn_id, 1u);
  EXPECT_TRUE(w.counters().consistent());
}

TEST(ControlPlane, InstallBecomesVisibleAfterTheLearningDelay) {
  World w(demo_config(1770us));
  auto first = encoder_process(w, raw_frame("00000100"), SimTime{0});
  ASSERT_TRUE(first.digest.has_value());

  EXPECT_TRUE(control_plane_step(w, SimTime{1ms}).empty());
  auto mid = encoder_process(w, raw_frame("00000100"), SimTime{1ms});
  EXPECT_EQ(mid.frame.kind, FrameKind::SynBasis);
  EXPECT_FALSE(mid.digest.has_value());  // already pending

  const auto installs = control_plane_step(w, SimTime{1770us});
  ASSERT_EQ(installs.size(), 1u);
  EXPECT_EQ(installs[0].basis.to_string(), "0000");
  EXPECT_EQ(installs[0].id, BasisId{0});
  EXPECT_EQ(encoder_process(w, raw_frame("00000001"), SimTime{1770us}).frame.kind, FrameKind::SynId);
  w.check_visibility();
}

TEST(ControlPlane, ZeroDelayCompressesTheNextFrame) {
  const Trace t = repeated(BitChunk::from_string("00000100"), 3);
  World w(demo_config(0us));
  std::vector<FrameKind> kinds;
  RunOptions options;
  options.observer = [&](const Frame&, const Frame& link) { kinds.push_back(link.kind); };
  run_pipeline(w, t, options);
  EXPECT_EQ(kinds, (std::vector<FrameKind>{FrameKind::SynBasis, FrameKind::SynId, FrameKind::SynId}));
}

TEST(ControlPlane, FullTableEvictsOnInstall) {
  PipelineConfig c = demo_config(0us);
  c.id_width = 1;
  World w(c);
  w.preload(BitChunk::from_string("0000"));
  w.preload(BitChunk::from_string("1111"));
  encoder_process(w, raw_frame("00001011"), SimTime{5});
  const auto before = w.counters();
  control_plane_step(w, SimTime{5});
  EXPECT_EQ(w.counters().installs, before.installs + 1);
  EXPECT_EQ(w.counters().evictions, before.evictions + 1);
  EXPECT_EQ(w.encoder_entry(BitChunk::from_string("0000")), std::nullopt);  // least recently used
  w.check_visibility();
}

TEST(ControlPlane, DecoderLeadInstallsReverseMappingFirst) {
  PipelineConfig c = demo_config(1000us);
  c.decoder_install_lead = 0.25;
  World w(c);
  encoder_process(w, raw_frame("00000100"), SimTime{0});
  control_plane_step(w, SimTime{250us});
  ASSERT_NE(w.decoder_entry(BasisId{0}), nullptr);
  EXPECT_EQ(w.encoder_entry(BitChunk::from_string("0000")), std::nullopt);
  control_plane_step(w, SimTime{999us});
  EXPECT_EQ(w.encoder_entry(BitChunk::from_string("0000")), std::nullopt);
  control_plane_step(w, SimTime{1000us});
  EXPECT_EQ(w.encoder_entry(BitChunk::from_string("0000")), BasisId{0});
}

TEST(Pipeline, StaticTableSingleChunkRatio) {
  TraceSpec spec;
  spec.chunk_count = 1000;
  spec.distinct_bases = 1;
  spec.codeword_prob = 1.0;
  spec.random_msb = false;
  const Trace t = gen_synthetic(spec);
  World w(PipelineConfig{});
  w.preload(encode_chunk(t.chunk(0), w.code()).basis);
  const auto r = run_pipeline(w, t);
  EXPECT_EQ(r.raw_bytes, 32000u);
  EXPECT_EQ(r.encoded_bytes, 3000u);
  EXPECT_EQ(r.encoded_bytes * 32, r.raw_bytes * 3);
  EXPECT_DOUBLE_EQ(r.ratio(), 0.09375);
  EXPECT_TRUE(r.lossless());
}

TEST(Pipeline, NoLearningWithPaddingCostsOneByte) {
  TraceSpec spec;
  spec.chunk_count = 500;
  const Trace t = gen_synthetic(spec);
  PipelineConfig c;
  c.learning_delay = kNeverLearn;
  c.align_padding = true;
  const auto r = run_pipeline(t, c, 1us);
  EXPECT_EQ(r.encoded_bytes * 32, r.raw_bytes * 33);
  EXPECT_EQ(r.counters.installs, 0u);
  EXPECT_TRUE(r.lossless());
}

TEST(Pipeline, LearningWindowLength) {
  // Frames arriving at the install instant still leave uncompressed, so
  // floor(L/g) + 1 frames go out as SYN_BASIS.
  const BitChunk chunk = BitChunk::from_string("00000100");
  const Trace t = repeated(chunk, 400);
  struct Case {
    long long delay_ns, gap_ns;
  };
  for (const auto& [delay, gap] : std::vector<Case>{{0, 1000}, {1000, 1000}, {1770, 10}, {1775, 10}, {999, 1000},
                                                    {5000, 70}, {12345, 97}}) {
    bool rest = false;
    const auto n = syn_basis_before_first_syn_id(t, demo_config(SimDuration{delay}), SimDuration{gap}, &rest);
    EXPECT_EQ(n, static_cast<std::size_t>(delay / gap + 1)) << delay << "/" << gap;
    EXPECT_TRUE(rest);
  }
}

TEST(Pipeline, LosslessUnderEvictionPressureAndRandomConfigs) {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 40; ++round) {
    TraceSpec spec;
    spec.seed = rng();
    spec.m = 3 + static_cast<unsigned>(rng() % 6);
    spec.chunk_count = 600;
    spec.distinct_bases = 1 + rng() % 12;
    spec.codeword_prob = static_cast<double>(rng() % 100) / 100.0;
    spec.distribution = rng() % 2 ? BasisDistribution::Uniform : BasisDistribution::RoundRobin;
    const Trace t = gen_synthetic(spec);

    PipelineConfig c;
    c.m = spec.m;
    c.id_width = 1 + static_cast<unsigned>(rng() % 4);
    c.learning_delay = SimDuration{static_cast<long long>(rng() % 5000)};
    c.align_padding = rng() % 2;
    c.decoder_install_lead = static_cast<double>(rng() % 5) / 4.0;
    World w(c);
    RunOptions options;
    options.gap = SimDuration{1 + static_cast<long long>(rng() % 300)};
    options.keep_output = true;
    options.observer = [&w](const Frame&, const Frame&) {
      w.check_visibility();
      w.control().check_invariants();
      ASSERT_TRUE(w.counters().consistent());
    };
    const auto r = run_pipeline(w, t, options);
    ASSERT_TRUE(r.lossless()) << "round " << round;
    ASSERT_EQ(r.restored.size(), t.size());
    for (std::size_t i = 0; i < t.size(); ++i) ASSERT_EQ(r.restored[i], t.chunk(i));
    ASSERT_EQ(r.counters.raw_in, t.size());
    ASSERT_EQ(r.counters.restored_raw, t.size());
    const auto layout = c.layout();
    ASSERT_EQ(r.encoded_bytes,
              r.counters.out_syn_basis * layout.syn_basis_bytes() + r.counters.out_syn_id * layout.syn_id_bytes());
  }
}

TEST(Counters, ReportFormat) {
  Counters c;
  c.raw_in = 3;
  c.out_syn_id = 3;
  const std::string text = format_counters(c);
  EXPECT_EQ(text.substr(0, 9), "RAW_IN 3\n");
  EXPECT_NE(text.find("OUT_SYN_ID 3\n"), std::string::npos);
  EXPECT_NE(text.find("DECODE_MISS 0\n"), std::string::npos);
  EXPECT_TRUE(c.consistent());
}

TEST(Config, Validation) {
  PipelineConfig c;
  c.decoder_install_lead = 1.5;
  EXPECT_THROW(World{c}, Error);
  c = PipelineConfig{};
  c.m = 2;
  EXPECT_THROW(World{c}, Error);
  c = PipelineConfig{};
  c.learning_delay = SimDuration{-1};
  EXPECT_THROW(World{c}, Error);
}
