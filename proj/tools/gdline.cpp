// SPDX-License-Identifier: Apache-2.0
//
// gdline: code tables, trace generation, pipeline runs and benchmarks.
//
// Exit codes: 0 success, 1 invariant violation, 2 usage or configuration
// error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gdline/codec.hpp"
#include "gdline/dictionary.hpp"
#include "gdline/error.hpp"
#include "gdline/experiment.hpp"
#include "gdline/hamming.hpp"
#include "gdline/kernels.hpp"
#include "gdline/pcap.hpp"
#include "gdline/pipeline.hpp"
#include "gdline/trace.hpp"

namespace {

using namespace gdline;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SimDuration seconds_to_sim(double seconds) {
  if (std::isinf(seconds)) return kNeverLearn;
  if (!(seconds >= 0.0)) throw UsageError("durations must be non-negative");
  return SimDuration{static_cast<SimDuration::rep>(std::llround(seconds * 1e9))};
}

unsigned chunk_m(std::uint32_t chunk_bits) {
  for (unsigned m = kMinM; m <= kMaxM; ++m) {
    if ((std::uint32_t{1} << m) == chunk_bits) return m;
  }
  throw UsageError("trace chunks of " + std::to_string(chunk_bits) + " bits are not 2^m for m in 3..15");
}

int cmd_tables(unsigned m, bool alternate, bool sequences) {
  const HammingCode code = build_code(m, alternate);
  std::cout << render_code_tables(code, sequences || code.n() <= 31);
  return 0;
}

struct GenArgs {
  std::string out;
  TraceSpec spec;
  std::string distribution = "uniform";
  bool fixed_msb = false;
};

int cmd_gen(GenArgs args) {
  if (args.distribution == "round-robin") {
    args.spec.distribution = BasisDistribution::RoundRobin;
  } else if (args.distribution != "uniform") {
    throw UsageError("--distribution must be uniform or round-robin");
  }
  args.spec.random_msb = !args.fixed_msb;
  const Trace trace = gen_synthetic(args.spec);
  write_trace(args.out, trace);
  std::cout << "wrote " << trace.size() << " chunks of " << trace.chunk_bits() << " bits to " << args.out << '\n';
  return 0;
}

struct ChunkArgs {
  std::string in;
  std::string out;
  unsigned m = 8;
  bool from_pcap = false;
  std::size_t header_bytes = 14;
};

int cmd_chunk(const ChunkArgs& args) {
  const auto bits = static_cast<std::uint32_t>(1u << args.m);
  Trace trace = args.from_pcap ? pcap_to_trace(read_pcap(args.in), bits, args.header_bytes)
                               : chunk_file(read_file(args.in), bits);
  write_trace(args.out, trace);
  std::cout << "wrote " << trace.size() << " chunks of " << trace.chunk_bits() << " bits to " << args.out << '\n';
  return 0;
}

struct RunArgs {
  std::string trace;
  std::string mode = "dynamic";
  double delay = 1.77e-3;
  double gap = 1e-6;
  double lead = 1.0;
  bool padding = false;
  unsigned id_width = 15;
  std::string snapshot_in;
  std::string snapshot_out;
  std::string report;
  std::string pcap_out;
  std::optional<std::uint64_t> external_size;
  int threads = 0;
};

int cmd_run(const RunArgs& args) {
  const auto mode = parse_mode(args.mode);
  if (!mode) throw UsageError("--mode must be no-table, static or dynamic");
  const Trace trace = read_trace(args.trace);

  RunSettings settings;
  settings.mode = *mode;
  settings.config.m = chunk_m(trace.chunk_bits());
  settings.config.id_width = args.id_width;
  settings.config.learning_delay = seconds_to_sim(args.delay);
  settings.config.align_padding = args.padding;
  settings.config.decoder_install_lead = args.lead;
  settings.gap = seconds_to_sim(args.gap);
  settings.threads = args.threads;

  std::optional<Dictionary> snapshot;
  if (!args.snapshot_in.empty()) {
    std::ifstream in(args.snapshot_in);
    if (!in) throw Error(Errc::Io, "cannot open " + args.snapshot_in);
    snapshot.emplace(args.id_width);
    import_snapshot(in, *snapshot, (std::size_t{1} << settings.config.m) - settings.config.m - 1);
    settings.snapshot = &*snapshot;
  }

  std::optional<PcapWriter> pcap;
  if (!args.pcap_out.empty()) {
    pcap.emplace(args.pcap_out);
    settings.observer = [&pcap](const Frame& ingress, const Frame& link) {
      pcap->write(ingress);
      pcap->write(link);
    };
  }

  RunOutcome outcome = run_case(trace, settings);
  if (auto problem = outcome.violation()) {
    std::cerr << "gdline: invariant violation: " << *problem << '\n';
    return kExitViolation;
  }
  outcome.report.external_bytes = args.external_size;
  const std::string text = format_report(outcome.report);
  std::cout << text;
  if (!args.report.empty()) {
    std::ofstream out(args.report);
    if (!(out << text)) throw Error(Errc::Io, "cannot write " + args.report);
  }
  if (!args.snapshot_out.empty()) {
    std::ofstream out(args.snapshot_out);
    export_snapshot(out, outcome.final_table);
    if (!out) throw Error(Errc::Io, "cannot write " + args.snapshot_out);
  }
  return 0;
}

int cmd_bench(const std::string& path, int threads, int repeat) {
  const Trace trace = read_trace(path);
  const HammingCode code = build_code(chunk_m(trace.chunk_bits()));
  const FrameLayout layout{code.m(), 15, false};
  const int workers = threads > 0 ? threads : kernels::default_threads();
  using Clock = std::chrono::steady_clock;

  auto time = [repeat](auto&& fn) {
    const auto t0 = Clock::now();
    for (int r = 0; r < repeat; ++r) fn();
    return std::chrono::duration<double>(Clock::now() - t0).count() / repeat;
  };
  auto report = [&](const char* name, double secs) {
    const double chunks = static_cast<double>(trace.size());
    std::printf("%-22s %12.0f chunks/s %9.3f Gbit/s\n", name, chunks / secs,
                chunks * trace.chunk_bits() / secs / 1e9);
  };

  std::vector<EncodedChunk> encoded;
  report("encode serial", time([&] { encoded = kernels::encode_serial(trace, code); }));
  std::vector<EncodedChunk> encoded_par;
  report("encode parallel", time([&] { encoded_par = kernels::encode_parallel(trace, code, workers); }));
  Trace decoded;
  report("decode serial", time([&] { decoded = kernels::decode_serial(encoded, code); }));
  Trace decoded_par;
  report("decode parallel", time([&] { decoded_par = kernels::decode_parallel(encoded_par, code, workers); }));

  kernels::BasisTable table;
  for (auto& b : kernels::distinct_bases_parallel(trace, code, workers)) {
    if (table.size() >= (std::size_t{1} << layout.id_width)) break;
    table.emplace(std::move(b), BasisId{static_cast<std::uint32_t>(table.size())});
  }
  kernels::StaticTotals serial_totals;
  kernels::StaticTotals parallel_totals;
  report("static totals serial", time([&] { serial_totals = kernels::static_totals_serial(trace, code, layout, table); }));
  report("static totals parallel",
         time([&] { parallel_totals = kernels::static_totals_parallel(trace, code, layout, table, workers); }));

  std::printf("threads=%d\nchunks=%zu\nraw_bytes=%llu\nencoded_bytes_serial=%llu\nencoded_bytes_parallel=%llu\n",
              workers, trace.size(), static_cast<unsigned long long>(serial_totals.raw_bytes),
              static_cast<unsigned long long>(serial_totals.encoded_bytes),
              static_cast<unsigned long long>(parallel_totals.encoded_bytes));
  const bool agree = serial_totals == parallel_totals && encoded == encoded_par &&
                     decoded.data().size() == trace.data().size() && decoded == decoded_par;
  const bool lossless = std::equal(decoded.data().begin(), decoded.data().end(), trace.data().begin());
  std::printf("serial_parallel_agree=%s\nlossless=%s\n", agree ? "yes" : "no", lossless ? "yes" : "no");
  return agree && lossless ? 0 : kExitViolation;
}

int cmd_export_payloads(const std::string& path, const std::string& out) {
  const Trace trace = read_trace(path);
  write_file(out, trace.data());
  std::cout << "wrote " << trace.data().size() << " bytes to " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized-deduplication switch pipeline simulator"};
  app.require_subcommand(1);

  unsigned tables_m = 8;
  bool tables_alt = false;
  bool tables_seq = false;
  auto* tables = app.add_subcommand("tables", "Print code parameters and the syndrome table");
  tables->add_option("--m", tables_m, "Parity bits (3..15)")->required();
  tables->add_flag("--alternate", tables_alt, "Use the alternate generator where one exists (m=5, m=9)");
  tables->add_flag("--sequences", tables_seq, "Always print the bit-sequence equivalence rows");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic trace");
  gen->add_option("--out", gen_args.out, "Output GDTRACE file")->required();
  gen->add_option("--seed", gen_args.spec.seed, "RNG seed");
  gen->add_option("--count", gen_args.spec.chunk_count, "Number of chunks");
  gen->add_option("--m", gen_args.spec.m, "Chunks are 2^m bits");
  gen->add_option("--bases", gen_args.spec.distinct_bases, "Distinct bases");
  gen->add_option("--codeword-prob", gen_args.spec.codeword_prob, "Probability of a zero deviation");
  gen->add_option("--distribution", gen_args.distribution, "uniform | round-robin");
  gen->add_flag("--fixed-msb", gen_args.fixed_msb, "Keep the MSB of every chunk at 0");

  ChunkArgs chunk_args;
  auto* chunk = app.add_subcommand("chunk", "Cut a file (or pcap payloads) into a trace");
  chunk->add_option("--in", chunk_args.in, "Input file")->required();
  chunk->add_option("--out", chunk_args.out, "Output GDTRACE file")->required();
  chunk->add_option("--m", chunk_args.m, "Chunks are 2^m bits");
  chunk->add_flag("--pcap", chunk_args.from_pcap, "Input is a pcap; one chunk per packet payload");
  chunk->add_option("--header-bytes", chunk_args.header_bytes, "Link header bytes skipped in pcap mode");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Replay a trace through encoder, link and decoder");
  run->add_option("--trace", run_args.trace, "GDTRACE file")->required();
  run->add_option("--mode", run_args.mode, "no-table | static | dynamic");
  run->add_option("--delay", run_args.delay, "Learning delay in seconds (inf disables learning)");
  run->add_option("--gap", run_args.gap, "Inter-arrival time in seconds");
  run->add_option("--lead", run_args.lead, "Fraction of the delay after which the decoder mapping is live");
  run->add_flag("--padding", run_args.padding, "Insert the 8 alignment bits into SYN_BASIS frames");
  run->add_option("--id-width", run_args.id_width, "Basis id width in bits");
  run->add_option("--snapshot-in", run_args.snapshot_in, "Pre-load the table from a snapshot");
  run->add_option("--snapshot-out", run_args.snapshot_out, "Write the final table as a snapshot");
  run->add_option("--report", run_args.report, "Also write the report here");
  run->add_option("--pcap-out", run_args.pcap_out, "Write ingress and link frames as pcap");
  run->add_option("--external-size", run_args.external_size, "Externally compressed payload size in bytes");
  run->add_option("--threads", run_args.threads, "Threads for static-table precomputation");

  std::string bench_trace;
  int bench_threads = 0;
  int bench_repeat = 1;
  auto* bench = app.add_subcommand("bench", "Software encode/decode throughput (informational)");
  bench->add_option("--trace", bench_trace, "GDTRACE file")->required();
  bench->add_option("--threads", bench_threads, "Worker threads (0 = OpenMP default)");
  bench->add_option("--repeat", bench_repeat, "Timed repetitions")->check(CLI::PositiveNumber);

  std::string export_trace;
  std::string export_out;
  auto* exp = app.add_subcommand("export-payloads", "Concatenate raw chunk payloads into one file");
  exp->add_option("--trace", export_trace, "GDTRACE file")->required();
  exp->add_option("--out", export_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*tables) return cmd_tables(tables_m, tables_alt, tables_seq);
    if (*gen) return cmd_gen(gen_args);
    if (*chunk) return cmd_chunk(chunk_args);
    if (*run) return cmd_run(run_args);
    if (*bench) return cmd_bench(bench_trace, bench_threads, bench_repeat);
    if (*exp) return cmd_export_payloads(export_trace, export_out);
  } catch (const UsageError& e) {
    std::cerr << "gdline: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "gdline: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "gdline: invariant violation: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitUsage;
}
