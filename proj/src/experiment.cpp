// SPDX-License-Identifier: Apache-2.0
#include "gdline/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "gdline/error.hpp"
#include "gdline/kernels.hpp"

namespace gdline {

namespace {

std::string binary(std::uint32_t value, unsigned width) {
  std::string s(width, '0');
  for (unsigned b = 0; b < width; ++b) {
    if ((value >> b) & 1u) s[width - 1 - b] = '1';
  }
  return s;
}

}  // namespace

std::string_view mode_label(RunMode mode) noexcept {
  switch (mode) {
    case RunMode::NoTable: return "no-table";
    case RunMode::Static: return "static";
    case RunMode::Dynamic: return "dynamic";
  }
  return "?";
}

std::optional<RunMode> parse_mode(std::string_view label) noexcept {
  for (auto m : {RunMode::NoTable, RunMode::Static, RunMode::Dynamic}) {
    if (label == mode_label(m)) return m;
  }
  return std::nullopt;
}

std::optional<std::string> RunOutcome::violation() const {
  const auto& c = report.counters;
  if (mismatches != 0) return std::to_string(mismatches) + " restored chunks differ from the input";
  if (c.decode_miss != 0) return std::to_string(c.decode_miss) + " frames referenced unmapped ids";
  if (!c.consistent()) return std::string("counter conservation broken");
  if (c.restored_raw != c.raw_in) return std::string("not every chunk was restored");
  return std::nullopt;
}

RunOutcome run_case(const Trace& trace, const RunSettings& settings) {
  PipelineConfig config = settings.config;
  if (settings.mode == RunMode::NoTable) {
    if (settings.snapshot) throw Error(Errc::InvalidSpec, "no-table mode cannot load a snapshot");
    config.learning_delay = kNeverLearn;
  }
  World world(config);
  std::uint64_t preloaded = 0;
  if (settings.snapshot) {
    world.preload(*settings.snapshot);
    preloaded = settings.snapshot->size();
  } else if (settings.mode == RunMode::Static) {
    const auto bases = kernels::distinct_bases_parallel(trace, world.code(), settings.threads);
    const std::size_t fit = std::min(bases.size(), world.control().capacity());
    for (std::size_t i = 0; i < fit; ++i) world.preload(bases[i]);
    preloaded = fit;
  }

  RunOptions options;
  options.gap = settings.gap;
  options.observer = settings.observer;
  const PipelineResult result = run_pipeline(world, trace, options);
  world.check_visibility();

  RunOutcome out{RunReport{}, world.control(), result.mismatches, preloaded};
  out.report.mode = settings.mode;
  out.report.raw_bytes = result.raw_bytes;
  out.report.encoded_bytes = result.encoded_bytes;
  out.report.counters = result.counters;
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string format_report(const RunReport& r) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %14s %14s %10s\n", "case", "raw_bytes", "encoded_bytes", "ratio");
  out << line;
  std::snprintf(line, sizeof line, "%-10s %14llu %14llu %10s\n", std::string(mode_label(r.mode)).c_str(),
                static_cast<unsigned long long>(r.raw_bytes), static_cast<unsigned long long>(r.encoded_bytes),
                format_double(r.ratio()).c_str());
  out << line;
  const double ext_ratio =
      r.external_bytes && r.raw_bytes ? static_cast<double>(*r.external_bytes) / static_cast<double>(r.raw_bytes) : 0.0;
  if (r.external_bytes) {
    std::snprintf(line, sizeof line, "%-10s %14llu %14llu %10s\n", "external",
                  static_cast<unsigned long long>(r.raw_bytes), static_cast<unsigned long long>(*r.external_bytes),
                  format_double(ext_ratio).c_str());
    out << line;
  }
  out << '\n';
  out << "mode=" << mode_label(r.mode) << '\n';
  out << "raw_bytes=" << r.raw_bytes << '\n';
  out << "encoded_bytes=" << r.encoded_bytes << '\n';
  out << "ratio=" << format_double(r.ratio()) << '\n';
  out << "savings=" << format_double(1.0 - r.ratio()) << '\n';
  if (r.external_bytes) {
    out << "external_bytes=" << *r.external_bytes << '\n';
    out << "external_ratio=" << format_double(ext_ratio) << '\n';
  }
  std::istringstream counters(format_counters(r.counters));
  std::string name;
  std::uint64_t value = 0;
  while (counters >> name >> value) out << "counter." << name << '=' << value << '\n';
  return out.str();
}

std::string crc_parameter(const GeneratorPolynomial& g) {
  const unsigned digits = std::min(3u, (g.degree + 3) / 4);
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%0*X", static_cast<int>(digits), g.low_bits);
  return buf;
}

std::string render_code_tables(const HammingCode& code, bool with_sequences) {
  std::ostringstream out;
  const unsigned m = code.m();
  out << "# hamming (" << code.n() << ',' << code.k() << ") m=" << m << '\n';
  out << "# generator " << code.generator().to_string() << " crc-" << m << " parameter "
      << crc_parameter(code.generator()) << '\n';
  out << "# syndrome -> position\n";
  for (std::size_t i = 0; i < code.n(); ++i) out << binary(code.syndrome_at(i), m) << " -> " << i << '\n';
  if (with_sequences) {
    out << "# position bit-sequence hamming-syndrome crc-" << m << '\n';
    for (std::size_t i = 0; i < code.n(); ++i) {
      BitChunk e(code.n());
      e.set(i);
      out << i << " (" << e.to_string() << ") (" << binary(code.syndrome_at(i), m) << ") ("
          << binary(poly_mod(e, code.generator()), m) << ")\n";
    }
  }
  return out.str();
}

}  // namespace gdline
