// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "gdline/dictionary.hpp"
#include "gdline/hamming.hpp"
#include "gdline/pipeline.hpp"
#include "gdline/trace.hpp"

namespace gdline {

// no-table: the compression table stays empty.
// static: every basis in the trace is mapped before replay starts.
// dynamic: the table starts empty and is learned from digests.
enum class RunMode { NoTable, Static, Dynamic };

std::string_view mode_label(RunMode mode) noexcept;
std::optional<RunMode> parse_mode(std::string_view label) noexcept;

struct RunReport {
  RunMode mode = RunMode::Dynamic;
  std::uint64_t raw_bytes = 0;
  std::uint64_t encoded_bytes = 0;
  Counters counters;
  // Size of the payload file after an external compressor, if supplied.
  std::optional<std::uint64_t> external_bytes;

  double ratio() const noexcept {
    return raw_bytes ? static_cast<double>(encoded_bytes) / static_cast<double>(raw_bytes) : 0.0;
  }
};

struct RunSettings {
  RunMode mode = RunMode::Dynamic;
  PipelineConfig config;
  SimDuration gap = std::chrono::microseconds{1};
  // Pre-loaded table; overrides the static-mode precomputation.
  const Dictionary* snapshot = nullptr;
  int threads = 0;
  std::function<void(const Frame& ingress, const Frame& link)> observer;
};

struct RunOutcome {
  RunReport report;
  Dictionary final_table;
  std::uint64_t mismatches = 0;
  std::uint64_t bases_preloaded = 0;

  // Empty when the run honoured losslessness and the counter laws.
  std::optional<std::string> violation() const;
};

// Throws InvalidSpec when a snapshot is combined with no-table mode.
RunOutcome run_case(const Trace& trace, const RunSettings& settings);

// Aligned summary table followed by stable key=value lines.
std::string format_report(const RunReport& report);

// Code parameters, the "syndrome -> position" dump (binary syndromes) and,
// when with_sequences, one "position (bits) (hamming) (crc)" row per
// single-bit pattern.
std::string render_code_tables(const HammingCode& code, bool with_sequences);

// CRC-m parameter text, e.g. 0x3, 0x05, 0x1D, 0x143.
std::string crc_parameter(const GeneratorPolynomial& g);

// Shortest decimal that round-trips the double.
std::string format_double(double v);

}  // namespace gdline
