// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gdline/bit_chunk.hpp"

namespace gdline {

// Simulated time. Integer nanoseconds keep delay/gap arithmetic exact.
using SimDuration = std::chrono::nanoseconds;
using SimTime = std::chrono::nanoseconds;

struct BasisId {
  std::uint32_t value = 0;
  friend auto operator<=>(const BasisId&, const BasisId&) = default;
};

struct LearnOutcome {
  BasisId assigned;
  std::optional<BitChunk> evicted_basis;
};

// Basis <-> ID mapping with LRU identifier recycling. last_used timestamps
// stand in for per-entry TTLs; eviction happens on demand when the pool is
// exhausted, choosing the smallest last_used (then the smallest ID).
//
// Single writer. Not internally synchronized.
class Dictionary {
 public:
  static constexpr unsigned kMaxIdWidth = 24;

  explicit Dictionary(unsigned id_width = 15);

  unsigned id_width() const noexcept { return id_width_; }
  std::size_t capacity() const noexcept { return reverse_.size(); }
  std::size_t size() const noexcept { return forward_.size(); }
  std::size_t free_count() const noexcept { return free_ids_.size(); }

  // Hit refreshes last_used to now.
  std::optional<BasisId> lookup_id(const BitChunk& basis, SimTime now);
  // Same lookup without touching recency.
  std::optional<BasisId> peek_id(const BitChunk& basis) const;
  // Reverse map; never touches recency.
  std::optional<BitChunk> lookup_basis(BasisId id) const;
  const BitChunk* find_basis(BasisId id) const noexcept;
  std::optional<SimTime> last_used(const BitChunk& basis) const;

  // Throws AlreadyKnown when basis is mapped.
  LearnOutcome learn(const BitChunk& basis, SimTime now);
  // Maps basis to a specific free id (snapshot import).
  void insert(BasisId id, const BitChunk& basis, SimTime now);

  // Entries ordered by id.
  std::vector<std::pair<BasisId, BitChunk>> entries() const;

  // Throws std::logic_error when bijection, conservation or recency
  // bookkeeping is broken.
  void check_invariants() const;

  friend bool operator==(const Dictionary& a, const Dictionary& b);

 private:
  struct Entry {
    BasisId id;
    SimTime last_used;
  };

  void evict(std::uint32_t id);

  unsigned id_width_;
  std::unordered_map<BitChunk, Entry, BitChunkHash> forward_;
  std::vector<std::optional<BitChunk>> reverse_;
  std::deque<std::uint32_t> free_ids_;
  std::set<std::pair<SimTime, std::uint32_t>> recency_;
};

// "<id-decimal> <basis-hex>" per line, sorted by id.
void export_snapshot(std::ostream& out, const Dictionary& dict);
// Loads lines into dict with last_used = now. basis_bits is k.
void import_snapshot(std::istream& in, Dictionary& dict, std::size_t basis_bits, SimTime now = SimTime{0});

}  // namespace gdline
