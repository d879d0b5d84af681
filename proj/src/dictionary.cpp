// SPDX-License-Identifier: Apache-2.0
#include "gdline/dictionary.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gdline/error.hpp"

namespace gdline {

Dictionary::Dictionary(unsigned id_width) : id_width_(id_width) {
  if (id_width < 1 || id_width > kMaxIdWidth) {
    throw Error(Errc::InvalidSpec, "id width must be in 1.." + std::to_string(kMaxIdWidth));
  }
  const std::size_t cap = std::size_t{1} << id_width;
  reverse_.resize(cap);
  for (std::size_t i = 0; i < cap; ++i) free_ids_.push_back(static_cast<std::uint32_t>(i));
  forward_.reserve(std::min<std::size_t>(cap, std::size_t{1} << 16));
}

std::optional<BasisId> Dictionary::lookup_id(const BitChunk& basis, SimTime now) {
  auto it = forward_.find(basis);
  if (it == forward_.end()) return std::nullopt;
  Entry& e = it->second;
  if (now > e.last_used) {
    recency_.erase({e.last_used, e.id.value});
    e.last_used = now;
    recency_.insert({e.last_used, e.id.value});
  }
  return e.id;
}

std::optional<BasisId> Dictionary::peek_id(const BitChunk& basis) const {
  auto it = forward_.find(basis);
  if (it == forward_.end()) return std::nullopt;
  return it->second.id;
}

std::optional<BitChunk> Dictionary::lookup_basis(BasisId id) const {
  if (const BitChunk* b = find_basis(id)) return *b;
  return std::nullopt;
}

const BitChunk* Dictionary::find_basis(BasisId id) const noexcept {
  if (id.value >= reverse_.size() || !reverse_[id.value]) return nullptr;
  return &*reverse_[id.value];
}

std::optional<SimTime> Dictionary::last_used(const BitChunk& basis) const {
  auto it = forward_.find(basis);
  if (it == forward_.end()) return std::nullopt;
  return it->second.last_used;
}

void Dictionary::evict(std::uint32_t id) {
  auto& slot = reverse_[id];
  auto it = forward_.find(*slot);
  recency_.erase({it->second.last_used, id});
  forward_.erase(it);
  slot.reset();
}

LearnOutcome Dictionary::learn(const BitChunk& basis, SimTime now) {
  if (forward_.contains(basis)) throw Error(Errc::AlreadyKnown, "basis " + basis.to_hex() + " already mapped");
  LearnOutcome out;
  std::uint32_t id;
  if (!free_ids_.empty()) {
    id = free_ids_.front();
    free_ids_.pop_front();
  } else {
    id = recency_.begin()->second;
    out.evicted_basis = *reverse_[id];
    evict(id);
  }
  out.assigned = BasisId{id};
  forward_.emplace(basis, Entry{out.assigned, now});
  reverse_[id] = basis;
  recency_.insert({now, id});
  return out;
}

void Dictionary::insert(BasisId id, const BitChunk& basis, SimTime now) {
  if (forward_.contains(basis)) throw Error(Errc::AlreadyKnown, "basis " + basis.to_hex() + " already mapped");
  if (id.value >= reverse_.size()) throw Error(Errc::InvalidSpec, "id " + std::to_string(id.value) + " out of range");
  auto it = std::find(free_ids_.begin(), free_ids_.end(), id.value);
  if (it == free_ids_.end()) throw Error(Errc::AlreadyKnown, "id " + std::to_string(id.value) + " in use");
  free_ids_.erase(it);
  forward_.emplace(basis, Entry{id, now});
  reverse_[id.value] = basis;
  recency_.insert({now, id.value});
}

std::vector<std::pair<BasisId, BitChunk>> Dictionary::entries() const {
  std::vector<std::pair<BasisId, BitChunk>> out;
  out.reserve(forward_.size());
  for (std::uint32_t id = 0; id < reverse_.size(); ++id) {
    if (reverse_[id]) out.emplace_back(BasisId{id}, *reverse_[id]);
  }
  return out;
}

void Dictionary::check_invariants() const {
  if (forward_.size() + free_ids_.size() != capacity()) {
    throw std::logic_error("conservation: |forward| + |free| != capacity");
  }
  if (recency_.size() != forward_.size()) throw std::logic_error("recency index out of sync");
  std::size_t mapped = 0;
  for (std::uint32_t id = 0; id < reverse_.size(); ++id) {
    if (!reverse_[id]) continue;
    ++mapped;
    auto it = forward_.find(*reverse_[id]);
    if (it == forward_.end() || it->second.id.value != id) throw std::logic_error("reverse entry without forward twin");
    if (!recency_.contains({it->second.last_used, id})) throw std::logic_error("recency index missing entry");
  }
  if (mapped != forward_.size()) throw std::logic_error("forward entry without reverse twin");
  for (auto id : free_ids_) {
    if (reverse_[id]) throw std::logic_error("free id is mapped");
  }
}

bool operator==(const Dictionary& a, const Dictionary& b) {
  if (a.id_width_ != b.id_width_ || a.reverse_ != b.reverse_ || a.free_ids_ != b.free_ids_ ||
      a.recency_ != b.recency_) {
    return false;
  }
  return true;
}

void export_snapshot(std::ostream& out, const Dictionary& dict) {
  for (const auto& [id, basis] : dict.entries()) out << id.value << ' ' << basis.to_hex() << '\n';
}

void import_snapshot(std::istream& in, Dictionary& dict, std::size_t basis_bits, SimTime now) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::uint64_t id = 0;
    std::string hex;
    if (!(fields >> id >> hex)) {
      throw Error(Errc::InvalidSpec, "snapshot line " + std::to_string(lineno) + " is malformed");
    }
    dict.insert(BasisId{static_cast<std::uint32_t>(id)}, BitChunk::from_hex(hex, basis_bits), now);
  }
}

}  // namespace gdline
