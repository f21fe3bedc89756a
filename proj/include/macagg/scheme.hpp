#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "macagg/bits.hpp"
#include "macagg/mac.hpp"

namespace macagg {

namespace r2d2 {
class Table;
}

enum class SchemeKind { Traditional, Agg, Comp, SW, R2D2 };

/// Which aggregation scheme and its parameters. Fully determines per-packet
/// tag sizes and the dependency structure.
///
/// Textual form used everywhere (CLI, reports):
///   trad | agg:n | comp:n | sw:n:o | r2d2:n:g:o
struct SchemeConfig {
  SchemeKind kind = SchemeKind::Traditional;
  uint32_t n = 1;  // tags aggregated / window size
  uint32_t g = 1;  // loss bound factor (R2D2 only)
  uint32_t o = 0;  // overprovisioning percent (SW, R2D2 only)
  SecurityLevel s{};

  static SchemeConfig parse(std::string_view spec);
  std::string str() const;

  /// Throws std::invalid_argument when parameters violate the scheme's
  /// constraints (n == 0, Comp with n not dividing s.bits, ...).
  void validate() const;

  /// Per-packet tag length for the schemes with a constant tag (Comp/SW/R2D2:
  /// L bits, byte-aligned; Traditional/Agg: s.bits on carrier packets).
  uint32_t tag_bits() const;

  /// Total potential security bits per message (C). Also the FullTag length
  /// the schemes draw source bits from.
  uint32_t coverage_bits() const;

  /// Largest per-packet tag; decides whether the scheme fits a payload.
  uint32_t max_tag_bits() const;

  double avg_tag_bits() const;

  bool progressive() const { return kind == SchemeKind::SW || kind == SchemeKind::R2D2; }

  bool operator==(const SchemeConfig& o_) const {
    return kind == o_.kind && n == o_.n && g == o_.g && o == o_.o && s.bits == o_.s.bits;
  }
};

/// Tag length carried by packet i under this config.
uint32_t tag_bits_at(const SchemeConfig& cfg, uint64_t i);

/// Sum of tag bits over packets [0, count).
uint64_t total_tag_bits(const SchemeConfig& cfg, uint64_t count);

/// One source-bit reference: negative message indices are the virtual prefix
/// (empty payload, always received; sequence number is the two's-complement
/// 64-bit reinterpretation of the index).
struct SlotEntry {
  int64_t message;
  uint32_t source_bit;
};

/// Per-packet dependency structure: one slot per transmitted tag bit; slot j
/// lists the (message, source_bit) pairs whose XOR forms tag bit j.
struct DependencySpec {
  uint64_t packet_index = 0;
  std::vector<std::vector<SlotEntry>> slots;
};

/// Slots of one packet that share a dependency set, collapsed for fast
/// reachability evaluation. `bits` slots all reference `messages`.
struct DepGroup {
  std::vector<int64_t> messages;
  uint32_t bits = 0;
};

struct GroupedDeps {
  uint64_t packet_index = 0;
  std::vector<DepGroup> groups;
};

/// Message payload oracle. Index >= 0; callers provide payloads for every
/// real message the schemes may reference (stream extensions included).
using PayloadFn = std::function<std::vector<uint8_t>(uint64_t index)>;

/// Fixed-seed payload synthesis used by the harnesses: `bytes` pseudorandom
/// bytes per message, deterministic in (seed, index).
PayloadFn synthetic_payloads(uint64_t seed, size_t bytes);

/// A scheme bound to a key: the deterministic dependency/emission oracle
/// shared by sender, receiver, and adversary. For R2D2 the keyed assignment
/// table is built once at construction.
class Scheme {
 public:
  Scheme(SchemeConfig cfg, Key key);

  const SchemeConfig& config() const { return cfg_; }
  const Key& key() const { return key_; }

  uint32_t tag_bits_at(uint64_t i) const;
  DependencySpec dependency_spec(uint64_t i) const;

  /// Grouped view; reuses the caller's buffers, no allocation in steady state.
  void grouped_deps(uint64_t i, GroupedDeps& out) const;

  const r2d2::Table* table() const { return table_.get(); }

 private:
  SchemeConfig cfg_;
  Key key_;
  std::shared_ptr<const r2d2::Table> table_;
};

struct TagEmission {
  uint64_t packet_index = 0;
  BitVec tag_bits;
};

/// Sender-side tag stream with a FullTag cache (each message's tag is
/// computed once no matter how many packets reference it).
class Sender {
 public:
  Sender(const Scheme& scheme, PayloadFn payloads);

  TagEmission emit(uint64_t i) const;

  /// FullTag of a (possibly virtual) message at the scheme's coverage length.
  const FullTag& full_tag(int64_t message) const;

 private:
  const Scheme& scheme_;
  PayloadFn payloads_;
  mutable std::unordered_map<int64_t, FullTag> cache_;
};

/// One-shot emission matching Sender::emit; convenience for tests and tools.
TagEmission emit_tag(const Scheme& scheme, const PayloadFn& payloads, uint64_t i);

/// Pure helper matching Scheme::dependency_spec for non-R2D2 configs (R2D2
/// delegates to the keyed table, so it needs a Scheme instance).
DependencySpec dependency_spec(const SchemeConfig& cfg, const Key& key, uint64_t i);

}  // namespace macagg
