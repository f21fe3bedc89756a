#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "macagg/channel.hpp"
#include "macagg/scheme.hpp"

namespace macagg {

enum class VerifyMode { DependencyOnly, FullCrypto };

/// Per-message verification result. `auth_at` is the packet index whose
/// processing pushed the credited security bits to the target level; unset
/// means the message never authenticates (NEVER).
struct AuthOutcome {
  uint64_t message_index = 0;
  bool received = false;
  uint32_t credited_bits = 0;
  std::optional<uint64_t> auth_at;
  std::optional<uint64_t> delay;  // auth_at - message_index, in packet periods
};

struct IntegrityFailure {
  uint64_t packet_index = 0;
  uint32_t slot = 0;
};

struct TraceResult {
  std::vector<AuthOutcome> outcomes;  // one per real message
  std::vector<IntegrityFailure> integrity_failures;
  uint32_t flush_packets = 0;
  uint64_t flush_tag_bits = 0;
  // Per-message (packet_index, credited_bits) steps; filled when requested.
  std::vector<std::vector<std::pair<uint64_t, uint32_t>>> timelines;
};

struct TraceOptions {
  VerifyMode mode = VerifyMode::DependencyOnly;
  /// Append tag-only packets so trailing messages can authenticate. The
  /// extension length is scheme-dependent (up to one dependency window);
  /// flush packets count as transmitted and are assumed received.
  bool flush = false;
  /// Seed for the synthesized payloads in full-crypto mode.
  uint64_t payload_seed = 1;
  size_t payload_bytes = 48;
  bool record_timeline = false;
  /// Full-crypto only: mutate emitted tag bits in flight (tamper tests).
  std::function<void(uint64_t packet, BitVec&)> tamper;
};

/// Number of tag-only packets appended after `messages` packets so that every
/// trailing message can still authenticate on a clean channel.
uint32_t flush_packet_count(const SchemeConfig& cfg, uint64_t messages);

/// Consumes a loss trace and determines, per message, when (if ever) it
/// authenticates. A slot of packet i is verifiable iff packet i was received
/// and every real dependency of the slot was received; each verifiable slot
/// credits one bit to every message it references. In full-crypto mode the
/// tags are actually computed, transmitted, and recomputed bit-for-bit; both
/// modes return identical outcomes on honest traffic.
TraceResult process_trace(const Scheme& scheme, const LossTrace& trace,
                          const TraceOptions& opts = {});

std::set<uint64_t> authenticated_set(const std::vector<AuthOutcome>& outcomes);

/// Monotone per-message credit curves. Only meaningful for the progressive
/// schemes (SW, R2D2); throws std::invalid_argument otherwise.
std::vector<std::vector<std::pair<uint64_t, uint32_t>>> security_timeline(
    const Scheme& scheme, const LossTrace& trace, bool flush = false);

}  // namespace macagg
