#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "macagg/bits.hpp"

namespace macagg {

/// 32-byte pre-shared secret key.
struct Key {
  std::array<uint8_t, 32> bytes{};

  /// Parses exactly 64 hex characters. Throws std::invalid_argument otherwise.
  static Key from_hex(std::string_view hex);

  /// Deterministic key expansion from a 64-bit seed (tests and tooling).
  static Key from_seed(uint64_t seed);

  static Key zero() { return Key{}; }

  std::string hex() const;
  bool operator==(const Key& o) const { return bytes == o.bytes; }
};

/// Target security level in bits (default 128).
struct SecurityLevel {
  uint32_t bits = 128;
};

/// Keyed tag over one message, truncatable and extensible to any bit length.
struct FullTag {
  BitVec bits;
  uint64_t origin_seq = 0;
};

/// Raw HMAC-SHA256 (arbitrary key length). Building block and test anchor.
std::array<uint8_t, 32> hmac_sha256(std::span<const uint8_t> key,
                                    std::span<const uint8_t> data);

/// Tag generation. The MAC input is the 8-byte little-endian sequence number
/// (doubling as the replay nonce) followed by the payload. The first 256 bits
/// are HMAC-SHA256(key, seq||payload); bits beyond that come from
/// HMAC-SHA256(key, seq||payload||ctr) for ctr = 1, 2, ... (4-byte LE),
/// concatenated and truncated to required_bits.
FullTag compute_full_tag(const Key& key, uint64_t seq,
                         std::span<const uint8_t> payload,
                         uint32_t required_bits);

/// First `bits` bits of the tag. Throws std::invalid_argument if bits exceeds
/// the tag length.
BitVec truncate_tag(const FullTag& tag, uint32_t bits);

}  // namespace macagg
