#include "macagg/mac.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

#include "macagg/rng.hpp"

namespace macagg {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void put_le64(uint8_t* out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out[i] = uint8_t(v >> (8 * i));
}

void put_le32(uint8_t* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out[i] = uint8_t(v >> (8 * i));
}

}  // namespace

Key Key::from_hex(std::string_view hex) {
  if (hex.size() != 64)
    throw std::invalid_argument("key must be exactly 64 hex characters (32 bytes)");
  Key k;
  for (size_t i = 0; i < 32; ++i) {
    int hi = hex_digit(hex[2 * i]);
    int lo = hex_digit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0)
      throw std::invalid_argument("key contains a non-hex character");
    k.bytes[i] = uint8_t(hi << 4 | lo);
  }
  return k;
}

Key Key::from_seed(uint64_t seed) {
  Key k;
  uint64_t s = seed;
  for (size_t i = 0; i < 4; ++i) {
    s = splitmix64(s);
    put_le64(k.bytes.data() + 8 * i, s);
  }
  return k;
}

std::string Key::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(64);
  for (uint8_t b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xF]);
  }
  return s;
}

std::array<uint8_t, 32> hmac_sha256(std::span<const uint8_t> key,
                                    std::span<const uint8_t> data) {
  std::array<uint8_t, 32> out{};
  size_t out_len = out.size();
  // EVP_Q_mac handles the empty-data case with a null pointer poorly on some
  // builds; hand it a valid pointer either way.
  static const uint8_t empty = 0;
  const uint8_t* d = data.empty() ? &empty : data.data();
  if (!EVP_Q_mac(nullptr, "HMAC", nullptr, "SHA256", nullptr, key.data(),
                 key.size(), d, data.size(), out.data(), out.size(), &out_len) ||
      out_len != 32)
    throw std::runtime_error("HMAC-SHA256 computation failed");
  return out;
}

FullTag compute_full_tag(const Key& key, uint64_t seq,
                         std::span<const uint8_t> payload,
                         uint32_t required_bits) {
  if (required_bits == 0)
    throw std::invalid_argument("compute_full_tag: required_bits must be >= 1");

  std::vector<uint8_t> msg(8 + payload.size() + 4);
  put_le64(msg.data(), seq);
  if (!payload.empty()) std::memcpy(msg.data() + 8, payload.data(), payload.size());
  const size_t base_len = 8 + payload.size();

  std::vector<uint8_t> digest_stream;
  digest_stream.reserve((required_bits + 255) / 256 * 32);

  auto first = hmac_sha256(std::span<const uint8_t>(key.bytes),
                           std::span<const uint8_t>(msg.data(), base_len));
  digest_stream.insert(digest_stream.end(), first.begin(), first.end());

  for (uint32_t ctr = 1; digest_stream.size() * 8 < required_bits; ++ctr) {
    put_le32(msg.data() + base_len, ctr);
    auto d = hmac_sha256(std::span<const uint8_t>(key.bytes),
                         std::span<const uint8_t>(msg.data(), base_len + 4));
    digest_stream.insert(digest_stream.end(), d.begin(), d.end());
  }

  return FullTag{BitVec::from_bytes(digest_stream, required_bits), seq};
}

BitVec truncate_tag(const FullTag& tag, uint32_t bits) {
  if (bits > tag.bits.size())
    throw std::invalid_argument("truncate_tag: requested more bits than the tag holds");
  return tag.bits.prefix(bits);
}

}  // namespace macagg
