#include "doctest.h"
#include "macagg/mac.hpp"
#include "test_util.hpp"

using namespace macagg;
using namespace macagg::test;

TEST_SUITE_BEGIN("mac");

// RFC 4231 vectors anchor the raw primitive before any framing is layered on.
TEST_CASE("hmac-sha256 matches RFC 4231 vectors") {
  struct V {
    std::string key_hex, data;
    std::string expect;
  };
  const std::string key20(20, '\x0b');
  const std::string key131(131, '\xaa');
  const V vectors[] = {
      {to_hex(bytes_of(key20)), "Hi There",
       "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7"},
      {to_hex(bytes_of("Jefe")), "what do ya want for nothing?",
       "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843"},
      {to_hex(bytes_of(key131)),
       "Test Using Larger Than Block-Size Key - Hash Key First",
       "60e431591ee0b67f0d8a26aacbf5b77f8e0bc6213728c5140546040f0ee37f54"},
      {to_hex(bytes_of(key131)),
       "This is a test using a larger than block-size key and a larger than "
       "block-size data. The key needs to be hashed before being used by the "
       "HMAC algorithm.",
       "9b09ffa71b942fcb27635fbcd5b0e944bfdc63644f0713938a7f51535c3a35e2"},
  };
  for (const V& v : vectors) {
    auto key = from_hex(v.key_hex);
    auto data = bytes_of(v.data);
    CHECK(to_hex_arr(hmac_sha256(key, data)) == v.expect);
  }
}

TEST_CASE("full tag is HMAC over seq||payload framing") {
  Key key = Key::from_seed(42);
  const uint64_t seq = 0x0123456789abcdefULL;
  auto payload = bytes_of("sample payload");

  // Independent composition of the framing through the raw primitive.
  std::vector<uint8_t> msg;
  for (int i = 0; i < 8; ++i) msg.push_back(uint8_t(seq >> (8 * i)));
  msg.insert(msg.end(), payload.begin(), payload.end());
  auto expect = hmac_sha256(key.bytes, msg);

  FullTag tag = compute_full_tag(key, seq, payload, 256);
  CHECK(tag.bits.to_hex() == to_hex_arr(expect));
  CHECK(tag.origin_seq == seq);
}

TEST_CASE("shorter requests are strict prefixes") {
  Key key = Key::from_seed(7);
  auto payload = bytes_of("abc");
  FullTag t128 = compute_full_tag(key, 5, payload, 128);
  FullTag t256 = compute_full_tag(key, 5, payload, 256);
  FullTag t384 = compute_full_tag(key, 5, payload, 384);
  CHECK(t128.bits == t256.bits.prefix(128));
  CHECK(t256.bits == t384.bits.prefix(256));
  CHECK(t128.bits.size() == 128);
}

TEST_CASE("extension beyond 256 bits uses the counter-suffixed digest") {
  Key key = Key::from_seed(99);
  const uint64_t seq = 17;
  auto payload = bytes_of("extension check");
  FullTag t384 = compute_full_tag(key, seq, payload, 384);

  std::vector<uint8_t> msg;
  for (int i = 0; i < 8; ++i) msg.push_back(uint8_t(seq >> (8 * i)));
  msg.insert(msg.end(), payload.begin(), payload.end());
  msg.push_back(1);  // ctr = 1, little-endian u32
  msg.push_back(0);
  msg.push_back(0);
  msg.push_back(0);
  auto ctr1 = hmac_sha256(key.bytes, msg);

  for (size_t b = 0; b < 128; ++b) {
    bool expect = (ctr1[b / 8] >> (7 - b % 8)) & 1;
    CHECK(t384.bits.get(256 + b) == expect);
  }
}

TEST_CASE("determinism and zero-bit rejection") {
  Key key = Key::from_seed(1);
  auto payload = bytes_of("x");
  CHECK(compute_full_tag(key, 3, payload, 200).bits ==
        compute_full_tag(key, 3, payload, 200).bits);
  CHECK_THROWS_AS(compute_full_tag(key, 3, payload, 0), std::invalid_argument);
}

TEST_CASE("truncation") {
  Key key = Key::from_seed(2);
  FullTag tag = compute_full_tag(key, 11, bytes_of("msg"), 256);
  CHECK(truncate_tag(tag, 128) == tag.bits.prefix(128));
  CHECK(truncate_tag(tag, 0).size() == 0);
  CHECK_THROWS_AS(truncate_tag(tag, 257), std::invalid_argument);
}

TEST_CASE("flipping any key bit changes the truncated tag") {
  Key key = Key::from_seed(1234);
  auto payload = bytes_of("key sensitivity");
  BitVec base = truncate_tag(compute_full_tag(key, 1, payload, 256), 128);
  int differing = 0;
  for (int trial = 0; trial < 128; ++trial) {
    Key flipped = key;
    int bit = (trial * 2) % 256;
    flipped.bytes[size_t(bit / 8)] ^= uint8_t(1u << (bit % 8));
    BitVec t = truncate_tag(compute_full_tag(flipped, 1, payload, 256), 128);
    if (t != base) ++differing;
  }
  CHECK(differing >= 120);
}

TEST_CASE("key hex parsing") {
  std::string hex(64, 'a');
  CHECK(Key::from_hex(hex).hex() == hex);
  CHECK_THROWS_AS(Key::from_hex("abcd"), std::invalid_argument);
  hex[10] = 'g';
  CHECK_THROWS_AS(Key::from_hex(hex), std::invalid_argument);
}

TEST_SUITE_END();
