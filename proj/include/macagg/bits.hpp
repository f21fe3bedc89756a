#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace macagg {

// Ordered bit sequence, MSB-first within each byte, so the first k bits of a
// digest are its first ceil(k/8) bytes (with a masked tail).
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(size_t nbits) : bytes_((nbits + 7) / 8, 0), nbits_(nbits) {}

  static BitVec from_bytes(std::span<const uint8_t> bytes, size_t nbits) {
    if (nbits > bytes.size() * 8)
      throw std::invalid_argument("BitVec: nbits exceeds provided bytes");
    BitVec v(nbits);
    std::copy(bytes.begin(), bytes.begin() + (nbits + 7) / 8, v.bytes_.begin());
    v.mask_tail();
    return v;
  }

  size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  bool get(size_t i) const {
    check(i);
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
  }

  void set(size_t i, bool v) {
    check(i);
    uint8_t mask = uint8_t(1u << (7 - (i & 7)));
    if (v)
      bytes_[i >> 3] |= mask;
    else
      bytes_[i >> 3] &= uint8_t(~mask);
  }

  void flip(size_t i) { set(i, !get(i)); }

  void append(bool v) {
    if (nbits_ % 8 == 0) bytes_.push_back(0);
    ++nbits_;
    set(nbits_ - 1, v);
  }

  // First `nbits` bits.
  BitVec prefix(size_t nbits) const {
    if (nbits > nbits_) throw std::invalid_argument("BitVec: prefix longer than value");
    BitVec v(nbits);
    std::copy(bytes_.begin(), bytes_.begin() + (nbits + 7) / 8, v.bytes_.begin());
    v.mask_tail();
    return v;
  }

  bool operator==(const BitVec& o) const {
    return nbits_ == o.nbits_ && bytes_ == o.bytes_;
  }
  bool operator!=(const BitVec& o) const { return !(*this == o); }

  const std::vector<uint8_t>& bytes() const { return bytes_; }

  std::string to_string01() const {
    std::string s;
    s.reserve(nbits_);
    for (size_t i = 0; i < nbits_; ++i) s.push_back(get(i) ? '1' : '0');
    return s;
  }

  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bytes_.size() * 2);
    for (uint8_t b : bytes_) {
      s.push_back(digits[b >> 4]);
      s.push_back(digits[b & 0xF]);
    }
    return s;
  }

 private:
  void check(size_t i) const {
    if (i >= nbits_) throw std::out_of_range("BitVec: index out of range");
  }
  void mask_tail() {
    if (nbits_ % 8 != 0 && !bytes_.empty())
      bytes_.back() &= uint8_t(0xFF << (8 - nbits_ % 8));
  }

  std::vector<uint8_t> bytes_;
  size_t nbits_ = 0;
};

}  // namespace macagg
