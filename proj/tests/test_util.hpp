#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "macagg/channel.hpp"

namespace macagg::test {

inline std::vector<uint8_t> from_hex(std::string_view hex) {
  auto nib = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::vector<uint8_t> out;
  for (size_t i = 0; i + 1 < hex.size(); i += 2)
    out.push_back(uint8_t(nib(hex[i]) << 4 | nib(hex[i + 1])));
  return out;
}

inline std::string to_hex(const std::vector<uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (uint8_t b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xF]);
  }
  return s;
}

template <typename Arr>
inline std::string to_hex_arr(const Arr& bytes) {
  return to_hex(std::vector<uint8_t>(bytes.begin(), bytes.end()));
}

inline std::vector<uint8_t> bytes_of(std::string_view s) {
  return std::vector<uint8_t>(s.begin(), s.end());
}

// "1101" -> received, received, lost, received
inline LossTrace trace_of(std::string_view flags) {
  LossTrace t;
  t.source = "literal";
  for (char c : flags) t.flags.push_back(c == '1' ? 1 : 0);
  return t;
}

inline LossTrace lossless(size_t n) {
  LossTrace t;
  t.source = "lossless";
  t.flags.assign(n, 1);
  return t;
}

// Chi-square upper critical values at significance 0.01, indexed by degrees
// of freedom (0 unused).
inline double chi2_crit_99(size_t df) {
  static const double table[] = {
      0,      6.635,  9.210,  11.345, 13.277, 15.086, 16.812, 18.475, 20.090,
      21.666, 23.209, 24.725, 26.217, 27.688, 29.141, 30.578, 32.000, 33.409,
      34.805, 36.191, 37.566, 38.932, 40.289, 41.638, 42.980, 44.314, 45.642,
      46.963, 48.278, 49.588, 50.892};
  if (df < sizeof(table) / sizeof(table[0])) return table[df];
  // Wilson-Hilferty approximation for larger df.
  double z = 2.326347874;  // Phi^-1(0.99)
  double h = 2.0 / (9.0 * double(df));
  double x = 1.0 - h + z * std::sqrt(h);
  return double(df) * x * x * x;
}

}  // namespace macagg::test
