#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace macagg {

/// Ordered received/lost flags, one per transmitted packet.
struct LossTrace {
  std::vector<uint8_t> flags;  // 1 = received, 0 = lost
  std::string source;

  size_t size() const { return flags.size(); }
  bool received(size_t i) const { return flags[i] != 0; }
  bool empty() const { return flags.empty(); }
};

/// Header/payload sizes in bits. Bit-granular on purpose: some links use
/// sub-byte headers (e.g. a 31-bit header), and byte rounding would skew the
/// goodput accounting.
struct PacketLayout {
  uint32_t header_bits = 0;
  uint32_t payload_bits = 0;
};

struct GilbertElliottParams {
  double p_good_to_bad = 0.0;
  double p_bad_to_good = 1.0;
  double loss_good = 0.0;
  double loss_bad = 1.0;
};

LossTrace gen_bernoulli(double p_loss, size_t len, uint64_t seed);

/// Independent loss per packet with an individual probability (packet sizes
/// differ, so bit-error-driven loss does too).
LossTrace gen_bernoulli_per_packet(const std::vector<double>& p_loss, uint64_t seed);

/// Two-state Markov loss process; starts in the good state.
LossTrace gen_gilbert_elliott(const GilbertElliottParams& params, size_t len,
                              uint64_t seed);

/// Packet error probability of a packet of `total_bits` under independent
/// bit errors: 1 - (1 - ber)^total_bits.
double per_from_ber(double ber, uint64_t total_bits);

/// Trace text: '1' = received, '0' = lost; whitespace ignored; '#' starts a
/// comment until end of line. Anything else is a ParseError with position.
LossTrace parse_trace(std::string_view text);

/// Canonical form: rows of 64 flags, newline-terminated.
std::string write_trace(const LossTrace& trace);

struct TraceStats {
  size_t total = 0;
  size_t lost = 0;
  double per = 0.0;
  double mean_burst = 0.0;                  // mean length of maximal loss runs
  std::map<size_t, size_t> burst_histogram;  // run length -> count
};

TraceStats trace_stats(const LossTrace& trace);

/// Bundled deployment profile: layout plus the loss behaviour observed in a
/// published measurement campaign, with Gilbert-Elliott parameters tuned to
/// the reported burstiness for generating stand-in traces.
struct Scenario {
  std::string name;
  PacketLayout layout;
  double per = 0.0;
  double mean_burst = 1.0;
  GilbertElliottParams ge;
  std::string description;
};

const std::vector<Scenario>& scenario_presets();

/// Throws std::invalid_argument for unknown names.
const Scenario& load_scenario(std::string_view name);

}  // namespace macagg
