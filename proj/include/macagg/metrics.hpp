#pragma once

#include <cstdint>
#include <vector>

#include "macagg/channel.hpp"
#include "macagg/receiver.hpp"
#include "macagg/scheme.hpp"

namespace macagg {

struct DelayCdfPoint {
  uint64_t delay = 0;
  double cumulative = 0.0;
};

struct MemoryModel {
  uint64_t sender_bytes = 0;
  uint64_t receiver_bytes = 0;
};

struct MetricsReport {
  double goodput = 0.0;       // authenticated payload / transmitted bytes
  double goodput_norm = 0.0;  // authenticated payload / received payload (tag-free baseline)
  uint64_t authenticated_count = 0;
  uint64_t received_count = 0;
  uint64_t total_count = 0;
  double never_fraction = 0.0;  // messages that never authenticate / total
  bool delay_defined = false;   // false when nothing authenticated
  double mean_delay = 0.0;
  double p95_delay = 0.0;
  std::vector<DelayCdfPoint> delay_cdf;
  MemoryModel memory;
};

/// Authenticated payload bytes over transmitted bytes. The denominator counts
/// every transmitted packet (lost ones included) at header+payload+tag bits,
/// plus the flush extension. Exact in bits.
double goodput(const std::vector<AuthOutcome>& outcomes, PacketLayout layout,
               const SchemeConfig& cfg, uint64_t flushed_extra_bits);

/// Authenticated payload as a fraction of the payload that arrived, i.e. of
/// what a tag-free sender would have delivered on the same trace. Zero when
/// nothing was received.
double goodput_norm(const std::vector<AuthOutcome>& outcomes, PacketLayout layout);

/// Empirical CDF over the delays of authenticated messages; empty when none.
std::vector<DelayCdfPoint> delay_cdf(const std::vector<AuthOutcome>& outcomes);

/// Analytic buffering cost of tag aggregation state (not totals of any
/// concrete implementation). Receiver-side R2D2 adds one 2-byte credit
/// counter per in-window message.
MemoryModel memory_model(const SchemeConfig& cfg);

/// Full report for one run. `flush_header_packets`/`flush_tag_bits` come from
/// the TraceResult of the same run.
MetricsReport compute_metrics(const SchemeConfig& cfg, PacketLayout layout,
                              const TraceResult& result);

}  // namespace macagg
