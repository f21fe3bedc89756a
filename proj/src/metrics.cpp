#include "macagg/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "macagg/r2d2.hpp"

namespace macagg {

double goodput(const std::vector<AuthOutcome>& outcomes, PacketLayout layout,
               const SchemeConfig& cfg, uint64_t flushed_extra_bits) {
  const uint64_t n = outcomes.size();
  uint64_t auth = 0;
  for (const AuthOutcome& o : outcomes) auth += o.auth_at ? 1 : 0;
  uint64_t denom_bits = n * uint64_t(layout.header_bits + layout.payload_bits) +
                        total_tag_bits(cfg, n) + flushed_extra_bits;
  if (denom_bits == 0) return 0.0;
  return double(auth * uint64_t(layout.payload_bits)) / double(denom_bits);
}

double goodput_norm(const std::vector<AuthOutcome>& outcomes, PacketLayout layout) {
  (void)layout;  // payload bits cancel between numerator and denominator
  uint64_t auth = 0, recv = 0;
  for (const AuthOutcome& o : outcomes) {
    auth += o.auth_at ? 1 : 0;
    recv += o.received ? 1 : 0;
  }
  if (recv == 0) return 0.0;
  return double(auth) / double(recv);
}

std::vector<DelayCdfPoint> delay_cdf(const std::vector<AuthOutcome>& outcomes) {
  std::vector<uint64_t> delays;
  for (const AuthOutcome& o : outcomes)
    if (o.delay) delays.push_back(*o.delay);
  std::sort(delays.begin(), delays.end());
  std::vector<DelayCdfPoint> cdf;
  for (size_t i = 0; i < delays.size();) {
    size_t j = i;
    while (j < delays.size() && delays[j] == delays[i]) ++j;
    cdf.push_back({delays[i], double(j) / double(delays.size())});
    i = j;
  }
  return cdf;
}

MemoryModel memory_model(const SchemeConfig& cfg) {
  MemoryModel m;
  const uint64_t sbits = cfg.s.bits;
  switch (cfg.kind) {
    case SchemeKind::Traditional:
      break;  // verify on arrival, nothing buffered
    case SchemeKind::Agg:
    case SchemeKind::Comp:
      m.sender_bytes = sbits / 8;    // one running aggregate
      m.receiver_bytes = sbits / 8;  // one open block
      break;
    case SchemeKind::SW: {
      uint64_t bits = uint64_t(cfg.n) * cfg.tag_bits();  // n partial chunks
      m.sender_bytes = bits / 8;
      m.receiver_bytes = bits / 8;
      break;
    }
    case SchemeKind::R2D2: {
      uint64_t w = r2d2::window_length(cfg.n, cfg.g);
      uint64_t bits = w * uint64_t(cfg.tag_bits());  // open tag accumulators
      m.sender_bytes = bits / 8;
      m.receiver_bytes = bits / 8 + w * 2;  // plus per-message credit counters
      break;
    }
  }
  return m;
}

MetricsReport compute_metrics(const SchemeConfig& cfg, PacketLayout layout,
                              const TraceResult& result) {
  MetricsReport r;
  const auto& out = result.outcomes;
  r.total_count = out.size();
  for (const AuthOutcome& o : out) {
    r.received_count += o.received ? 1 : 0;
    r.authenticated_count += o.auth_at ? 1 : 0;
  }
  uint64_t flushed_bits =
      result.flush_tag_bits + uint64_t(result.flush_packets) * layout.header_bits;
  r.goodput = goodput(out, layout, cfg, flushed_bits);
  r.goodput_norm = goodput_norm(out, layout);
  r.never_fraction =
      r.total_count ? double(r.total_count - r.authenticated_count) / double(r.total_count)
                    : 0.0;
  r.delay_cdf = delay_cdf(out);
  r.delay_defined = !r.delay_cdf.empty();
  if (r.delay_defined) {
    std::vector<uint64_t> delays;
    for (const AuthOutcome& o : out)
      if (o.delay) delays.push_back(*o.delay);
    std::sort(delays.begin(), delays.end());
    double sum = 0;
    for (uint64_t d : delays) sum += double(d);
    r.mean_delay = sum / double(delays.size());
    size_t idx = size_t(std::ceil(0.95 * double(delays.size())));
    r.p95_delay = double(delays[std::min(delays.size() - 1, idx == 0 ? 0 : idx - 1)]);
  }
  r.memory = memory_model(cfg);
  return r;
}

}  // namespace macagg
