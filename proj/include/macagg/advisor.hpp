#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "macagg/channel.hpp"
#include "macagg/metrics.hpp"
#include "macagg/parallel.hpp"
#include "macagg/scheme.hpp"

namespace macagg {

struct ComparisonRow {
  SchemeConfig scheme;
  bool applicable = true;  // false when the largest per-packet tag cannot fit
  MetricsReport metrics;
};

/// The grid every comparison covers by default: trad, agg/comp with
/// n in {2,4,8,16}, and sw/r2d2 with the same n values, o in {100,200}, g=1.
std::vector<SchemeConfig> default_grid();

/// One receiver+metrics run per configuration on a shared trace. Rows keep
/// the grid order; schemes whose mandatory tag does not leave room in the
/// payload are marked inapplicable instead of failing.
std::vector<ComparisonRow> compare_all(const LossTrace& trace, PacketLayout layout,
                                       const Key& key,
                                       const std::vector<SchemeConfig>& schemes,
                                       bool flush = false,
                                       Exec exec = Exec::Parallel);

struct SweepCell {
  uint32_t payload_bytes = 0;
  SchemeConfig scheme;
  bool applicable = true;
  double per = 0.0;  // error rate of a payload-sized packet at this BER
  double goodput = 0.0;
};

struct SweepBest {
  uint32_t payload_bytes = 0;
  SchemeConfig scheme;
  double goodput = 0.0;
};

struct SweepResult {
  double ber = 0.0;
  std::vector<SweepCell> grid;
  std::vector<SweepBest> best_per_scheme;
  SweepBest best;
};

/// Goodput over a payload-length grid at a fixed bit error rate. Loss is
/// drawn per packet from its own total size (so tag-carrying packets fail
/// more often), deterministically in (seed, scheme, payload).
SweepResult payload_sweep(double ber, uint32_t header_bits, uint32_t payload_min,
                          uint32_t payload_max,
                          const std::vector<SchemeConfig>& schemes,
                          size_t trace_len, uint64_t seed,
                          Exec exec = Exec::Parallel);

enum class Burstiness { Isolated, ShortBursts, LongBursts };

struct AdvisorInput {
  double per = 0.0;
  Burstiness burstiness = Burstiness::ShortBursts;
  uint32_t payload_bytes = 48;
  bool needs_constant_delay = false;
  bool needs_dos_resilience = false;
  bool processing_constrained = false;
  bool fixed_message_size = false;
};

struct Recommendation {
  SchemeConfig scheme;
  std::string rationale;
};

struct Advice {
  std::vector<Recommendation> ranked;
  std::string confirmation_note;  // always points at `compare` on a real trace
};

/// Rule-based ranking from coarse channel characteristics and feature
/// demands. Total and deterministic; thresholds are indicative, so the
/// output always defers to a trace-driven comparison.
Advice recommend(const AdvisorInput& input);

}  // namespace macagg
