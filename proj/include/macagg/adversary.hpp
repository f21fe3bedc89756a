#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "macagg/channel.hpp"
#include "macagg/parallel.hpp"
#include "macagg/scheme.hpp"

namespace macagg {

/// A selective-jamming plan: packets to drop within a budgeted fraction of
/// the trace.
struct JamPlan {
  std::vector<uint64_t> jam_set;
  double budget = 0.0;
  std::string strategy;
};

/// How much the attacker knows about R2D2's keyed dependencies. Irrelevant
/// for the other schemes, whose structure is public.
enum class JamKnowledge { KnownDeps, AverageCase };

/// Scheme-specific closed-form attack: Traditional degrades linearly under
/// any choice, Agg loses whole blocks per jammed tag carrier, Comp loses two
/// adjacent blocks per jammed packet, SW falls to the smallest period that
/// starves every message below its required covering tags, and R2D2 (secret
/// dependencies) gets uniform periodic jamming.
JamPlan analytic_jam(const SchemeConfig& cfg, size_t trace_len, double budget);

/// Greedy attack: repeatedly jam the packet with the largest marginal damage
/// to the authenticated set, evaluated through the receiver in
/// dependency-only mode (ties break to the lowest index). For
/// JamKnowledge::AverageCase the damage is averaged over sampled keys.
/// Returns the stronger of the greedy plan and the analytic plan under the
/// same metric, so it never does worse than the closed form.
JamPlan greedy_jam(const Scheme& scheme, JamKnowledge knowledge,
                   const LossTrace& base, double budget,
                   Exec exec = Exec::Parallel);

/// Exhaustive optimum over all jam sets of exactly `packets` packets.
/// Test oracle; cost grows as C(N, packets).
JamPlan brute_force_jam(const Scheme& scheme, const LossTrace& base, uint32_t packets);

LossTrace apply_jam(const LossTrace& base, const JamPlan& plan);

struct ResiliencePoint {
  double budget = 0.0;
  double overall_loss = 0.0;  // jammed and naturally lost packets, as one set
  double goodput = 0.0;
};

/// Goodput under increasing attack budgets. `strategy` is "analytic",
/// "greedy", or "greedy-avg".
std::vector<ResiliencePoint> resilience_curve(const Scheme& scheme,
                                              PacketLayout layout,
                                              const LossTrace& base,
                                              const std::vector<double>& budgets,
                                              const std::string& strategy = "analytic",
                                              Exec exec = Exec::Parallel);

}  // namespace macagg
