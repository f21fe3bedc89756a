#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "macagg/mac.hpp"
#include "macagg/scheme.hpp"

namespace macagg::r2d2 {

/// Parameters of the randomized balanced dependency construction, with the
/// derived quantities used throughout: per-packet tag length L, coverage
/// C = n*L, and the dependency window W.
struct Params {
  uint32_t n = 1;
  uint32_t g = 1;
  uint32_t o = 0;
  SecurityLevel s{};
  uint32_t retry_budget = 1024;

  static Params from(const SchemeConfig& cfg);

  uint32_t tag_bits() const;       // L
  uint32_t coverage_bits() const;  // C = n * L
  uint32_t window() const;         // W
};

/// Window length. 2n when that already leaves room to keep every
/// single-packet impact within g*L; otherwise the smallest byte-aligned
/// window satisfying the counting bound (W-1)*g >= n*(n-1)/2. Every message's
/// coverage must spread over W packets with no loss position voiding more
/// than g*L bits, and each of its C = n*L entries is voided by exactly n-1
/// loss positions, so smaller windows are infeasible for any assignment.
uint32_t window_length(uint32_t n, uint32_t g);

struct ImpactReport {
  uint32_t bound = 0;       // g * L
  uint32_t max_impact = 0;  // worst observed, in bits
  std::vector<std::pair<int64_t, int64_t>> violating_pairs;  // (message, lost packet)
  bool passed() const { return violating_pairs.empty(); }
};

/// Keyed, balanced per-bit dependency assignment.
///
/// Layout: for packet i, slot j in [0,L), position k in [0,n), the entry is
/// (message = i - D[j][k], source_bit = k*L + j) where D[j] is the keyed
/// offset set of tag bit j: n distinct offsets in [0, W) with D[j][...]
/// containing 0 (each tag covers its own message, giving L bits of immediate
/// security on reception). Equivalently, message m's coverage bit (k,j) is
/// placed by the translation permutation x -> x + D[j][k] (mod W) at the
/// unique packet in [m, m+W) congruent to m + D[j][k].
///
/// The offsets are drawn by a salted keyed search that levels the pairwise
/// difference histogram of every slot column below g*L; the accepted salt is
/// part of the deterministic output, so sender and receiver converge.
class Table {
 public:
  /// Builds the assignment. Throws InfeasibleError when no salt within the
  /// retry budget satisfies the bound; std::invalid_argument if horizon < W.
  Table(const Params& params, const Key& key, uint64_t horizon);

  /// Test fixture: adopt explicit offset sets (validation is the caller's
  /// problem). Offsets: one vector of n offsets per slot column.
  static Table from_offsets(const Params& params,
                            std::vector<std::vector<uint32_t>> offsets,
                            uint64_t horizon);

  const Params& params() const { return params_; }
  uint32_t salt() const { return salt_; }
  uint64_t horizon() const { return horizon_; }

  /// Offset D[j][k] of slot column j, position k.
  uint32_t offset(uint32_t slot, uint32_t position) const {
    return offsets_[slot][position];
  }

  /// Projection of the table to packet i in the shared DependencySpec shape.
  DependencySpec row(uint64_t i) const;

  void grouped_row(uint64_t i, GroupedDeps& out) const;

 private:
  Table(const Params& params, std::vector<std::vector<uint32_t>> offsets,
        uint64_t horizon);

  Params params_;
  uint32_t salt_ = 0;
  uint64_t horizon_ = 0;
  std::vector<std::vector<uint32_t>> offsets_;  // [L][n]
};

Table build_assignment(const Params& params, const Key& key, uint64_t horizon);

/// Exhaustive single-packet impact enumeration over the materialized rows.
/// impact(m, l) counts m's coverage entries rendered unverifiable by the loss
/// of packet l alone: entries carried by packet l plus entries in slots that
/// also reference message l. Passes iff the max over all in-window pairs is
/// at most g*L. Requires table horizon >= 2W.
ImpactReport validate_bounds(const Table& table);

/// Coverage exactness check: every message m in [0, horizon - W] appears in
/// exactly C entries, all in packets [m, m+W), using C distinct source bits.
/// Returns false (and fills `why`) on the first violation.
bool verify_coverage(const Table& table, std::string* why = nullptr);

DependencySpec dependency_spec(const Table& table, uint64_t i);

}  // namespace macagg::r2d2
