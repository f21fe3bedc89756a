#include "macagg/r2d2.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "macagg/errors.hpp"
#include "macagg/rng.hpp"

namespace macagg::r2d2 {

namespace {

SchemeConfig as_config(const Params& p) {
  SchemeConfig cfg;
  cfg.kind = SchemeKind::R2D2;
  cfg.n = p.n;
  cfg.g = p.g;
  cfg.o = p.o;
  cfg.s = p.s;
  return cfg;
}

uint64_t derive_seed(const Params& p, const Key& key, uint32_t salt) {
  uint8_t msg[36] = {'m', 'a', 'c', 'a', 'g', 'g', '/', 'r', '2', 'd', '2',
                     '/', 'v', '1', 0,   0};
  auto put = [&](size_t at, uint32_t v) {
    for (int i = 0; i < 4; ++i) msg[at + i] = uint8_t(v >> (8 * i));
  };
  put(16, p.n);
  put(20, p.g);
  put(24, p.o);
  put(28, p.s.bits);
  put(32, salt);
  auto digest = hmac_sha256(std::span<const uint8_t>(key.bytes),
                            std::span<const uint8_t>(msg, sizeof(msg)));
  uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed |= uint64_t(digest[i]) << (8 * i);
  return seed;
}

// Searches for L offset sets (n distinct offsets in [0,W), 0 always included)
// whose pooled pairwise-difference histogram stays at or below cap = g*L in
// every bin. That histogram equals the per-pair impact profile of the final
// table, so leveling it is exactly the loss bound.
class Leveler {
 public:
  Leveler(uint32_t W, uint32_t n, uint32_t L, uint32_t cap, Rng& rng)
      : W_(W), n_(n), L_(L), cap_(cap), rng_(rng) {}

  bool run(std::vector<std::vector<uint32_t>>& out) {
    hist_.assign(W_, 0);
    overflow_ = 0;
    member_.assign(L_, std::vector<uint8_t>(W_, 0));
    cols_.assign(L_, {});

    for (uint32_t j = 0; j < L_; ++j) greedy_column(j);
    repair();

    if (overflow_ != 0) return false;
    out = cols_;
    return true;
  }

 private:
  static constexpr int64_t kOverflowPenalty = int64_t(1) << 40;

  void add_offset(uint32_t j, uint32_t v) {
    for (uint32_t o : cols_[j]) bump(dist(v, o), +1);
    cols_[j].push_back(v);
    member_[j][v] = 1;
  }

  void remove_offset(uint32_t j, uint32_t v) {
    auto& col = cols_[j];
    col.erase(std::find(col.begin(), col.end(), v));
    member_[j][v] = 0;
    for (uint32_t o : col) bump(dist(v, o), -1);
  }

  void bump(uint32_t d, int delta) {
    uint32_t before = hist_[d];
    hist_[d] = uint32_t(int64_t(before) + delta);
    if (delta > 0 && before >= cap_) ++overflow_;
    if (delta < 0 && before > cap_) --overflow_;
  }

  static uint32_t dist(uint32_t a, uint32_t b) { return a > b ? a - b : b - a; }

  // Marginal cost of adding v to column j: overflow dominates, a quadratic
  // energy term keeps the histogram level below the cap.
  int64_t add_cost(uint32_t j, uint32_t v) const {
    // Duplicate distances within one addition need sequential accounting.
    int64_t cost = 0;
    uint32_t local_n = 0;
    uint32_t local_d[64];
    uint32_t local_c[64];
    for (uint32_t o : cols_[j]) {
      uint32_t d = dist(v, o);
      uint32_t extra = 0;
      for (uint32_t t = 0; t < local_n; ++t)
        if (local_d[t] == d) extra = ++local_c[t];
      if (extra == 0) {
        local_d[local_n] = d;
        local_c[local_n] = 0;
        ++local_n;
      }
      uint32_t h = hist_[d] + extra;
      cost += (h >= cap_) ? kOverflowPenalty + int64_t(h - cap_) : int64_t(2 * h + 1);
    }
    return cost;
  }

  void greedy_column(uint32_t j) {
    add_offset(j, 0);
    for (uint32_t k = 1; k < n_; ++k) {
      int64_t best = -1;
      uint32_t pick = 0;
      uint32_t ties = 0;
      for (uint32_t v = 1; v < W_; ++v) {
        if (member_[j][v]) continue;
        int64_t c = add_cost(j, v);
        if (best < 0 || c < best) {
          best = c;
          pick = v;
          ties = 1;
        } else if (c == best) {
          // Reservoir choice keeps the scan order-independent draw uniform.
          if (rng_.bounded(++ties) == 0) pick = v;
        }
      }
      add_offset(j, pick);
    }
  }

  void repair() {
    const uint32_t max_iter = 4000 + 50 * L_ * n_;
    std::vector<uint32_t> overfull;
    std::vector<std::pair<uint32_t, uint32_t>> contrib;
    for (uint32_t iter = 0; iter < max_iter && overflow_ > 0; ++iter) {
      overfull.clear();
      for (uint32_t d = 1; d < W_; ++d)
        if (hist_[d] > cap_) overfull.push_back(d);
      uint32_t d_star = overfull[rng_.bounded(overfull.size())];

      contrib.clear();
      for (uint32_t j = 0; j < L_; ++j)
        for (uint32_t o : cols_[j]) {
          if (o == 0) continue;  // anchor offset never moves
          bool hits = (o >= d_star && member_[j][o - d_star]) ||
                      (o + d_star < W_ && member_[j][o + d_star]);
          if (hits) contrib.emplace_back(j, o);
        }
      if (contrib.empty()) break;  // overflow without movable contributor
      auto [j, o] = contrib[rng_.bounded(contrib.size())];

      remove_offset(j, o);
      int64_t best = -1;
      uint32_t pick = 0;
      uint32_t ties = 0;
      for (uint32_t v = 1; v < W_; ++v) {
        if (member_[j][v] || v == o) continue;
        int64_t c = add_cost(j, v);
        if (best < 0 || c < best) {
          best = c;
          pick = v;
          ties = 1;
        } else if (c == best) {
          if (rng_.bounded(++ties) == 0) pick = v;
        }
      }
      // Reinserting the removed offset stays possible as a no-progress move
      // when every alternative is worse.
      if (best < 0 || add_cost(j, o) < best) pick = o;
      add_offset(j, pick);
    }
  }

  uint32_t W_, n_, L_, cap_;
  Rng& rng_;
  std::vector<std::vector<uint32_t>> cols_;
  std::vector<std::vector<uint8_t>> member_;
  std::vector<uint32_t> hist_;
  int64_t overflow_ = 0;
};

}  // namespace

uint32_t window_length(uint32_t n, uint32_t g) {
  if (n == 0 || g == 0) throw std::invalid_argument("window_length: n, g >= 1");
  // (W-1)*g*L must hold the pooled difference mass L*n*(n-1)/2.
  uint64_t feas = (uint64_t(n) * (n - 1) + 2 * g - 1) / (2 * g) + 1;
  uint64_t w = 2 * uint64_t(n);
  if (feas > w) w = (feas + 7) / 8 * 8;
  return uint32_t(w);
}

Params Params::from(const SchemeConfig& cfg) {
  if (cfg.kind != SchemeKind::R2D2)
    throw std::invalid_argument("Params::from: not an r2d2 config");
  Params p;
  p.n = cfg.n;
  p.g = cfg.g;
  p.o = cfg.o;
  p.s = cfg.s;
  return p;
}

uint32_t Params::tag_bits() const { return as_config(*this).tag_bits(); }
uint32_t Params::coverage_bits() const { return n * tag_bits(); }
uint32_t Params::window() const { return window_length(n, g); }

Table::Table(const Params& params, const Key& key, uint64_t horizon)
    : params_(params), horizon_(horizon) {
  const uint32_t W = params_.window();
  const uint32_t L = params_.tag_bits();
  const uint32_t cap = params_.g * L;
  if (horizon < W)
    throw std::invalid_argument("r2d2 table horizon must be at least the window length");

  for (uint32_t salt = 0; salt < params_.retry_budget; ++salt) {
    Rng rng(derive_seed(params_, key, salt));
    Leveler lev(W, params_.n, L, cap, rng);
    if (lev.run(offsets_)) {
      salt_ = salt;
      // Fixed per-column shuffle of position order so the source-bit chunk
      // carrying offset 0 is key-dependent too.
      for (auto& col : offsets_)
        for (uint32_t k = uint32_t(col.size()); k > 1; --k)
          std::swap(col[k - 1], col[rng.bounded(k)]);
      return;
    }
  }
  throw InfeasibleError("r2d2: no balanced dependency assignment found for " +
                        as_config(params_).str() + " within " +
                        std::to_string(params_.retry_budget) + " salts");
}

Table Table::from_offsets(const Params& params,
                          std::vector<std::vector<uint32_t>> offsets,
                          uint64_t horizon) {
  Table t(params, offsets, horizon);
  return t;
}

Table::Table(const Params& params, std::vector<std::vector<uint32_t>> offsets,
             uint64_t horizon)
    : params_(params), horizon_(horizon), offsets_(std::move(offsets)) {
  if (offsets_.size() != params_.tag_bits())
    throw std::invalid_argument("from_offsets: need one offset set per tag bit");
  for (const auto& col : offsets_)
    if (col.size() != params_.n)
      throw std::invalid_argument("from_offsets: each set needs n offsets");
}

DependencySpec Table::row(uint64_t i) const {
  const uint32_t L = params_.tag_bits();
  DependencySpec spec;
  spec.packet_index = i;
  spec.slots.resize(L);
  for (uint32_t j = 0; j < L; ++j) {
    auto& slot = spec.slots[j];
    slot.reserve(params_.n);
    for (uint32_t k = 0; k < params_.n; ++k)
      slot.push_back({int64_t(i) - int64_t(offsets_[j][k]), k * L + j});
  }
  return spec;
}

void Table::grouped_row(uint64_t i, GroupedDeps& out) const {
  const uint32_t L = params_.tag_bits();
  out.packet_index = i;
  out.groups.resize(L);
  for (uint32_t j = 0; j < L; ++j) {
    auto& grp = out.groups[j];
    grp.bits = 1;
    grp.messages.resize(params_.n);
    for (uint32_t k = 0; k < params_.n; ++k)
      grp.messages[k] = int64_t(i) - int64_t(offsets_[j][k]);
  }
}

Table build_assignment(const Params& params, const Key& key, uint64_t horizon) {
  return Table(params, key, horizon);
}

ImpactReport validate_bounds(const Table& table) {
  const Params& p = table.params();
  const uint32_t W = p.window();
  const uint32_t L = p.tag_bits();
  const uint64_t H = table.horizon();
  if (H < 2 * W)
    throw std::invalid_argument("validate_bounds: horizon must be >= 2W");

  ImpactReport report;
  report.bound = p.g * L;

  // counts[x] tracks impact(m, l) for l = m - W + 1 + x.
  std::vector<uint32_t> counts(2 * W, 0);
  std::vector<int64_t> killers;
  killers.reserve(p.n + 1);

  for (int64_t m = 0; m + W <= H; ++m) {
    std::fill(counts.begin(), counts.end(), 0);
    const int64_t base = m - int64_t(W) + 1;
    for (uint32_t j = 0; j < L; ++j) {
      for (uint32_t k = 0; k < p.n; ++k) {
        const int64_t t = m + int64_t(table.offset(j, k));
        killers.clear();
        if (t != m) killers.push_back(t);
        for (uint32_t k2 = 0; k2 < p.n; ++k2) {
          if (k2 == k) continue;
          int64_t other = t - int64_t(table.offset(j, k2));
          if (other >= 0 && other != m &&
              std::find(killers.begin(), killers.end(), other) == killers.end())
            killers.push_back(other);
        }
        for (int64_t l : killers) ++counts[size_t(l - base)];
      }
    }
    for (size_t x = 0; x < counts.size(); ++x) {
      if (counts[x] > report.max_impact) report.max_impact = counts[x];
      if (counts[x] > report.bound)
        report.violating_pairs.emplace_back(m, base + int64_t(x));
    }
  }
  return report;
}

bool verify_coverage(const Table& table, std::string* why) {
  const Params& p = table.params();
  const uint32_t W = p.window();
  const uint32_t L = p.tag_bits();
  const uint32_t C = p.coverage_bits();
  const uint64_t H = table.horizon();
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };

  const int64_t checkable = int64_t(H) - int64_t(W);
  std::vector<uint32_t> count(size_t(checkable + 1), 0);
  std::vector<std::vector<uint8_t>> seen_bits(size_t(checkable + 1),
                                              std::vector<uint8_t>(C, 0));
  for (uint64_t i = 0; i < H; ++i) {
    DependencySpec spec = table.row(i);
    for (uint32_t j = 0; j < spec.slots.size(); ++j) {
      for (const SlotEntry& e : spec.slots[j]) {
        if (e.message < 0 || e.message > checkable) continue;
        if (int64_t(i) < e.message || int64_t(i) >= e.message + int64_t(W))
          return fail("entry outside the window of message " +
                      std::to_string(e.message));
        auto& bits = seen_bits[size_t(e.message)];
        if (bits[e.source_bit]++)
          return fail("duplicate source bit for message " + std::to_string(e.message));
        ++count[size_t(e.message)];
      }
    }
  }
  for (int64_t m = 0; m <= checkable; ++m)
    if (count[size_t(m)] != C)
      return fail("message " + std::to_string(m) + " covered by " +
                  std::to_string(count[size_t(m)]) + " entries, expected " +
                  std::to_string(C));
  return true;
}

DependencySpec dependency_spec(const Table& table, uint64_t i) { return table.row(i); }

}  // namespace macagg::r2d2
