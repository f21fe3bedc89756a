#include "macagg/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "macagg/metrics.hpp"
#include "macagg/receiver.hpp"
#include "macagg/rng.hpp"

namespace macagg {

namespace {

uint64_t auth_count(const Scheme& scheme, const LossTrace& trace) {
  TraceResult res = process_trace(scheme, trace, {});
  uint64_t n = 0;
  for (const AuthOutcome& o : res.outcomes) n += o.auth_at ? 1 : 0;
  return n;
}

// Covering tags message m keeps under periodic jamming with period p on an
// otherwise clean channel (steady state): tag i in [m, m+n) survives iff no
// jam falls in its dependency window [i-n+1, i].
uint32_t sw_surviving_tags(uint32_t n, uint32_t p, uint64_t m) {
  uint32_t ok = 0;
  for (uint64_t i = m; i < m + n; ++i) {
    bool hit = false;
    for (uint64_t t = i >= n - 1 ? i - (n - 1) : 0; t <= i; ++t)
      if (t % p == p - 1) {
        hit = true;
        break;
      }
    if (!hit) ++ok;
  }
  return ok;
}

uint32_t sw_zero_kill_period(const SchemeConfig& cfg) {
  const uint32_t need = (cfg.s.bits + cfg.tag_bits() - 1) / cfg.tag_bits();
  for (uint32_t p = 1; p <= 2 * cfg.n; ++p) {
    bool all_starved = true;
    for (uint64_t m = 2 * cfg.n; m < 2 * cfg.n + p && all_starved; ++m)
      if (sw_surviving_tags(cfg.n, p, m) >= need) all_starved = false;
    if (all_starved) return p;
  }
  return 2 * cfg.n;  // unreachable for any real parameterization
}

std::vector<uint64_t> periodic(uint32_t period, size_t trace_len, size_t max_count) {
  std::vector<uint64_t> jam;
  for (uint64_t i = period - 1; i < trace_len && jam.size() < max_count; i += period)
    jam.push_back(i);
  return jam;
}

}  // namespace

JamPlan analytic_jam(const SchemeConfig& cfg, size_t trace_len, double budget) {
  if (budget < 0.0 || budget > 1.0)
    throw std::invalid_argument("jam budget must be in [0, 1]");
  JamPlan plan;
  plan.budget = budget;
  plan.strategy = "analytic";
  const size_t max_count = size_t(budget * double(trace_len));
  if (max_count == 0) return plan;

  switch (cfg.kind) {
    case SchemeKind::Traditional: {
      // Damage is linear in jammed packets; any selection is equivalent.
      for (uint64_t i = 0; i < max_count; ++i) plan.jam_set.push_back(i);
      break;
    }
    case SchemeKind::Agg: {
      // Each jammed tag carrier voids its whole block.
      for (uint64_t i = cfg.n - 1; i < trace_len && plan.jam_set.size() < max_count;
           i += cfg.n)
        plan.jam_set.push_back(i);
      for (uint64_t i = 0; i < trace_len && plan.jam_set.size() < max_count; ++i)
        if (i % cfg.n != cfg.n - 1) plan.jam_set.push_back(i);
      break;
    }
    case SchemeKind::Comp: {
      // One packet per block starves the block itself (lost member) and the
      // previous block (missing chunk carrier).
      for (uint64_t i = 0; i < trace_len && plan.jam_set.size() < max_count;
           i += cfg.n)
        plan.jam_set.push_back(i);
      for (uint64_t i = 0; i < trace_len && plan.jam_set.size() < max_count; ++i)
        if (i % cfg.n != 0) plan.jam_set.push_back(i);
      break;
    }
    case SchemeKind::SW: {
      uint32_t period = std::max<uint32_t>(
          sw_zero_kill_period(cfg),
          uint32_t(std::ceil(1.0 / std::max(budget, 1e-9))));
      plan.jam_set = periodic(period, trace_len, max_count);
      break;
    }
    case SchemeKind::R2D2: {
      // Dependencies are secret; uniform spread maximizes expected damage.
      uint32_t period =
          std::max<uint32_t>(1, uint32_t(std::ceil(1.0 / std::max(budget, 1e-9))));
      plan.jam_set = periodic(period, trace_len, max_count);
      break;
    }
  }
  std::sort(plan.jam_set.begin(), plan.jam_set.end());
  return plan;
}

LossTrace apply_jam(const LossTrace& base, const JamPlan& plan) {
  LossTrace t = base;
  t.source = base.source + "+jam(" + plan.strategy + ")";
  for (uint64_t i : plan.jam_set)
    if (i < t.flags.size()) t.flags[i] = 0;
  return t;
}

JamPlan greedy_jam(const Scheme& scheme, JamKnowledge knowledge,
                   const LossTrace& base, double budget, Exec exec) {
  if (budget < 0.0 || budget > 1.0)
    throw std::invalid_argument("jam budget must be in [0, 1]");
  const size_t max_count = size_t(budget * double(base.size()));

  // Average-case attackers cannot use the real table; they score candidates
  // against schemes built from sampled keys instead.
  std::vector<Scheme> eval_schemes;
  if (knowledge == JamKnowledge::AverageCase &&
      scheme.config().kind == SchemeKind::R2D2) {
    constexpr uint32_t kSampleKeys = 32;
    for (uint32_t s = 0; s < kSampleKeys; ++s)
      eval_schemes.emplace_back(scheme.config(),
                                Key::from_seed(mix_seed(0xa5e7ca5eULL, s)));
  } else {
    eval_schemes.push_back(scheme);
  }
  auto damage_metric = [&](const LossTrace& t) {
    uint64_t total = 0;
    for (const Scheme& s : eval_schemes) total += auth_count(s, t);
    return total;
  };

  JamPlan plan;
  plan.budget = budget;
  plan.strategy = "greedy";
  LossTrace current = base;
  for (size_t round = 0; round < max_count; ++round) {
    std::vector<uint64_t> candidates;
    for (uint64_t i = 0; i < current.size(); ++i)
      if (current.received(i)) candidates.push_back(i);
    if (candidates.empty()) break;

    std::vector<uint64_t> score(candidates.size());
    parallel_for(exec, int64_t(candidates.size()), [&](int64_t c) {
      LossTrace t = current;
      t.flags[size_t(candidates[size_t(c)])] = 0;
      score[size_t(c)] = damage_metric(t);
    });
    size_t best = 0;
    for (size_t c = 1; c < candidates.size(); ++c)
      if (score[c] < score[best]) best = c;  // ties keep the lowest index
    plan.jam_set.push_back(candidates[best]);
    current.flags[size_t(candidates[best])] = 0;
  }
  std::sort(plan.jam_set.begin(), plan.jam_set.end());

  // Portfolio: fall back to the closed-form plan when it scores at least as
  // much damage under the attacker's own metric.
  JamPlan analytic = analytic_jam(scheme.config(), base.size(), budget);
  if (damage_metric(apply_jam(base, analytic)) <
      damage_metric(apply_jam(base, plan))) {
    analytic.strategy = "greedy(analytic)";
    return analytic;
  }
  return plan;
}

JamPlan brute_force_jam(const Scheme& scheme, const LossTrace& base,
                        uint32_t packets) {
  const size_t n = base.size();
  if (n > 24) throw std::invalid_argument("brute_force_jam: trace too long");
  JamPlan best;
  best.budget = double(packets) / double(n);
  best.strategy = "brute-force";
  uint64_t best_auth = UINT64_MAX;

  std::vector<uint32_t> idx(packets);
  for (uint32_t i = 0; i < packets; ++i) idx[i] = i;
  for (;;) {
    LossTrace t = base;
    for (uint32_t i : idx) t.flags[i] = 0;
    uint64_t a = auth_count(scheme, t);
    if (a < best_auth) {
      best_auth = a;
      best.jam_set.assign(idx.begin(), idx.end());
    }
    // next combination
    int32_t pos = int32_t(packets) - 1;
    while (pos >= 0 && idx[size_t(pos)] == n - packets + uint32_t(pos)) --pos;
    if (pos < 0) break;
    ++idx[size_t(pos)];
    for (uint32_t i = uint32_t(pos) + 1; i < packets; ++i) idx[i] = idx[i - 1] + 1;
  }
  return best;
}

std::vector<ResiliencePoint> resilience_curve(const Scheme& scheme,
                                              PacketLayout layout,
                                              const LossTrace& base,
                                              const std::vector<double>& budgets,
                                              const std::string& strategy,
                                              Exec exec) {
  std::vector<ResiliencePoint> curve(budgets.size());
  for (size_t b = 0; b < budgets.size(); ++b) {
    JamPlan plan;
    if (strategy == "analytic")
      plan = analytic_jam(scheme.config(), base.size(), budgets[b]);
    else if (strategy == "greedy")
      plan = greedy_jam(scheme, JamKnowledge::KnownDeps, base, budgets[b], exec);
    else if (strategy == "greedy-avg")
      plan = greedy_jam(scheme, JamKnowledge::AverageCase, base, budgets[b], exec);
    else
      throw std::invalid_argument("unknown jam strategy '" + strategy + "'");

    LossTrace jammed = apply_jam(base, plan);
    size_t dropped = 0;
    for (size_t i = 0; i < jammed.size(); ++i) dropped += jammed.received(i) ? 0 : 1;

    TraceResult res = process_trace(scheme, jammed, {});
    MetricsReport rep = compute_metrics(scheme.config(), layout, res);
    curve[b] = {budgets[b], double(dropped) / double(jammed.size()), rep.goodput};
  }
  return curve;
}

}  // namespace macagg
