#include "macagg/receiver.hpp"

#include <stdexcept>

#include "macagg/r2d2.hpp"

namespace macagg {

uint32_t flush_packet_count(const SchemeConfig& cfg, uint64_t messages) {
  if (messages == 0) return 0;
  switch (cfg.kind) {
    case SchemeKind::Traditional:
      return 0;
    case SchemeKind::Agg:
      return uint32_t((cfg.n - messages % cfg.n) % cfg.n);
    case SchemeKind::Comp: {
      // Chunks of the last (possibly partial) block ride the block after it.
      uint64_t last_block = (messages - 1) / cfg.n;
      return uint32_t((last_block + 2) * cfg.n - messages);
    }
    case SchemeKind::SW:
      return cfg.n - 1;
    case SchemeKind::R2D2:
      return r2d2::window_length(cfg.n, cfg.g) - 1;
  }
  return 0;
}

TraceResult process_trace(const Scheme& scheme, const LossTrace& trace,
                          const TraceOptions& opts) {
  if (trace.empty()) throw std::invalid_argument("process_trace: empty trace");

  const SchemeConfig& cfg = scheme.config();
  const uint64_t n_msgs = trace.size();
  const uint32_t flush = opts.flush ? flush_packet_count(cfg, n_msgs) : 0;
  const uint64_t n_total = n_msgs + flush;
  const uint32_t threshold = cfg.s.bits;

  TraceResult res;
  res.flush_packets = flush;
  for (uint64_t i = n_msgs; i < n_total; ++i)
    res.flush_tag_bits += tag_bits_at(cfg, i);

  std::vector<uint32_t> credits(n_total, 0);
  std::vector<std::optional<uint64_t>> auth_at(n_total);
  if (opts.record_timeline) res.timelines.resize(n_msgs);

  auto received = [&](int64_t m) {
    if (m < 0) return true;  // virtual prefix
    if (uint64_t(m) >= n_msgs) return uint64_t(m) < n_total;  // flush packets
    return trace.received(size_t(m));
  };

  // Full-crypto state: deterministic payloads, a real sender, and per-message
  // recomputed FullTags on the receiving side.
  const bool full = opts.mode == VerifyMode::FullCrypto;
  PayloadFn payloads;
  std::unique_ptr<Sender> sender;
  std::unordered_map<int64_t, FullTag> rx_tags;
  if (full) {
    auto synth = synthetic_payloads(opts.payload_seed, opts.payload_bytes);
    payloads = [synth, n_msgs](uint64_t i) {
      return i < n_msgs ? synth(i) : std::vector<uint8_t>{};  // tag-only flush
    };
    sender = std::make_unique<Sender>(scheme, payloads);
  }
  auto rx_full_tag = [&](int64_t m) -> const FullTag& {
    auto it = rx_tags.find(m);
    if (it != rx_tags.end()) return it->second;
    std::vector<uint8_t> payload;
    if (m >= 0) payload = payloads(uint64_t(m));
    return rx_tags
        .emplace(m, compute_full_tag(scheme.key(), uint64_t(m), payload,
                                     cfg.coverage_bits()))
        .first->second;
  };

  auto credit = [&](int64_t m, uint64_t packet, uint32_t bits) {
    if (m < 0 || uint64_t(m) >= n_total) return;
    if (!received(m)) return;
    credits[size_t(m)] += bits;
    if (!auth_at[size_t(m)] && credits[size_t(m)] >= threshold)
      auth_at[size_t(m)] = packet;
    if (opts.record_timeline && uint64_t(m) < n_msgs)
      res.timelines[size_t(m)].emplace_back(packet, credits[size_t(m)]);
  };

  GroupedDeps grouped;
  for (uint64_t i = 0; i < n_total; ++i) {
    if (!received(int64_t(i))) continue;

    if (!full) {
      scheme.grouped_deps(i, grouped);
      for (const DepGroup& grp : grouped.groups) {
        bool ok = true;
        for (int64_t m : grp.messages)
          if (!received(m)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        for (int64_t m : grp.messages) credit(m, i, grp.bits);
      }
      continue;
    }

    DependencySpec spec = scheme.dependency_spec(i);
    if (spec.slots.empty()) continue;
    BitVec wire = sender->emit(i).tag_bits;
    if (opts.tamper) opts.tamper(i, wire);
    for (uint32_t j = 0; j < spec.slots.size(); ++j) {
      bool ok = true;
      for (const SlotEntry& e : spec.slots[j])
        if (!received(e.message)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      bool expect = false;
      for (const SlotEntry& e : spec.slots[j])
        expect ^= rx_full_tag(e.message).bits.get(e.source_bit);
      if (expect != wire.get(j)) {
        res.integrity_failures.push_back({i, j});
        continue;  // tampered slot earns no credit
      }
      for (const SlotEntry& e : spec.slots[j]) credit(e.message, i, 1);
    }
  }

  res.outcomes.resize(n_msgs);
  for (uint64_t m = 0; m < n_msgs; ++m) {
    AuthOutcome& out = res.outcomes[m];
    out.message_index = m;
    out.received = trace.received(size_t(m));
    out.credited_bits = credits[size_t(m)];
    out.auth_at = auth_at[size_t(m)];
    if (out.auth_at) out.delay = *out.auth_at - m;
  }
  return res;
}

std::set<uint64_t> authenticated_set(const std::vector<AuthOutcome>& outcomes) {
  std::set<uint64_t> s;
  for (const AuthOutcome& o : outcomes)
    if (o.auth_at) s.insert(o.message_index);
  return s;
}

std::vector<std::vector<std::pair<uint64_t, uint32_t>>> security_timeline(
    const Scheme& scheme, const LossTrace& trace, bool flush) {
  if (!scheme.config().progressive())
    throw std::invalid_argument(
        "security_timeline: only progressive schemes (sw, r2d2) accrue credit "
        "across packets");
  TraceOptions opts;
  opts.flush = flush;
  opts.record_timeline = true;
  return process_trace(scheme, trace, opts).timelines;
}

}  // namespace macagg
