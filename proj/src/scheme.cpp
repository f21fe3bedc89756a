#include "macagg/scheme.hpp"

#include <charconv>
#include <stdexcept>

#include "macagg/r2d2.hpp"
#include "macagg/rng.hpp"

namespace macagg {

namespace {

uint32_t parse_u32(std::string_view s, const char* what) {
  uint32_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::invalid_argument(std::string("invalid ") + what + " in scheme spec: '" +
                                std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.push_back(s.substr(pos));
      break;
    }
    parts.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

// ceil(s.bits/n * (1 + o/100)) rounded up to a whole byte.
uint32_t sw_tag_bits(uint32_t sbits, uint32_t n, uint32_t o) {
  uint64_t num = uint64_t(sbits) * (100 + o);
  uint64_t den = uint64_t(n) * 100;
  uint64_t bits = (num + den - 1) / den;
  return uint32_t((bits + 7) / 8 * 8);
}

}  // namespace

SchemeConfig SchemeConfig::parse(std::string_view spec) {
  auto parts = split(spec, ':');
  SchemeConfig cfg;
  const std::string_view name = parts[0];
  if (name == "trad") {
    if (parts.size() != 1) throw std::invalid_argument("trad takes no parameters");
    cfg.kind = SchemeKind::Traditional;
    cfg.n = 1;
  } else if (name == "agg") {
    if (parts.size() != 2) throw std::invalid_argument("expected agg:n");
    cfg.kind = SchemeKind::Agg;
    cfg.n = parse_u32(parts[1], "n");
  } else if (name == "comp") {
    if (parts.size() != 2) throw std::invalid_argument("expected comp:n");
    cfg.kind = SchemeKind::Comp;
    cfg.n = parse_u32(parts[1], "n");
  } else if (name == "sw") {
    if (parts.size() != 3) throw std::invalid_argument("expected sw:n:o");
    cfg.kind = SchemeKind::SW;
    cfg.n = parse_u32(parts[1], "n");
    cfg.o = parse_u32(parts[2], "o");
  } else if (name == "r2d2") {
    if (parts.size() != 4) throw std::invalid_argument("expected r2d2:n:g:o");
    cfg.kind = SchemeKind::R2D2;
    cfg.n = parse_u32(parts[1], "n");
    cfg.g = parse_u32(parts[2], "g");
    cfg.o = parse_u32(parts[3], "o");
  } else {
    throw std::invalid_argument("unknown scheme '" + std::string(name) +
                                "' (expected trad, agg:n, comp:n, sw:n:o, r2d2:n:g:o)");
  }
  cfg.validate();
  return cfg;
}

std::string SchemeConfig::str() const {
  switch (kind) {
    case SchemeKind::Traditional: return "trad";
    case SchemeKind::Agg: return "agg:" + std::to_string(n);
    case SchemeKind::Comp: return "comp:" + std::to_string(n);
    case SchemeKind::SW:
      return "sw:" + std::to_string(n) + ":" + std::to_string(o);
    case SchemeKind::R2D2:
      return "r2d2:" + std::to_string(n) + ":" + std::to_string(g) + ":" +
             std::to_string(o);
  }
  return "?";
}

void SchemeConfig::validate() const {
  if (s.bits == 0) throw std::invalid_argument("security level must be positive");
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  switch (kind) {
    case SchemeKind::Traditional:
      if (n != 1 || o != 0)
        throw std::invalid_argument("traditional implies n=1, o=0");
      break;
    case SchemeKind::Agg:
      break;
    case SchemeKind::Comp:
      if (s.bits % n != 0)
        throw std::invalid_argument("comp:n requires n to divide the security level (" +
                                    std::to_string(s.bits) + ")");
      break;
    case SchemeKind::SW:
      break;
    case SchemeKind::R2D2:
      if (g == 0) throw std::invalid_argument("r2d2 requires g >= 1");
      break;
  }
}

uint32_t SchemeConfig::tag_bits() const {
  switch (kind) {
    case SchemeKind::Traditional:
    case SchemeKind::Agg: return s.bits;
    case SchemeKind::Comp: return s.bits / n;
    case SchemeKind::SW:
    case SchemeKind::R2D2: return sw_tag_bits(s.bits, n, o);
  }
  return 0;
}

uint32_t SchemeConfig::coverage_bits() const {
  switch (kind) {
    case SchemeKind::Traditional:
    case SchemeKind::Agg:
    case SchemeKind::Comp: return s.bits;
    case SchemeKind::SW:
    case SchemeKind::R2D2: return n * tag_bits();
  }
  return 0;
}

uint32_t SchemeConfig::max_tag_bits() const {
  return kind == SchemeKind::Traditional || kind == SchemeKind::Agg ? s.bits
                                                                    : tag_bits();
}

double SchemeConfig::avg_tag_bits() const {
  switch (kind) {
    case SchemeKind::Traditional: return s.bits;
    case SchemeKind::Agg:
    case SchemeKind::Comp: return double(s.bits) / n;
    case SchemeKind::SW:
    case SchemeKind::R2D2: return tag_bits();
  }
  return 0;
}

uint32_t tag_bits_at(const SchemeConfig& cfg, uint64_t i) {
  switch (cfg.kind) {
    case SchemeKind::Traditional: return cfg.s.bits;
    case SchemeKind::Agg: return i % cfg.n == cfg.n - 1 ? cfg.s.bits : 0;
    case SchemeKind::Comp:
    case SchemeKind::SW:
    case SchemeKind::R2D2: return cfg.tag_bits();
  }
  return 0;
}

uint64_t total_tag_bits(const SchemeConfig& cfg, uint64_t count) {
  if (cfg.kind == SchemeKind::Agg)
    return (count / cfg.n) * uint64_t(cfg.s.bits);
  if (cfg.kind == SchemeKind::Traditional) return count * uint64_t(cfg.s.bits);
  return count * uint64_t(cfg.tag_bits());
}

PayloadFn synthetic_payloads(uint64_t seed, size_t bytes) {
  return [seed, bytes](uint64_t index) {
    std::vector<uint8_t> p(bytes);
    uint64_t s = mix_seed(seed, index);
    for (size_t i = 0; i < bytes; ++i) {
      if (i % 8 == 0) s = splitmix64(s);
      p[i] = uint8_t(s >> (8 * (i % 8)));
    }
    return p;
  };
}

// ---------------------------------------------------------------------------
// Dependency structure
// ---------------------------------------------------------------------------

namespace {

DependencySpec non_r2d2_spec(const SchemeConfig& cfg, uint64_t i) {
  DependencySpec spec;
  spec.packet_index = i;
  const uint32_t sbits = cfg.s.bits;
  switch (cfg.kind) {
    case SchemeKind::Traditional: {
      spec.slots.resize(sbits);
      for (uint32_t j = 0; j < sbits; ++j)
        spec.slots[j] = {{int64_t(i), j}};
      break;
    }
    case SchemeKind::Agg: {
      if (i % cfg.n != cfg.n - 1) break;  // no tag on this packet
      spec.slots.resize(sbits);
      for (uint32_t j = 0; j < sbits; ++j) {
        auto& slot = spec.slots[j];
        slot.reserve(cfg.n);
        for (uint32_t d = 0; d < cfg.n; ++d)
          slot.push_back({int64_t(i) - int64_t(cfg.n - 1 - d), j});
      }
      break;
    }
    case SchemeKind::Comp: {
      // Packet i in block b carries chunk (i mod n) of the previous block's
      // compound tag. Block -1 is the virtual prefix.
      const uint32_t L = cfg.tag_bits();
      const int64_t b = int64_t(i / cfg.n);
      const uint32_t c = uint32_t(i % cfg.n);
      spec.slots.resize(L);
      for (uint32_t j = 0; j < L; ++j) {
        auto& slot = spec.slots[j];
        slot.reserve(cfg.n);
        for (uint32_t d = 0; d < cfg.n; ++d)
          slot.push_back({(b - 1) * int64_t(cfg.n) + int64_t(d), c * L + j});
      }
      break;
    }
    case SchemeKind::SW: {
      // The n tags covering a message draw n disjoint L-bit chunks of its
      // FullTag: tag i takes chunk (i - k) of message k's tag.
      const uint32_t L = cfg.tag_bits();
      spec.slots.resize(L);
      for (uint32_t j = 0; j < L; ++j) {
        auto& slot = spec.slots[j];
        slot.reserve(cfg.n);
        for (uint32_t d = 0; d < cfg.n; ++d) {
          int64_t k = int64_t(i) - int64_t(cfg.n - 1 - d);
          uint32_t chunk = uint32_t(int64_t(i) - k);
          slot.push_back({k, chunk * L + j});
        }
      }
      break;
    }
    case SchemeKind::R2D2:
      throw std::logic_error("R2D2 dependency spec requires a keyed table");
  }
  return spec;
}

void non_r2d2_grouped(const SchemeConfig& cfg, uint64_t i, GroupedDeps& out) {
  out.packet_index = i;
  out.groups.clear();
  switch (cfg.kind) {
    case SchemeKind::Traditional: {
      out.groups.emplace_back();
      out.groups.back().messages = {int64_t(i)};
      out.groups.back().bits = cfg.s.bits;
      break;
    }
    case SchemeKind::Agg: {
      if (i % cfg.n != cfg.n - 1) break;
      out.groups.emplace_back();
      auto& grp = out.groups.back();
      for (uint32_t d = 0; d < cfg.n; ++d)
        grp.messages.push_back(int64_t(i) - int64_t(cfg.n - 1 - d));
      grp.bits = cfg.s.bits;
      break;
    }
    case SchemeKind::Comp: {
      out.groups.emplace_back();
      auto& grp = out.groups.back();
      const int64_t b = int64_t(i / cfg.n);
      for (uint32_t d = 0; d < cfg.n; ++d)
        grp.messages.push_back((b - 1) * int64_t(cfg.n) + int64_t(d));
      grp.bits = cfg.tag_bits();
      break;
    }
    case SchemeKind::SW: {
      out.groups.emplace_back();
      auto& grp = out.groups.back();
      for (uint32_t d = 0; d < cfg.n; ++d)
        grp.messages.push_back(int64_t(i) - int64_t(cfg.n - 1 - d));
      grp.bits = cfg.tag_bits();
      break;
    }
    case SchemeKind::R2D2:
      throw std::logic_error("R2D2 grouped deps require a keyed table");
  }
}

}  // namespace

Scheme::Scheme(SchemeConfig cfg, Key key) : cfg_(cfg), key_(key) {
  cfg_.validate();
  if (cfg_.kind == SchemeKind::R2D2) {
    auto params = r2d2::Params::from(cfg_);
    table_ = std::make_shared<const r2d2::Table>(params, key_, 2 * params.window());
  }
}

uint32_t Scheme::tag_bits_at(uint64_t i) const { return macagg::tag_bits_at(cfg_, i); }

DependencySpec Scheme::dependency_spec(uint64_t i) const {
  if (cfg_.kind == SchemeKind::R2D2) return table_->row(i);
  return non_r2d2_spec(cfg_, i);
}

void Scheme::grouped_deps(uint64_t i, GroupedDeps& out) const {
  if (cfg_.kind == SchemeKind::R2D2) {
    table_->grouped_row(i, out);
    return;
  }
  non_r2d2_grouped(cfg_, i, out);
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

Sender::Sender(const Scheme& scheme, PayloadFn payloads)
    : scheme_(scheme), payloads_(std::move(payloads)) {}

const FullTag& Sender::full_tag(int64_t message) const {
  auto it = cache_.find(message);
  if (it != cache_.end()) return it->second;
  std::vector<uint8_t> payload;
  if (message >= 0) payload = payloads_(uint64_t(message));
  FullTag tag = compute_full_tag(scheme_.key(), uint64_t(message), payload,
                                 scheme_.config().coverage_bits());
  return cache_.emplace(message, std::move(tag)).first->second;
}

TagEmission Sender::emit(uint64_t i) const {
  DependencySpec spec = scheme_.dependency_spec(i);
  TagEmission em;
  em.packet_index = i;
  em.tag_bits = BitVec(spec.slots.size());
  for (size_t j = 0; j < spec.slots.size(); ++j) {
    bool bit = false;
    for (const SlotEntry& e : spec.slots[j])
      bit ^= full_tag(e.message).bits.get(e.source_bit);
    em.tag_bits.set(j, bit);
  }
  return em;
}

TagEmission emit_tag(const Scheme& scheme, const PayloadFn& payloads, uint64_t i) {
  return Sender(scheme, payloads).emit(i);
}

DependencySpec dependency_spec(const SchemeConfig& cfg, const Key& key, uint64_t i) {
  if (cfg.kind == SchemeKind::R2D2) return Scheme(cfg, key).dependency_spec(i);
  (void)key;  // non-R2D2 structures are key-independent
  return non_r2d2_spec(cfg, i);
}

}  // namespace macagg
