#include "macagg/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "macagg/errors.hpp"
#include "macagg/rng.hpp"

namespace macagg {

LossTrace gen_bernoulli(double p_loss, size_t len, uint64_t seed) {
  if (p_loss < 0.0 || p_loss > 1.0)
    throw std::invalid_argument("loss probability must be in [0, 1]");
  LossTrace t;
  t.flags.resize(len);
  t.source = "bernoulli:" + std::to_string(p_loss) + ":" + std::to_string(len) +
             ":" + std::to_string(seed);
  Rng rng(mix_seed(0x6265726eULL, seed));
  for (size_t i = 0; i < len; ++i) t.flags[i] = rng.coin(p_loss) ? 0 : 1;
  return t;
}

LossTrace gen_bernoulli_per_packet(const std::vector<double>& p_loss, uint64_t seed) {
  LossTrace t;
  t.flags.resize(p_loss.size());
  t.source = "bernoulli-per-packet:" + std::to_string(seed);
  Rng rng(mix_seed(0x6265726eULL, seed));
  for (size_t i = 0; i < p_loss.size(); ++i) t.flags[i] = rng.coin(p_loss[i]) ? 0 : 1;
  return t;
}

LossTrace gen_gilbert_elliott(const GilbertElliottParams& p, size_t len,
                              uint64_t seed) {
  for (double v : {p.p_good_to_bad, p.p_bad_to_good, p.loss_good, p.loss_bad})
    if (v < 0.0 || v > 1.0)
      throw std::invalid_argument("Gilbert-Elliott parameters must be in [0, 1]");
  LossTrace t;
  t.flags.resize(len);
  t.source = "ge:" + std::to_string(seed);
  Rng rng(mix_seed(0x6765676fULL, seed));
  bool bad = false;
  for (size_t i = 0; i < len; ++i) {
    t.flags[i] = rng.coin(bad ? p.loss_bad : p.loss_good) ? 0 : 1;
    bad = bad ? !rng.coin(p.p_bad_to_good) : rng.coin(p.p_good_to_bad);
  }
  return t;
}

double per_from_ber(double ber, uint64_t total_bits) {
  if (ber < 0.0 || ber > 1.0)
    throw std::invalid_argument("bit error rate must be in [0, 1]");
  if (total_bits == 0 || ber == 0.0) return 0.0;
  if (ber == 1.0) return 1.0;
  return -std::expm1(double(total_bits) * std::log1p(-ber));
}

LossTrace parse_trace(std::string_view text) {
  LossTrace t;
  t.source = "text";
  size_t line = 1, col = 0;
  bool in_comment = false;
  for (char c : text) {
    ++col;
    if (c == '\n') {
      ++line;
      col = 0;
      in_comment = false;
      continue;
    }
    if (in_comment) continue;
    if (c == '#') {
      in_comment = true;
      continue;
    }
    if (c == '0')
      t.flags.push_back(0);
    else if (c == '1')
      t.flags.push_back(1);
    else if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f')
      continue;
    else
      throw ParseError(std::string("unexpected character '") + c +
                           "' in loss trace (expected 0, 1, whitespace or #)",
                       line, col);
  }
  if (t.flags.empty()) throw ParseError("loss trace is empty", line, col);
  return t;
}

std::string write_trace(const LossTrace& trace) {
  std::string out;
  out.reserve(trace.size() + trace.size() / 64 + 1);
  for (size_t i = 0; i < trace.size(); ++i) {
    out.push_back(trace.received(i) ? '1' : '0');
    if ((i + 1) % 64 == 0) out.push_back('\n');
  }
  if (out.empty() || out.back() != '\n') out.push_back('\n');
  return out;
}

TraceStats trace_stats(const LossTrace& trace) {
  if (trace.empty()) throw std::invalid_argument("trace_stats: empty trace");
  TraceStats st;
  st.total = trace.size();
  size_t run = 0;
  for (size_t i = 0; i < trace.size(); ++i) {
    if (!trace.received(i)) {
      ++st.lost;
      ++run;
    } else if (run > 0) {
      ++st.burst_histogram[run];
      run = 0;
    }
  }
  if (run > 0) ++st.burst_histogram[run];
  st.per = double(st.lost) / double(st.total);
  size_t bursts = 0;
  for (auto& [len, cnt] : st.burst_histogram) bursts += cnt;
  st.mean_burst = bursts ? double(st.lost) / double(bursts) : 0.0;
  return st;
}

namespace {

// loss_bad = 1 makes bad-state sojourns the loss bursts, so the mean burst
// equals 1/p_bad_to_good and the stationary bad-state share equals the PER.
GilbertElliottParams ge_for(double per, double mean_burst) {
  GilbertElliottParams p;
  p.loss_bad = 1.0;
  p.loss_good = 0.0;
  p.p_bad_to_good = 1.0 / mean_burst;
  p.p_good_to_bad = per / (mean_burst * (1.0 - per));
  return p;
}

std::vector<Scenario> make_presets() {
  std::vector<Scenario> v;
  v.push_back({"ics", {88, 160}, 0.0479, 3.0, ge_for(0.0479, 3.0),
               "industrial production hall, IEEE 802.15.4, short loss bursts"});
  v.push_back({"office", {80, 256}, 0.0322, 2.0, ge_for(0.0322, 2.0),
               "office floor, Bluetooth Low Energy, short bursts of a few packets"});
  v.push_back({"city-static", {104, 128}, 0.0197, 1.0, ge_for(0.0197, 1.0),
               "stationary LoRaWAN sender, mostly isolated losses"});
  v.push_back({"city-mobile", {104, 192}, 0.0709, 5.0, ge_for(0.0709, 5.0),
               "mobile LoRaWAN sender, burstier losses"});
  v.push_back({"underwater", {31, 128}, 0.1646, 20.0, ge_for(0.1646, 20.0),
               "acoustic underwater link, long bursts between quiet phases"});
  return v;
}

}  // namespace

const std::vector<Scenario>& scenario_presets() {
  static const std::vector<Scenario> presets = make_presets();
  return presets;
}

const Scenario& load_scenario(std::string_view name) {
  for (const Scenario& s : scenario_presets())
    if (s.name == name) return s;
  std::string known;
  for (const Scenario& s : scenario_presets()) {
    if (!known.empty()) known += ", ";
    known += s.name;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) +
                              "' (known: " + known + ")");
}

}  // namespace macagg
