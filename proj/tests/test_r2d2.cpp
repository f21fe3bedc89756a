#include <set>

#include "doctest.h"
#include "macagg/errors.hpp"
#include "macagg/r2d2.hpp"
#include "test_util.hpp"

using namespace macagg;
using namespace macagg::test;

TEST_SUITE_BEGIN("r2d2");

namespace {
r2d2::Params params_of(const std::string& spec) {
  return r2d2::Params::from(SchemeConfig::parse(spec));
}
}  // namespace

TEST_CASE("window length meets the counting bound and keeps the documented case") {
  CHECK(r2d2::window_length(4, 1) == 8);  // 2n suffices here
  CHECK(r2d2::window_length(2, 1) == 4);
  // (W-1)*g must hold n*(n-1)/2 difference mass per slot column.
  CHECK(r2d2::window_length(8, 1) == 32);
  CHECK(r2d2::window_length(16, 1) == 128);
  CHECK(r2d2::window_length(16, 2) == 64);
  for (uint32_t n : {2u, 4u, 8u, 16u})
    for (uint32_t g : {1u, 2u})
      CHECK((uint64_t(r2d2::window_length(n, g)) - 1) * 2 * g >=
            uint64_t(n) * (n - 1));
}

TEST_CASE("derived quantities") {
  auto p = params_of("r2d2:8:1:100");
  CHECK(p.tag_bits() == 32);
  CHECK(p.coverage_bits() == 256);
  CHECK(p.window() == 32);
  CHECK(params_of("r2d2:4:1:0").tag_bits() == 32);
  CHECK(params_of("r2d2:16:1:100").coverage_bits() == 256);
}

TEST_CASE("paper-level bound: g=1 with 2-byte tags risks at most 16 bits") {
  auto p = params_of("r2d2:16:1:100");  // L = 16 bits = 2 bytes
  r2d2::Table t(p, Key::from_seed(3), 2 * p.window());
  auto report = r2d2::validate_bounds(t);
  CHECK(report.bound == 16);
  CHECK(report.passed());
}

TEST_CASE("accepted tables satisfy coverage exactness and the impact bound") {
  for (const char* spec : {"r2d2:4:1:0", "r2d2:8:1:100"}) {
    auto p = params_of(spec);
    CAPTURE(spec);
    r2d2::Table t(p, Key::from_seed(21), 2 * p.window());
    std::string why;
    CHECK_MESSAGE(r2d2::verify_coverage(t, &why), why);
    auto report = r2d2::validate_bounds(t);
    CHECK(report.max_impact <= report.bound);
    CHECK(report.violating_pairs.empty());
  }
}

TEST_CASE("exhaustive impact enumeration for r2d2:4:1:0 over a 64-packet horizon") {
  auto p = params_of("r2d2:4:1:0");
  r2d2::Table t(p, Key::from_seed(4), 64);
  auto report = r2d2::validate_bounds(t);
  CHECK(report.bound == 32);  // g * L
  CHECK(report.max_impact <= 32);
  CHECK(report.passed());
}

TEST_CASE("adversarial fixture: identical slot columns violate the bound") {
  auto p = params_of("r2d2:4:1:0");
  // Every column uses the same window offsets; co-occurrence is maximal.
  std::vector<std::vector<uint32_t>> cols(p.tag_bits(),
                                          std::vector<uint32_t>{0, 1, 2, 3});
  auto t = r2d2::Table::from_offsets(p, cols, 2 * p.window());
  auto report = r2d2::validate_bounds(t);
  CHECK_FALSE(report.violating_pairs.empty());
  CHECK(report.max_impact > report.bound);
}

TEST_CASE("determinism: same key gives the same table, different keys differ") {
  auto p = params_of("r2d2:8:1:100");
  const uint64_t horizon = 64;
  r2d2::Table a(p, Key::from_seed(100), horizon);
  r2d2::Table b(p, Key::from_seed(100), horizon);
  r2d2::Table c(p, Key::from_seed(101), horizon);
  CHECK(a.salt() == b.salt());

  size_t cells = 0, same_ab = 0, diff_c_slots = 0, slots = 0;
  for (uint64_t i = 0; i < horizon; ++i) {
    auto ra = a.row(i), rb = b.row(i), rc = c.row(i);
    for (size_t j = 0; j < ra.slots.size(); ++j) {
      ++slots;
      bool slot_same = true;
      for (size_t k = 0; k < ra.slots[j].size(); ++k) {
        ++cells;
        CHECK(ra.slots[j][k].message == rb.slots[j][k].message);
        same_ab += ra.slots[j][k].message == rb.slots[j][k].message;
        if (ra.slots[j][k].message != rc.slots[j][k].message) slot_same = false;
      }
      if (!slot_same) ++diff_c_slots;
    }
  }
  CHECK(same_ab == cells);
  // Distinct keys: at least 99% of (packet, slot) cells differ.
  CHECK(double(diff_c_slots) / double(slots) >= 0.99);
}

TEST_CASE("projection matches the contract") {
  auto p = params_of("r2d2:8:1:100");
  const uint32_t L = p.tag_bits();
  const uint32_t W = p.window();
  r2d2::Table t(p, Key::from_seed(5), 3 * W);

  SUBCASE("slots have n distinct entries within the window") {
    for (uint64_t i = 0; i < 2 * W; ++i) {
      auto spec = r2d2::dependency_spec(t, i);
      REQUIRE(spec.slots.size() == L);
      for (auto& slot : spec.slots) {
        REQUIRE(slot.size() == p.n);
        std::set<int64_t> msgs;
        for (auto& e : slot) {
          msgs.insert(e.message);
          CHECK(e.message <= int64_t(i));
          CHECK(e.message > int64_t(i) - int64_t(W));
        }
        CHECK(msgs.size() == p.n);
      }
    }
  }

  SUBCASE("re-aggregating all packets reproduces per-message coverage C") {
    std::map<int64_t, uint32_t> cover;
    for (uint64_t i = 0; i < 3 * W; ++i)
      for (auto& slot : r2d2::dependency_spec(t, i).slots)
        for (auto& e : slot) ++cover[e.message];
    for (int64_t m = 0; m + int64_t(W) <= int64_t(3 * W); ++m)
      if (m >= 0) CHECK(cover[m] == p.coverage_bits());
  }
}

TEST_CASE("retry budget exhaustion raises an infeasible-parameters error") {
  auto p = params_of("r2d2:16:1:100");
  p.retry_budget = 0;
  CHECK_THROWS_AS(r2d2::Table(p, Key::from_seed(6), 2 * p.window()), InfeasibleError);
}

TEST_CASE("builds succeed within the salt budget across many keys") {
  // The tightest gated parameterization has ~6% slack over the counting
  // bound; the leveler has to land inside it reliably.
  auto p = params_of("r2d2:16:1:100");
  for (uint64_t k = 0; k < 10; ++k) {
    r2d2::Table t(p, Key::from_seed(1000 + k), 2 * p.window());
    CHECK(t.salt() < 64);
    auto report = r2d2::validate_bounds(t);
    CHECK(report.passed());
  }
}

TEST_CASE("keyed secrecy: nonzero offsets spread over the window") {
  // Offset 0 is structural (each tag covers its own packet); the remaining
  // offsets must be key-unpredictable. Pool the nonzero offsets of one cell
  // over many keys and check support and maximum frequency.
  auto p = params_of("r2d2:4:1:0");
  const uint32_t W = p.window();
  const int keys = 400;
  std::vector<uint32_t> counts(W, 0);
  for (int k = 0; k < keys; ++k) {
    r2d2::Table t(p, Key::from_seed(50000 + uint64_t(k)), p.window());
    for (uint32_t j = 0; j < p.tag_bits(); ++j)
      for (uint32_t pos = 0; pos < p.n; ++pos)
        if (uint32_t off = t.offset(j, pos); off != 0) ++counts[off];
  }
  size_t support = 0;
  uint32_t max_count = 0, total = 0;
  for (uint32_t v = 1; v < W; ++v) {
    support += counts[v] > 0;
    max_count = std::max(max_count, counts[v]);
    total += counts[v];
  }
  CHECK(support == W - 1);  // every feasible nonzero offset occurs
  // No offset dominates: at most 2x the uniform share.
  CHECK(double(max_count) <= 2.0 * double(total) / double(W - 1));
}

TEST_SUITE_END();
