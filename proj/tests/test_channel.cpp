#include <cmath>

#include "doctest.h"
#include "macagg/channel.hpp"
#include "macagg/errors.hpp"
#include "test_util.hpp"

using namespace macagg;
using namespace macagg::test;

TEST_SUITE_BEGIN("channel");

TEST_CASE("bernoulli edges and concentration") {
  auto all = gen_bernoulli(0.0, 100, 1);
  for (size_t i = 0; i < all.size(); ++i) CHECK(all.received(i));
  auto none = gen_bernoulli(1.0, 100, 1);
  for (size_t i = 0; i < none.size(); ++i) CHECK_FALSE(none.received(i));

  auto t = gen_bernoulli(0.05, 100000, 7);
  double per = trace_stats(t).per;
  CHECK(per > 0.045);
  CHECK(per < 0.055);

  CHECK(gen_bernoulli(0.3, 50, 9).flags == gen_bernoulli(0.3, 50, 9).flags);
  CHECK(gen_bernoulli(0.3, 5000, 9).flags != gen_bernoulli(0.3, 5000, 10).flags);
}

TEST_CASE("disjoint seeds give uncorrelated traces") {
  auto a = gen_bernoulli(0.5, 100000, 1);
  auto b = gen_bernoulli(0.5, 100000, 2);
  double mean_a = 1.0 - trace_stats(a).per;
  double mean_b = 1.0 - trace_stats(b).per;
  double cov = 0;
  for (size_t i = 0; i < a.size(); ++i)
    cov += (double(a.flags[i]) - mean_a) * (double(b.flags[i]) - mean_b);
  cov /= double(a.size());
  double corr = cov / std::sqrt(mean_a * (1 - mean_a) * mean_b * (1 - mean_b));
  CHECK(std::abs(corr) < 0.01);
}

TEST_CASE("gilbert-elliott: state-independent loss behaves like bernoulli") {
  GilbertElliottParams p{0.3, 0.3, 0.2, 0.2};
  auto t = gen_gilbert_elliott(p, 100000, 3);
  auto st = trace_stats(t);
  CHECK(st.per == doctest::Approx(0.2).epsilon(0.05));

  // Loss-run lengths must follow the geometric law of an iid channel:
  // P[run = k] = 0.8 * 0.2^(k-1).
  size_t bins = 6;
  std::vector<double> observed(bins, 0.0);
  size_t runs = 0;
  for (auto& [len, cnt] : st.burst_histogram) {
    observed[std::min(len - 1, bins - 1)] += double(cnt);
    runs += cnt;
  }
  double chi2 = 0;
  for (size_t k = 0; k < bins; ++k) {
    double pk = k + 1 < bins ? 0.8 * std::pow(0.2, double(k)) : std::pow(0.2, double(bins - 1));
    double expect = pk * double(runs);
    chi2 += (observed[k] - expect) * (observed[k] - expect) / expect;
  }
  CHECK(chi2 < chi2_crit_99(bins - 1));
}

TEST_CASE("gilbert-elliott edges and burst fitting") {
  GilbertElliottParams quiet{0.0, 1.0, 0.0, 1.0};
  auto t = gen_gilbert_elliott(quiet, 1000, 5);
  for (size_t i = 0; i < t.size(); ++i) CHECK(t.received(i));

  // Mean sojourn in the bad state = 1/p_bad_to_good = 5 packets.
  GilbertElliottParams bursty{0.01, 0.2, 0.0, 1.0};
  auto tb = gen_gilbert_elliott(bursty, 1000000, 6);
  auto st = trace_stats(tb);
  CHECK(st.mean_burst == doctest::Approx(5.0).epsilon(0.10));
}

TEST_CASE("per_from_ber") {
  CHECK(per_from_ber(0.0, 552) == 0.0);
  CHECK(per_from_ber(0.5, 0) == 0.0);
  CHECK(per_from_ber(1e-4, 552) == doctest::Approx(0.0537).epsilon(0.002));
  // monotone in both arguments
  CHECK(per_from_ber(1e-4, 553) > per_from_ber(1e-4, 552));
  CHECK(per_from_ber(2e-4, 552) > per_from_ber(1e-4, 552));
  CHECK(per_from_ber(1.0, 3) == 1.0);
}

TEST_CASE("trace parsing") {
  auto t = parse_trace("1101");
  REQUIRE(t.size() == 4);
  CHECK(t.received(0));
  CHECK(t.received(1));
  CHECK_FALSE(t.received(2));
  CHECK(t.received(3));

  CHECK(parse_trace("1 1\n0 1 # trailing comment\n# full line\n1").size() == 5);

  CHECK_THROWS_AS(parse_trace("12"), ParseError);
  try {
    parse_trace("12");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 2);
  }
  CHECK_THROWS_AS(parse_trace("# only a comment\n"), ParseError);
}

TEST_CASE("round trips") {
  auto t = gen_bernoulli(0.3, 1000, 11);
  CHECK(parse_trace(write_trace(t)).flags == t.flags);
  // write(parse(text)) is the canonical form: stable under re-parsing.
  std::string canon = write_trace(parse_trace("1 0 1 1 # x\n0"));
  CHECK(write_trace(parse_trace(canon)) == canon);
}

TEST_CASE("trace statistics") {
  auto clean = trace_stats(trace_of("111111"));
  CHECK(clean.per == 0.0);
  CHECK(clean.burst_histogram.empty());
  CHECK(clean.mean_burst == 0.0);

  auto alt = trace_stats(trace_of("101010"));
  CHECK(alt.per == 0.5);
  CHECK(alt.mean_burst == 1.0);
  CHECK(alt.burst_histogram.at(1) == 3);

  auto runs = trace_stats(trace_of("1001101000"));
  CHECK(runs.lost == 6);
  CHECK(runs.burst_histogram.at(1) == 1);
  CHECK(runs.burst_histogram.at(2) == 1);
  CHECK(runs.burst_histogram.at(3) == 1);
}

TEST_CASE("scenario presets") {
  auto& ics = load_scenario("ics");
  CHECK(ics.layout.header_bits == 88);
  CHECK(ics.layout.payload_bits == 160);
  CHECK(ics.per == 0.0479);

  auto& uw = load_scenario("underwater");
  CHECK(uw.layout.header_bits == 31);
  CHECK(uw.layout.payload_bits == 128);
  CHECK(uw.per == 0.1646);

  CHECK(load_scenario("office").per == 0.0322);
  CHECK(load_scenario("city-static").per == 0.0197);
  CHECK(load_scenario("city-mobile").per == 0.0709);
  CHECK_THROWS_AS(load_scenario("factory"), std::invalid_argument);

  // GE presets reproduce the documented PER and burstiness.
  for (auto& sc : scenario_presets()) {
    auto t = gen_gilbert_elliott(sc.ge, 2000000, 42);
    auto st = trace_stats(t);
    CHECK_MESSAGE(st.per == doctest::Approx(sc.per).epsilon(0.05), sc.name);
    CHECK_MESSAGE(st.mean_burst == doctest::Approx(sc.mean_burst).epsilon(0.10),
                  sc.name);
  }
}

TEST_SUITE_END();
