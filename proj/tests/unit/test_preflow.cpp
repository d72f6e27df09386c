#include <doctest.h>

#include "fixtures.hpp"
#include "gridmaint/preflow.hpp"

using namespace gridmaint;

namespace {

const char* kTwoBus = R"(mpc.baseMVA = 100;
mpc.bus = [
	1	3	0	0	0	0	1	1	0	345	1	1.1	0.9;
	2	1	50	0	0	0	1	1	0	345	1	1.1	0.9;
];
mpc.gen = [
	1	0	0	0	0	1	100	1	300	0;
];
mpc.branch = [
	1	2	0	0.1	0	100	0	0	0	0	1	-360	360;
];
mpc.gencost = [
	2	0	0	2	10	0;
];
)";

}  // namespace

TEST_CASE("radial two-bus extremes") {
  const auto net = parse_case(kTwoBus);
  CHECK(flow_extreme(net, {0.0, 50.0}, 0, FlowDirection::Upper) == doctest::Approx(50.0));
  CHECK(flow_extreme(net, {0.0, 0.0}, 0, FlowDirection::Upper) == doctest::Approx(0.0));
  CHECK(flow_extreme(net, {0.0, 0.0}, 0, FlowDirection::Lower) == doctest::Approx(0.0));
  CHECK(flow_extreme(net, {0.0, 150.0}, 0, FlowDirection::Upper) >= 100.0 - 1e-9);
}

TEST_CASE("redundancy flags on the two-bus system") {
  const auto net = parse_case(kTwoBus);
  DemandGrid d(2, 1, 2, 0.0);
  d.at(1, 0, 0) = d.at(1, 0, 1) = 50.0;
  const auto rep = analyze(net, d, FlowMode::I);
  CHECK(rep.count_redundant() == static_cast<int>(rep.entries.size()));
  CHECK(rep.covers(0, FlowDirection::Upper, 1, 1));
  d.at(1, 0, 1) = 150.0;
  const auto tight = analyze(net, d, FlowMode::III);
  CHECK(tight.covers(0, FlowDirection::Upper, 1, 1));
  CHECK_FALSE(tight.covers(0, FlowDirection::Upper, 1, 2));
}

TEST_CASE("finer modes cover more rows") {
  const auto net = parse_case(fixtures::case9_text());
  RunConfig cfg;
  cfg.horizon_days = 2;
  cfg.hours_per_day = 6;
  const auto d = fixtures::nominal_demand(net, cfg, 3, 0.2);
  const auto r1 = analyze(net, d, FlowMode::I), r2 = analyze(net, d, FlowMode::II), r3 = analyze(net, d, FlowMode::III);
  for (int l = 0; l < static_cast<int>(net.lines.size()); ++l)
    for (auto dir : {FlowDirection::Upper, FlowDirection::Lower})
      for (int t = 1; t <= 2; ++t)
        for (int s = 1; s <= 6; ++s) {
          if (r1.covers(l, dir, t, s)) CHECK(r2.covers(l, dir, t, s));
          if (r2.covers(l, dir, t, s)) CHECK(r3.covers(l, dir, t, s));
        }
}

TEST_CASE("constant demand makes the modes agree") {
  const auto net = parse_case(fixtures::toy3_case_text());
  DemandGrid d(3, 2, 3, 0.0);
  for (int t = 0; t < 2; ++t)
    for (int s = 0; s < 3; ++s) {
      d.at(1, t, s) = 60.0;
      d.at(2, t, s) = 80.0;
    }
  const auto r1 = analyze(net, d, FlowMode::I), r3 = analyze(net, d, FlowMode::III);
  for (int l = 0; l < 3; ++l)
    for (auto dir : {FlowDirection::Upper, FlowDirection::Lower})
      for (int t = 1; t <= 2; ++t)
        for (int s = 1; s <= 3; ++s) CHECK(r1.covers(l, dir, t, s) == r3.covers(l, dir, t, s));
}

TEST_CASE("switchable lines are skipped and the mask honors eligibility") {
  const auto net = parse_case(fixtures::toy3_case_text());
  DemandGrid d(3, 1, 2, 10.0);
  const std::vector<std::uint8_t> sw{1, 0, 0};
  const auto rep = analyze(net, d, FlowMode::III, sw);
  for (const auto& e : rep.entries) CHECK(e.line != 0);
  const auto mask = rep.to_mask(net, 1, 2, sw);
  CHECK_FALSE(mask.eligible(0));
  CHECK_FALSE(mask.upper_dropped(0, 0, 0));
  CHECK(rep.to_csv(net).find("line") != std::string::npos);
}
