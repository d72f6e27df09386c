#include <doctest.h>

#include <string>

#include "fixtures.hpp"
#include "gridmaint/caseio.hpp"
#include "gridmaint/error.hpp"

using namespace gridmaint;

namespace {

const char* kSingleBus = R"(mpc.baseMVA = 100;
mpc.bus = [
	1	3	50	0	0	0	1	1	0	345	1	1.1	0.9;
];
mpc.gen = [
	1	0	0	0	0	1	100	1	200	0;
];
mpc.branch = [
];
mpc.gencost = [
	2	0	0	2	10	0;
];
)";

std::string demand_csv(int days, int hours, double value, int skip_day = -1) {
  std::string s = "bus,t,s,mw\n";
  for (int t = 1; t <= days; ++t)
    for (int h = 1; h <= hours; ++h)
      if (t != skip_day) s += "1," + std::to_string(t) + "," + std::to_string(h) + "," + std::to_string(value) + "\n";
  return s;
}

}  // namespace

TEST_CASE("nine-bus case has three generators and nine lines") {
  const auto net = parse_case(fixtures::case9_text());
  CHECK(net.generators.size() == 3);
  CHECK(net.lines.size() == 9);
  CHECK(net.buses.size() == 9);
  CHECK(net.generators[0].gen_cost == doctest::Approx(5.0));
  CHECK(net.generators[0].noload_cost == doctest::Approx(150.0));
  CHECK(net.generators[0].startup_cost == doctest::Approx(1500.0));
  CHECK(net.lines[0].susceptance == doctest::Approx(1.0 / 0.0576));
}

TEST_CASE("derived costs and big-M") {
  RunConfig cfg;
  const auto net = parse_case(fixtures::case9_text());
  const auto& g = net.generators[0];
  CHECK(g.maint_cost_pred == doctest::Approx(g.p_max * g.gen_cost * 24));
  CHECK(g.maint_cost_corr == doctest::Approx(3 * g.maint_cost_pred));
  double mean_cp = 0.0;
  for (const auto& x : net.generators) mean_cp += x.maint_cost_pred / 3;
  CHECK(net.lines[4].maint_cost_pred == doctest::Approx(0.1 * mean_cp));
  CHECK(net.lines[4].maint_cost_corr == doctest::Approx(3 * net.lines[4].maint_cost_pred));
  for (const auto& l : net.lines)
    CHECK(l.big_m ==
          doctest::Approx(net.flow_coeff(l) * (net.buses[l.from].delta_max - net.buses[l.to].delta_min)));
  for (const auto& b : net.buses) CHECK(b.curtail_cost == doctest::Approx(10 * net.max_gen_cost()));
}

TEST_CASE("single bus without lines is accepted") {
  const auto net = parse_case(kSingleBus);
  CHECK(net.buses.size() == 1);
  CHECK(net.lines.empty());
}

TEST_CASE("dangling bus reference is rejected") {
  std::string text = fixtures::toy3_case_text();
  text.replace(text.find("\t1\t3\t0\t0.1"), 4, "\t99\t3");
  CHECK_THROWS_AS(parse_case(text), Error);
}

TEST_CASE("disconnected network is rejected") {
  std::string text = fixtures::toy3_case_text();
  const auto a = text.find("\t2\t3\t0\t0.1");
  text.erase(text.rfind('\n', a) + 1, text.find('\n', a) - text.rfind('\n', a));
  const auto b = text.find("\t1\t3\t0\t0.1");
  text.erase(text.rfind('\n', b) + 1, text.find('\n', b) - text.rfind('\n', b));
  CHECK_THROWS_AS(parse_case(text), ValidationError);
}

TEST_CASE("syntax errors carry a line number") {
  std::string text = fixtures::toy3_case_text();
  text.replace(text.find("150\t0;"), 3, "1x0");
  try {
    parse_case(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("quadratic generation costs are rejected") {
  std::string text = fixtures::toy3_case_text();
  text.replace(text.find("2\t10\t0;"), 7, "3\t1\t10\t0;");
  CHECK_THROWS_AS(parse_case(text), Error);
}

TEST_CASE("case round trip") {
  const auto net = parse_case(fixtures::case9_text());
  CHECK(parse_case(serialize_case(net)) == net);
  const auto toy = parse_case(fixtures::toy3_case_text());
  CHECK(parse_case(serialize_case(toy)) == toy);
}

TEST_CASE("demand csv") {
  const auto net = parse_case(kSingleBus);
  RunConfig cfg;
  cfg.horizon_days = 2;
  const auto d = parse_demand_csv(demand_csv(2, 24, 40), net, cfg);
  CHECK(d.buses() == 1);
  CHECK(d.days() == 2);
  CHECK(d.hours() == 24);
  CHECK(d.at(0, 1, 23) == doctest::Approx(40));
  CHECK(parse_demand_csv(serialize_demand_csv(d, net), net, cfg) == d);

  SUBCASE("duplicate row") {
    CHECK_THROWS_AS(parse_demand_csv(demand_csv(2, 24, 40) + "1,1,1,40\n", net, cfg), Error);
  }
  SUBCASE("negative demand") {
    auto text = demand_csv(2, 24, 40);
    text.replace(text.find("1,1,1,40"), 8, "1,1,1,-5");
    CHECK_THROWS_AS(parse_demand_csv(text, net, cfg), Error);
  }
  SUBCASE("missing rows") { CHECK_THROWS_AS(parse_demand_csv(demand_csv(2, 24, 40, 2), net, cfg), Error); }
}

TEST_CASE("synthetic demand") {
  const auto net = parse_case(kSingleBus);
  RunConfig cfg;
  cfg.horizon_days = 2;
  cfg.hours_per_day = 3;
  std::vector<std::vector<double>> flat(2, std::vector<double>(3, 1.0));
  const auto d = synth_demand(net, cfg, flat, 1);
  for (double x : d.data()) CHECK(x == doctest::Approx(50.0));
  auto twice = flat;
  for (auto& r : twice)
    for (auto& x : r) x = 2.0;
  const auto d2 = synth_demand(net, cfg, twice, 1);
  for (size_t i = 0; i < d.data().size(); ++i) CHECK(d2.data()[i] == doctest::Approx(2 * d.data()[i]));
  CHECK(synth_demand(net, cfg, flat, 9, 0.1) == synth_demand(net, cfg, flat, 9, 0.1));
  CHECK_THROWS_AS(synth_demand(net, cfg, std::vector<std::vector<double>>(3, std::vector<double>(3, 1.0)), 1),
                  ValidationError);
}

TEST_CASE("config validation and hashing") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(parse_config(serialize_config(cfg)) == cfg);
  CHECK(config_hash(cfg) == config_hash(parse_config(serialize_config(cfg))));
  RunConfig other = cfg;
  other.seed = 2;
  CHECK(config_hash(other) != config_hash(cfg));

  RunConfig bad = cfg;
  bad.cuts = CutFamily::OptKTPlusPlus;
  bad.single_cut = true;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.alpha = 1.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.tau_c_gen = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.rho_gen = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  CHECK(parse_cut_family("optK+") == CutFamily::OptKPlus);
  CHECK(parse_cut_family("optKT++") == CutFamily::OptKTPlusPlus);
  CHECK(parse_chance_mode("safe") == ChanceMode::Safe);
  CHECK(parse_flow_mode("III") == FlowMode::III);
  CHECK_THROWS(parse_cut_family("bogus"));
}

TEST_CASE("default line risk budget") {
  RunConfig cfg;
  CHECK(cfg.resolved_rho_line(9) == 1);
  CHECK(cfg.resolved_rho_line(80) == 4);
  cfg.rho_line = 2;
  CHECK(cfg.resolved_rho_line(80) == 2);
}
