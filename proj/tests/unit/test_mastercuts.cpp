#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "gridmaint/mastercuts.hpp"
#include "gridmaint/ucmodel.hpp"

using namespace gridmaint;

namespace {

Instance one_component(int horizon) {
  RunConfig cfg;
  cfg.horizon_days = horizon;
  cfg.hours_per_day = 2;
  auto net = parse_case(fixtures::toy3_case_text());
  auto d = fixtures::nominal_demand(net, cfg);
  std::vector<std::vector<double>> cdfs(5, std::vector<double>(horizon, 0.0));
  return make_instance_from_cdfs(net, d, cfg, cdfs, {0});
}

std::set<int> as_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("maintenance cost coefficients") {
  const auto inst = one_component(4);
  const double cp = inst.pred_cost(0), cc = inst.corr_cost(0);
  CHECK(maintenance_costs(inst, {5})[0] == std::vector<double>{cp, cp, cp, cp, 0.0});
  CHECK(maintenance_costs(inst, {3})[0] == std::vector<double>{cp, cp, cc, cc, cc});
  CHECK(schedule_cost(inst, Schedule{{4}}, {3}) == doctest::Approx(cc));
}

TEST_CASE("master needs scenarios") {
  const auto inst = one_component(4);
  ScenarioSet none;
  none.components = inst.maintainable();
  none.horizon = 4;
  CHECK_THROWS(build_master(inst, none, {}, ThetaLayout::PerScenario));
}

TEST_CASE("integer L-shaped cut instantiation") {
  const int tbar = 3;
  const Schedule vs{{1, 2}};
  const auto cut = cut_intLS(vs, 100.0, 40.0, 0, 0, tbar);
  for (const auto& v : enumerate_schedules(2, 2)) {
    const double a = v.period[0] == 1, b = v.period[1] == 2;
    const double rest = (1 - a) + (1 - b);
    CHECK(cut_rhs_at(cut, v) == doctest::Approx(60.0 * (a + b - rest - 2) + 100.0));
  }
  CHECK(cut_rhs_at(cut, vs) == doctest::Approx(100.0));
  const auto flat = cut_intLS(vs, 40.0, 40.0, 0, 0, tbar);
  for (const auto& v : enumerate_schedules(2, 2)) CHECK(cut_rhs_at(flat, v) == doctest::Approx(40.0));
}

TEST_CASE("improved cut bounds") {
  const int tbar = 4;
  const Schedule vs{{2, 3}};
  const auto k = cut_optK(vs, 100.0, 40.0, 0, 0, tbar);
  const auto ls = cut_intLS(vs, 100.0, 40.0, 0, 0, tbar);
  CHECK(cut_rhs_at(k, vs) == doctest::Approx(100.0));
  for (const auto& v : enumerate_schedules(2, 3)) {
    if (v.period[0] != 2 || v.period[1] != 3) CHECK(cut_rhs_at(k, v) <= 40.0 + 1e-9);
    CHECK(cut_rhs_at(k, v) >= cut_rhs_at(ls, v) - 1e-9);
  }
  const auto plus = cut_optKplus(vs, 100.0, 40.0, scheduled_periods(vs), 0, 0, tbar);
  for (const auto& v : enumerate_schedules(2, 3)) CHECK(cut_rhs_at(plus, v) == doctest::Approx(cut_rhs_at(k, v)));
  const auto wide = cut_optKplus(vs, 100.0, 40.0, same_cost_periods(vs, {2, 5}, 3), 0, 0, tbar);
  for (const auto& v : enumerate_schedules(2, 3)) CHECK(cut_rhs_at(wide, v) >= cut_rhs_at(k, v) - 1e-9);
}

TEST_CASE("same cost periods") {
  CHECK(as_set(same_cost_periods(Schedule{{4}}, {2}, 4)[0]) == std::set<int>{2, 3, 4, 5});
  CHECK(as_set(same_cost_periods(Schedule{{2}}, {4}, 4)[0]) == std::set<int>{2});
  CHECK(as_set(same_cost_periods(Schedule{{3}}, {5}, 4)[0]) == std::set<int>{3});
}

TEST_CASE("same status periods") {
  const std::vector<Durations> dur{{1, 2}, {2, 3}};
  for (int t = 1; t <= 4; ++t)
    for (int m = 1; m <= 5; ++m) {
      const auto s = same_status_periods(Schedule{{m, 2}}, {5, 3}, t, dur, 4);
      CHECK(as_set(s[0]).count(m) == 1);
      const auto o = same_status_periods(Schedule{{m, 4}}, {5, 3}, t, dur, 4);
      CHECK(s[0] == o[0]);
      const auto ref = status_vector(Schedule{{m, 2}}, {5, 3}, t, dur, 4).bits[0];
      for (int p = 1; p <= 5; ++p)
        CHECK((as_set(s[0]).count(p) == 1) ==
              (status_vector(Schedule{{p, 2}}, {5, 3}, t, dur, 4).bits[0] == ref));
    }
  const auto early = same_status_periods(Schedule{{4}}, {5}, 1, {{1, 2}}, 4);
  for (int p = 2; p <= 5; ++p) CHECK(as_set(early[0]).count(p) == 1);
}

TEST_CASE("per-day cut reduces to the scheduled form") {
  const Schedule vs{{2, 3}};
  const auto a = cut_optKTplus(vs, 70.0, 20.0, scheduled_periods(vs), 1, 2, 4);
  const auto b = optimality_cut(vs, 70.0, 20.0, scheduled_periods(vs), false, 1, 2, 4);
  for (const auto& v : enumerate_schedules(2, 3)) CHECK(cut_rhs_at(a, v) == doctest::Approx(cut_rhs_at(b, v)));
}

TEST_CASE("aggregated cut is the weighted sum") {
  const Schedule vs{{2, 3}};
  const auto a = cut_optK(vs, 100.0, 40.0, 0, 0, 4);
  const auto b = cut_optK(vs, 60.0, 10.0, 1, 0, 4);
  const auto s = aggregate_cuts({a, b}, {0.25, 0.75});
  for (const auto& v : enumerate_schedules(2, 3))
    CHECK(cut_rhs_at(s, v) == doctest::Approx(0.25 * cut_rhs_at(a, v) + 0.75 * cut_rhs_at(b, v)));
}

TEST_CASE("theta layout follows the configuration") {
  RunConfig cfg;
  cfg.cuts = CutFamily::OptKTPlusPlus;
  CHECK(theta_layout(cfg) == ThetaLayout::PerScenarioDay);
  cfg.cuts = CutFamily::OptK;
  CHECK(theta_layout(cfg) == ThetaLayout::PerScenario);
  cfg.single_cut = true;
  CHECK(theta_layout(cfg) == ThetaLayout::Single);
}
