#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "gridmaint/ucmodel.hpp"

using namespace gridmaint;

namespace {

const char* kOneBus = R"(mpc.baseMVA = 100;
mpc.bus = [
	1	3	100	0	0	0	1	1	0	345	1	1.1	0.9;
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

double day_cost(const Network& net, const DemandGrid& d, const Availability& a, int t = 1) {
  return solve_subproblem(build_subproblem(net, d, a, t), 1e-9).objective;
}

std::vector<int> row(const std::vector<StatusVector>& days, int i) {
  std::vector<int> r;
  for (const auto& s : days) r.push_back(s.bits[i]);
  return r;
}

}  // namespace

TEST_CASE("status vectors of the two-component example") {
  const std::vector<Durations> dur{{1, 2}, {1, 2}};
  const std::vector<int> xi{1, 4};
  auto matrix = [&](const Schedule& v) {
    std::vector<StatusVector> days;
    for (int t = 1; t <= 4; ++t) days.push_back(status_vector(v, xi, t, dur, 4));
    return days;
  };
  const auto u = matrix(Schedule{{2, 2}});
  CHECK(row(u, 0) == std::vector<int>{0, 0, 1, 1});
  CHECK(row(u, 1) == std::vector<int>{1, 0, 1, 1});
  const auto w = matrix(Schedule{{3, 3}});
  CHECK(row(w, 0) == std::vector<int>{0, 0, 1, 1});
  CHECK(row(w, 1) == std::vector<int>{1, 1, 0, 1});
  // Maintenance at the failure period is corrective.
  const auto z = matrix(Schedule{{3, 4}});
  CHECK(row(z, 1) == std::vector<int>{1, 1, 1, 0});
  CHECK(u[0] == w[0]);
  CHECK(u[3] == w[3]);
}

TEST_CASE("never failing and unscheduled is always available") {
  const std::vector<Durations> dur{{2, 3}};
  for (int t = 1; t <= 4; ++t) CHECK(status_vector(Schedule{{5}}, {5}, t, dur, 4).bits[0] == 1);
}

TEST_CASE("single-bus day costs") {
  auto net = parse_case(kOneBus);
  DemandGrid zero(1, 1, 24, 0.0);
  const auto on = Availability::all_on(net);
  const auto dm = build_subproblem(net, zero, on, 1);
  const auto r0 = solve_subproblem(dm);
  CHECK(r0.objective == doctest::Approx(0.0));
  for (double x : r0.sol.x[0]) CHECK(x == doctest::Approx(0.0));

  DemandGrid d(1, 1, 24, 100.0);
  CHECK(day_cost(net, d, on) == doctest::Approx(24 * 1000.0));

  net.buses[0].curtail_cost = 1000.0;
  Availability off = on;
  off.gen[0] = 0;
  CHECK(day_cost(net, d, off) == doctest::Approx(24 * 100 * 1000.0));
}

TEST_CASE("congested triangle dispatch") {
  auto net = parse_case(fixtures::toy3_case_text());
  net.lines[2].flow_limit = 60.0;
  DemandGrid d(3, 1, 1, 0.0);
  d.at(1, 0, 0) = 60.0;
  d.at(2, 0, 0) = 80.0;
  // Enumerate the dispatch of the expensive unit; the cheap unit covers the rest.
  // Equal reactances: f12 = (P1 - P2)/3, f23 = (P1 + 2 P2)/3, f13 = (2 P1 + P2)/3.
  double best = kInf;
  for (int i = 0; i <= 10000; ++i) {
    const double g2 = i * 0.01, g1 = 140.0 - g2;
    if (g1 < 0 || g1 > 150) continue;
    const double p1 = g1, p2 = g2 - 60.0;
    const double f12 = (p1 - p2) / 3, f23 = (p1 + 2 * p2) / 3, f13 = (2 * p1 + p2) / 3;
    if (std::abs(f12) > 100 + 1e-9 || std::abs(f23) > 60 + 1e-9 || std::abs(f13) > 60 + 1e-9) continue;
    best = std::min(best, 10 * g1 + 30 * g2);
  }
  CHECK(best == doctest::Approx(2200.0));
  CHECK(day_cost(net, d, Availability::all_on(net)) == doctest::Approx(best));
}

TEST_CASE("line outage reroutes flow") {
  auto net = parse_case(fixtures::toy3_case_text());
  DemandGrid d(3, 1, 1, 0.0);
  d.at(1, 0, 0) = 60.0;
  d.at(2, 0, 0) = 80.0;
  auto a = Availability::all_on(net);
  a.line[2] = 0;
  // Bus 3 is fed through 2-3 only (60 MW): 20 MW curtailed, f12 <= 100 forces 20 MW from unit 2.
  const double cd = net.buses[2].curtail_cost;
  CHECK(day_cost(net, d, a) == doctest::Approx(10 * 100 + 30 * 20 + cd * 20));
}

TEST_CASE("lower bounds") {
  fixtures::ToySpec spec;
  spec.max_h = 2;
  const auto inst = fixtures::random_toy(3, spec);
  auto be = make_default_backend();
  const auto schedules = enumerate_schedules(inst.num_maintainable(), inst.horizon());
  for (const auto& xi : std::vector<std::vector<int>>{{1, 4}, {4, 4}, {2, 3}}) {
    std::vector<int> x(xi.begin(), xi.begin() + inst.num_maintainable());
    for (int t = 1; t <= inst.horizon(); ++t) {
      const double L = lp_lower_bound(inst, x, t, *be);
      CHECK(L >= 0.0);
      for (const auto& v : schedules) {
        const auto s = status_vector(inst, v, x, t);
        const double q =
            solve_subproblem(build_subproblem(inst, availability_from_status(inst, s), t), 1e-9, *be).objective;
        CHECK(L <= q * (1 + 1e-7) + 1e-6);
      }
    }
  }
  RunConfig cfg;
  cfg.horizon_days = 2;
  cfg.hours_per_day = 4;
  auto net = parse_case(kOneBus);
  const auto zero = make_instance_from_cdfs(net, DemandGrid(1, 2, 4, 0.0), cfg, {{0.5, 0.5}}, {0});
  CHECK(lp_lower_bound(zero, {1}, 1) == doctest::Approx(0.0));
}

TEST_CASE("lower bound memo") {
  const auto inst = fixtures::random_toy(4, {});
  auto be = make_default_backend();
  LowerBoundMemo memo;
  const std::vector<int> xi(inst.num_maintainable(), inst.tbar());
  const double a = memo.get(inst, xi, 1, *be);
  CHECK(memo.get(inst, xi, 1, *be) == a);
  CHECK(memo.size() == 1);
  CHECK(a == doctest::Approx(lp_lower_bound(inst, xi, 1)));
}

TEST_CASE("equal status gives equal day cost") {
  fixtures::ToySpec spec;
  spec.max_h = 2;
  const auto inst = fixtures::random_toy(5, spec);
  auto be = make_default_backend();
  const auto schedules = enumerate_schedules(inst.num_maintainable(), inst.horizon());
  const std::vector<int> xi(inst.num_maintainable(), 2);
  for (int t = 1; t <= inst.horizon(); ++t)
    for (size_t i = 0; i < schedules.size(); ++i)
      for (size_t j = i + 1; j < schedules.size(); ++j) {
        const auto a = status_vector(inst, schedules[i], xi, t), b = status_vector(inst, schedules[j], xi, t);
        if (!(a == b)) continue;
        const double qa = solve_subproblem(build_subproblem(inst, availability_from_status(inst, a), t), 1e-9, *be)
                              .objective;
        const double qb = solve_subproblem(build_subproblem(inst, availability_from_status(inst, b), t), 1e-9, *be)
                              .objective;
        CHECK(qa == doctest::Approx(qb).epsilon(1e-6));
      }
}

TEST_CASE("day model shape and export") {
  const auto inst = fixtures::random_toy(6, {});
  const auto m = build_subproblem(inst, Availability::all_on(inst.net), 1);
  CHECK(m.hours == inst.hours());
  CHECK(m.p.size() == inst.net.generators.size());
  CHECK(m.f.size() == inst.net.lines.size());
  CHECK(export_lp(m).size() > 0);
}
