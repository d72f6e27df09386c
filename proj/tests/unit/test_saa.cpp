#include <doctest.h>

#include "fixtures.hpp"
#include "gridmaint/saa.hpp"
#include "stats_oracle.hpp"

using namespace gridmaint;

namespace {

Instance quiet_instance(std::vector<double> cdf_value) {
  RunConfig cfg;
  cfg.horizon_days = 2;
  cfg.hours_per_day = 3;
  auto net = parse_case(fixtures::toy3_case_text());
  auto d = fixtures::nominal_demand(net, cfg);
  std::vector<std::vector<double>> cdfs(5, cdf_value);
  return make_instance_from_cdfs(net, d, cfg, cdfs, {0, 2});
}

}  // namespace

TEST_CASE("identical replicates have zero spread") {
  const auto s = saa_statistics({7.0, 7.0, 7.0, 7.0, 7.0}, {8.0, 9.0, 10.0}, 0.05);
  CHECK(s.sigma_l == 0.0);
  CHECK(s.lb_lo == s.lb_hi);
  CHECK(s.mu_l == 7.0);
  CHECK(s.mu_u == doctest::Approx(9.0));
}

TEST_CASE("statistics match an independent evaluation") {
  const std::vector<double> z{101.5, 99.0, 104.2, 98.7, 100.1, 103.3};
  const std::vector<double> obj{110, 95, 120, 101, 99, 107, 104, 98, 102, 111};
  for (double alpha : {0.05, 0.2}) {
    const auto s = saa_statistics(z, obj, alpha);
    const auto r = oracle::saa_reference(z, obj, alpha);
    CHECK(s.mu_u == doctest::Approx(r.mu_u).epsilon(1e-12));
    CHECK(s.sigma_u == doctest::Approx(r.sigma_u).epsilon(1e-12));
    CHECK(s.mu_l == doctest::Approx(r.mu_l).epsilon(1e-12));
    CHECK(s.sigma_l == doctest::Approx(r.sigma_l).epsilon(1e-12));
    CHECK(s.ub_hi == doctest::Approx(r.ub_hi).epsilon(1e-9));
    CHECK(s.lb_lo == doctest::Approx(r.lb_lo).epsilon(1e-9));
    CHECK(s.gap == doctest::Approx(r.gap).epsilon(1e-9));
  }
}

TEST_CASE("failure-free evaluation") {
  const auto inst = quiet_instance({0.0, 0.0});
  const auto test = sample_test_scenarios(inst, 5, 3);
  const Schedule v{{3, 3}};
  const auto rep = evaluate_schedule(inst, v, test);
  CHECK(rep.violation_freq == 0.0);
  CHECK(rep.fail_gen_hp == 0.0);
  CHECK(rep.fail_line_hpp == 0.0);
  double uc = 0.0;
  for (int t = 1; t <= 2; ++t)
    uc += solve_subproblem(build_subproblem(inst, Availability::all_on(inst.net), t)).objective;
  CHECK(rep.operations == doctest::Approx(uc).epsilon(1e-6));
  CHECK(rep.gen_maint == 0.0);
}

TEST_CASE("early maintenance avoids corrective events") {
  const auto inst = quiet_instance({0.0, 1.0});
  const auto test = sample_test_scenarios(inst, 20, 4);
  const auto rep = evaluate_schedule(inst, Schedule{{1, 1}}, test);
  CHECK(rep.fail_gen_hp == 0.0);
  CHECK(rep.fail_line_hp == 0.0);
}

TEST_CASE("shared cache reproduces fresh evaluation") {
  const auto inst = quiet_instance({0.3, 0.6});
  const auto test = sample_test_scenarios(inst, 30, 5);
  EvalCache cache;
  const auto a = evaluate_schedule(inst, Schedule{{1, 2}}, test, &cache);
  const auto b = evaluate_schedule(inst, Schedule{{2, 3}}, test, &cache);
  const auto fresh = evaluate_schedule(inst, Schedule{{2, 3}}, test);
  CHECK(b.total == doctest::Approx(fresh.total).epsilon(1e-6));
  for (size_t k = 0; k < fresh.objective.size(); ++k)
    CHECK(b.objective[k] == doctest::Approx(fresh.objective[k]).epsilon(1e-6));
  CHECK(b.solves <= fresh.solves);
  CHECK(cache.size() >= static_cast<size_t>(a.distinct_days));
}

TEST_CASE("comparison table") {
  EvalReport a, b;
  a.total = 100;
  b.total = 80;
  const auto csv = comparison_csv({{"deterministic", a}, {"stochastic", b}}, 0);
  CHECK(csv.find("stochastic") != std::string::npos);
}
