#include <doctest.h>

#include "fixtures.hpp"
#include "gridmaint/decomp.hpp"
#include "gridmaint/saa.hpp"

using namespace gridmaint;

namespace {

ScenarioSet scenarios_for(const Instance& inst, int n, std::uint64_t seed) {
  return sample_training_scenarios(inst, n, seed);
}

}  // namespace

TEST_CASE("no maintainable components reduces to unit commitment") {
  RunConfig cfg;
  cfg.horizon_days = 2;
  cfg.hours_per_day = 4;
  auto net = parse_case(fixtures::toy3_case_text());
  auto d = fixtures::nominal_demand(net, cfg);
  std::vector<std::vector<double>> cdfs(5, std::vector<double>(2, 0.0));
  const auto inst = make_instance_from_cdfs(net, d, cfg, cdfs, {});
  const auto sc = scenarios_for(inst, 2, 1);
  const auto rep = solve_plan(inst, sc);
  double uc = 0.0;
  for (int t = 1; t <= 2; ++t) uc += solve_subproblem(build_subproblem(inst, Availability::all_on(net), t)).objective;
  CHECK(rep.status == RunStatus::Optimal);
  CHECK(rep.ub == doctest::Approx(uc).epsilon(1e-6));
}

TEST_CASE("solved and aliased days partition the scenarios") {
  fixtures::ToySpec spec;
  spec.max_h = 2;
  const auto inst = fixtures::random_toy(2, spec);
  const auto sc = scenarios_for(inst, 4, 2);
  Decomposition dec(inst, sc);
  dec.initialize();
  long solved = 0;
  for (int it = 0; it < 100; ++it) {
    const bool done = dec.iterate_once();
    const auto& s = dec.last();
    if (!s.solved_per_day.empty())
      for (int t = 0; t < inst.horizon(); ++t) {
        CHECK(s.solved_per_day[t] + s.aliased_per_day[t] == sc.size());
        solved += s.solved_per_day[t];
      }
    if (done) break;
  }
  CHECK(static_cast<size_t>(solved) <= dec.cache().total());
}

TEST_CASE("planning is deterministic") {
  const auto inst = fixtures::random_toy(7, {});
  const auto sc = scenarios_for(inst, 3, 7);
  const auto a = solve_plan(inst, sc);
  const auto b = solve_plan(inst, sc);
  CHECK(a.incumbent == b.incumbent);
  CHECK(a.ub == b.ub);
  CHECK(a.iterations == b.iterations);
  CHECK(a.incumbent_hash == schedule_hash(a.incumbent));
}

TEST_CASE("void chance constraint makes exact and safe modes agree") {
  fixtures::ToySpec spec;
  spec.alpha = 0.999999;
  RunConfig base;
  base.rho_gen = 3;
  base.rho_line = 3;
  const auto exact = fixtures::random_toy(8, spec, base);
  base.chance = ChanceMode::Safe;
  const auto safe = fixtures::random_toy(8, spec, base);
  const auto sc = scenarios_for(exact, 3, 8);
  CHECK(solve_plan(exact, sc).ub == doctest::Approx(solve_plan(safe, sc).ub).epsilon(1e-6));
}

TEST_CASE("status cache") {
  StatusCache c(2);
  const StatusVector s{1, {1, 0}};
  CHECK(c.find(s) == nullptr);
  c.insert(s, 12.5);
  REQUIRE(c.find(s) != nullptr);
  CHECK(*c.find(s) == 12.5);
  CHECK(c.find(StatusVector{2, {1, 0}}) == nullptr);
  CHECK(c.total() == 1);
}

TEST_CASE("schedule csv round trip") {
  const std::vector<std::string> labels{"G1", "L4"};
  const Schedule v{{3, 5}};
  CHECK(schedule_from_csv(schedule_to_csv(v, labels), labels) == v);
  CHECK(schedule_hash(v) != schedule_hash(Schedule{{5, 3}}));
}
