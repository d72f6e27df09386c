#include <doctest.h>

#include "gridmaint/pboracle.hpp"
#include "stats_oracle.hpp"

using namespace gridmaint;

TEST_CASE("Poisson-Binomial pmf and cdf") {
  auto p1 = pb_pmf(std::vector<double>{0.3});
  CHECK(p1[0] == doctest::Approx(0.7));
  CHECK(p1[1] == doctest::Approx(0.3));
  auto p2 = pb_pmf(std::vector<double>{0.5, 0.5});
  CHECK(p2[0] == doctest::Approx(0.25));
  CHECK(p2[1] == doctest::Approx(0.5));
  CHECK(p2[2] == doctest::Approx(0.25));
  const std::vector<double> p3{0.1, 0.2, 0.3};
  CHECK(pb_pmf(p3)[0] == doctest::Approx(0.504).epsilon(1e-14));
  double s = 0.0;
  for (double x : pb_pmf(p3)) s += x;
  CHECK(std::abs(s - 1.0) <= 1e-12);
  CHECK(pb_cdf(std::vector<double>{0.5, 0.5}, 1) == doctest::Approx(0.75));
  CHECK(pb_cdf(p3, 1) == doctest::Approx(0.902).epsilon(1e-14));
  CHECK(pb_cdf(p3, 3) == 1.0);
  CHECK(pb_cdf(p3, -1) == 0.0);
  CHECK(pb_cdf(p3, 1) == doctest::Approx(oracle::brute_pb_cdf(p3, 1)).epsilon(1e-15));
}

TEST_CASE("pmf of long profiles matches enumeration") {
  std::vector<double> p;
  for (int i = 0; i < 14; ++i) p.push_back((i * 37 % 100) / 100.0);
  for (int k = 0; k <= 14; ++k) CHECK(std::abs(pb_cdf(p, k) - oracle::brute_pb_cdf(p, k)) <= 1e-12);
}

namespace {

SuccessProbTable example_table() {
  // G0 in H', G1 in H'', L2 and L3 in H'.
  return SuccessProbTable::from_cdfs(
      {ComponentKind::Generator, ComponentKind::Generator, ComponentKind::Line, ComponentKind::Line},
      {{0.1, 0.4, 0.9}, {0.02, 0.04, 0.05}, {0.0, 0.0, 0.2}, {0.0, 0.1, 0.2}}, {0, 2, 3}, {1});
}

}  // namespace

TEST_CASE("success probabilities") {
  const auto tab = example_table();
  CHECK(tab.at(0, 2) == doctest::Approx(0.4));
  CHECK(tab.at(0, 4) == doctest::Approx(0.9));
  auto [g, l] = success_probs(Schedule{{2, 1, 1}}, tab);
  CHECK(g.probs[0] == doctest::Approx(0.4));
  CHECK(g.probs[1] == doctest::Approx(0.05));
  CHECK(l.probs[0] == 0.0);
  auto [g2, l2] = success_probs(Schedule{{4, 4, 4}}, tab);
  CHECK(g2.probs[0] == doctest::Approx(0.9));
  CHECK(l2.probs[1] == doctest::Approx(0.2));
  CHECK_THROWS(success_probs(Schedule{{1, 1}}, tab));
}

TEST_CASE("joint oracle") {
  const auto tab = example_table();
  const double p = joint_oracle(Schedule{{2, 3, 2}}, tab, 1, 1);
  const double g = oracle::brute_pb_cdf({0.4, 0.05}, 1), l = oracle::brute_pb_cdf({0.2, 0.1}, 1);
  CHECK(p == doctest::Approx(g * l).epsilon(1e-14));
  const auto zero = SuccessProbTable::from_cdfs({ComponentKind::Generator, ComponentKind::Line}, {{0, 0}, {0, 0}},
                                                {0, 1}, {});
  CHECK(joint_oracle(Schedule{{3, 3}}, zero, 1, 1) == 1.0);
  const auto two = SuccessProbTable::from_cdfs({ComponentKind::Generator, ComponentKind::Generator},
                                               {{0.5}, {0.5}}, {0, 1}, {});
  CHECK(joint_oracle(Schedule{{1, 1}}, two, 1, 1) == doctest::Approx(0.75));
  const auto five = SuccessProbTable::from_cdfs(
      {ComponentKind::Generator, ComponentKind::Generator, ComponentKind::Generator, ComponentKind::Line,
       ComponentKind::Line},
      {{0.1}, {0.2}, {0.3}, {0.2}, {0.2}}, {0, 1, 2, 3, 4}, {});
  CHECK(joint_oracle(Schedule{{1, 1, 1, 1, 1}}, five, 1, 1) == doctest::Approx(0.86592).epsilon(1e-14));
}

TEST_CASE("schedule forms") {
  const std::vector<std::vector<int>> bin{{0, 1, 0}, {0, 0, 1}};
  CHECK(schedule_from_binary(bin) == Schedule{{2, 3}});
  CHECK(schedule_to_binary(Schedule{{2, 3}}, 2) == bin);
  CHECK_THROWS(schedule_from_binary({{1, 1, 0}}));
  CHECK_THROWS(schedule_from_binary({{0, 0, 0}}));
  const auto all = enumerate_schedules(2, 2);
  CHECK(all.size() == 9);
  CHECK(all.front() == Schedule{{1, 1}});
  CHECK(all[1] == Schedule{{1, 2}});
  CHECK(all.back() == Schedule{{3, 3}});
}

TEST_CASE("table csv export") {
  const auto csv = example_table().to_csv({"G1", "G2", "L1", "L2"});
  CHECK(csv.find("G1") != std::string::npos);
  CHECK(csv.find("L2") != std::string::npos);
}
