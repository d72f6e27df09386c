#include <doctest.h>

#include "gridmaint/solver.hpp"

using namespace gridmaint;

TEST_CASE("continuous minimum at a bound") {
  ModelSpec m;
  const int x = m.add_var(-kInf, kInf, 1.0);
  m.add_row({x}, {1.0}, 3.0, kInf);
  const auto r = solve(m);
  REQUIRE(r.ok());
  CHECK(r.objective == doctest::Approx(3.0));
  CHECK(r.x[x] == doctest::Approx(3.0));
}

TEST_CASE("binary knapsack") {
  ModelSpec m;
  m.sense = ObjSense::Maximize;
  const int a = m.add_var(0, 1, 2.0, true);
  const int b = m.add_var(0, 1, 3.0, true);
  m.add_row({a, b}, {1.0, 1.0}, -kInf, 1.0);
  CHECK(m.has_integers());
  const auto r = solve(m);
  REQUIRE(r.ok());
  CHECK(r.objective == doctest::Approx(3.0));
  CHECK(r.x[b] == doctest::Approx(1.0));
  CHECK(r.x[a] == doctest::Approx(0.0));
}

TEST_CASE("infeasible model") {
  ModelSpec m;
  const int x = m.add_var(-kInf, kInf, 0.0);
  m.add_row({x}, {1.0}, -kInf, 0.0);
  m.add_row({x}, {1.0}, 1.0, kInf);
  CHECK(solve(m).status == SolveStatus::Infeasible);
}

TEST_CASE("objective offset and model validation") {
  ModelSpec m;
  m.obj_offset = 5.0;
  m.add_var(1.0, 2.0, 1.0);
  CHECK(solve(m).objective == doctest::Approx(6.0));
  ModelSpec bad;
  bad.add_var(0, 1, 0);
  bad.rows.push_back(Row{{3}, {1.0}, 0.0, 1.0, {}});
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  ModelSpec inverted;
  inverted.add_var(2, 1, 0);
  CHECK_THROWS_AS(inverted.validate(), ValidationError);
}

TEST_CASE("cone rows on a linear backend") {
  ModelSpec m;
  const int a = m.add_var(0, 1, 0), b = m.add_var(0, 1, 0), c = m.add_var(0, 1, 0);
  m.cones.push_back(RotatedCone{a, b, {c}});
  auto be = make_default_backend();
  if (!be->supports_cones()) CHECK_THROWS_AS(be->solve(m, {}), CapabilityError);
}

TEST_CASE("lp export names every row") {
  ModelSpec m;
  const int x = m.add_var(0, 4, 1.0, false, "x");
  const int y = m.add_var(0, 1, 2.0, true, "y");
  m.add_row({x, y}, {1.0, 1.0}, 1.0, kInf, "cover");
  const auto lp = to_lp_format(m);
  CHECK(lp.find("cover") != std::string::npos);
  CHECK(lp.find("x") != std::string::npos);
}
