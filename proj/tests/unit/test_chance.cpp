#include <doctest.h>

#include <algorithm>
#include <set>

#include "gridmaint/chance.hpp"

using namespace gridmaint;

namespace {

std::set<std::pair<int, int>> v_pairs(const LinearCut& c) {
  std::set<std::pair<int, int>> s;
  for (const auto& t : c.terms)
    if (t.var == CutVar::V) s.insert({t.a, t.b});
  return s;
}

}  // namespace

TEST_CASE("separation accepts certain schedules") {
  const auto s = separate(Schedule{{1, 2}}, [](const Schedule&) { return 1.0; }, 0.1, 3);
  CHECK(s.feasible);
  CHECK_FALSE(s.cut.has_value());
}

TEST_CASE("separation returns the extended cover cut") {
  const auto s = separate(Schedule{{2, 3}}, [](const Schedule&) { return 0.5; }, 0.1, 3);
  CHECK_FALSE(s.feasible);
  REQUIRE(s.cut.has_value());
  CHECK(v_pairs(*s.cut) == std::set<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 3}});
  CHECK(s.cut->sense == Sense::LessEq);
  CHECK(s.cut->rhs == 1.0);
  for (const auto& t : s.cut->terms) CHECK(t.coef == 1.0);
}

TEST_CASE("extended covers") {
  const auto same = extend_cover(Cover{{{0, 3}, {1, 3}}}, 3);
  CHECK(std::set<std::pair<int, int>>(same.begin(), same.end()) == std::set<std::pair<int, int>>{{0, 3}, {1, 3}});
  const auto e = extend_cover(Cover{{{0, 1}}}, 3);
  for (int t = 1; t <= 3; ++t) CHECK(std::find(e.begin(), e.end(), std::pair{0, t}) != e.end());
  const Cover c{{{0, 2}, {1, 4}, {2, 1}}};
  CHECK(extend_cover(c, 5).size() == (5 - 2 + 1) + (5 - 4 + 1) + (5 - 1 + 1));
  CHECK(cover_from_schedule(Schedule{{2, 4, 1}}).pairs == c.pairs);
}

TEST_CASE("cover cut right-hand side") {
  CHECK(cover_cut({{0, 1}, {1, 2}}, 2).rhs == 1.0);
  CHECK(cover_cut({{0, 2}}, 1).rhs == 0.0);
}

TEST_CASE("cover cut cuts off its schedule only") {
  const int tbar = 4;
  const Schedule v{{2, 3, 2}};
  const auto cut = cover_cut(extend_cover(cover_from_schedule(v), tbar), 3);
  CHECK(cut.v_lhs(v) == doctest::Approx(3.0));
  CHECK(cut.v_lhs(v) > cut.rhs);
  for (size_t h = 0; h < v.period.size(); ++h)
    for (int p = 1; p < v.period[h]; ++p) {
      Schedule w = v;
      w.period[h] = p;
      CHECK(cut.v_lhs(w) <= cut.rhs);
    }
  const auto plain = cover_cut(cover_from_schedule(v).pairs, 3);
  for (int a = 1; a <= tbar; ++a)
    for (int b = 1; b <= tbar; ++b)
      for (int c = 1; c <= tbar; ++c) {
        const Schedule w{{a, b, c}};
        CHECK(cut.v_lhs(w) >= plain.v_lhs(w));
      }
}

TEST_CASE("cut pool deduplicates") {
  CutPool pool;
  const auto c = cover_cut({{0, 1}, {1, 2}}, 2);
  CHECK(pool.add(c));
  CHECK_FALSE(pool.add(c));
  LinearCut reordered = c;
  std::reverse(reordered.terms.begin(), reordered.terms.end());
  CHECK_FALSE(pool.add(reordered));
  CHECK(pool.size() == 1);
  CHECK(canonical_key(c) == canonical_key(reordered));
}

TEST_CASE("safe approximation block") {
  const auto one = SuccessProbTable::from_cdfs({ComponentKind::Generator}, {{0.05, 0.05, 0.05}}, {0}, {});
  const auto b1 = safe_block(one, 1, 1, 0.1);
  CHECK(b1.x(Schedule{{1}}) == doctest::Approx(0.05));
  CHECK(b1.y(Schedule{{1}}) == doctest::Approx(0.0));
  CHECK(b1.accepts(Schedule{{1}}));

  const auto zero = SuccessProbTable::from_cdfs({ComponentKind::Generator, ComponentKind::Line}, {{0, 0}, {0, 0}},
                                                {0, 1}, {});
  for (double alpha : {0.01, 0.1, 0.5}) CHECK(safe_block(zero, 1, 1, alpha).accepts(Schedule{{1, 2}}));

  const auto pair = SuccessProbTable::from_cdfs({ComponentKind::Generator, ComponentKind::Line},
                                                {{0.2, 0.2}, {0.2, 0.2}}, {0, 1}, {});
  const auto b2 = safe_block(pair, 1, 1, 0.1);
  CHECK(b2.x(Schedule{{1, 1}}) == doctest::Approx(0.2));
  CHECK(b2.y(Schedule{{1, 1}}) == doctest::Approx(0.2));
  CHECK_FALSE(b2.accepts(Schedule{{1, 1}}));

  for (const auto& t : b2.gen_terms) CHECK((t.coef >= 0 && t.coef <= 1));
}

TEST_CASE("unmaintained loads enter as constants") {
  const auto tab = SuccessProbTable::from_cdfs({ComponentKind::Generator, ComponentKind::Generator},
                                               {{0.1, 0.3}, {0.02, 0.05}}, {0}, {1});
  const auto b = safe_block(tab, 1, 1, 0.1);
  CHECK(b.gen_const == doctest::Approx(0.05));
  CHECK(b.x(Schedule{{2}}) == doctest::Approx(0.35));
}

TEST_CASE("product region") {
  CHECK(in_product_region(0.05, 0.0, 0.1));
  CHECK_FALSE(in_product_region(0.2, 0.2, 0.1));
  CHECK(in_product_region(0.1, 0.1, 0.19));
}

TEST_CASE("tangent cuts") {
  CHECK(soc_outer_cuts(0.01, 0.01, 0.19).empty());
  const auto cuts = soc_outer_cuts(0.2, 0.2, 0.19);
  REQUIRE(cuts.size() == 1);
  double a = 0, b = 0;
  for (const auto& t : cuts[0].terms) (t.var == CutVar::LoadGen ? a : b) += t.coef;
  CHECK(cuts[0].sense == Sense::LessEq);
  // Gradient of (1-x)(1-y) at (0.1, 0.1) gives 0.9x + 0.9y <= 0.18.
  CHECK(a / b == doctest::Approx(1.0));
  CHECK(cuts[0].rhs / a == doctest::Approx(0.18 / 0.9));
  CHECK_FALSE(a * 0.2 + b * 0.2 <= cuts[0].rhs);
}

TEST_CASE("tangent cuts keep the whole region") {
  for (const double alpha : {0.05, 0.19, 0.4})
    for (const auto [px, py] : {std::pair{0.5, 0.1}, {0.9, 0.9}, {0.0, 0.7}, {0.3, 0.25}}) {
      const auto cuts = soc_outer_cuts(px, py, alpha);
      for (const auto& c : cuts) {
        double a = 0, b = 0;
        for (const auto& t : c.terms) (t.var == CutVar::LoadGen ? a : b) += t.coef;
        int bad = 0;
        for (int i = 0; i <= 1000; ++i)
          for (int j = 0; j <= 1000; ++j) {
            const double x = i * 1e-3, y = j * 1e-3;
            if ((1 - x) * (1 - y) >= 1 - alpha && a * x + b * y > c.rhs + 1e-12) ++bad;
          }
        CHECK(bad == 0);
      }
    }
}
