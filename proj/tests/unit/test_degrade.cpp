#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "gridmaint/degrade.hpp"
#include "stats_oracle.hpp"

using namespace gridmaint;

namespace {

SignalObservations obs_of(std::vector<double> inc) {
  SignalObservations o;
  o.t_obs = static_cast<int>(inc.size());
  o.increments = std::move(inc);
  return o;
}

}  // namespace

TEST_CASE("deterministic signals cross at the threshold") {
  DegradationPriors p{0.0, 0.0, 5.0, 0.0, 0.0, 100.0};
  CHECK(simulate_signal(p, 1.0, 1).failure_time == doctest::Approx(20.0));
  p.mu0 = 50.0;
  CHECK(simulate_signal(p, 1.0, 1).failure_time == doctest::Approx(10.0));
  p.mu0 = 3.0;
  p.mu1 = 7.0;
  CHECK(simulate_signal(p, 1.0, 1).failure_time == doctest::Approx(std::ceil(97.0 / 7.0)));
}

TEST_CASE("mean failure time of the generator priors") {
  const DegradationPriors p{20.0, 10.0, 5.0, 0.3, 3.0, 100.0};
  double sum = 0.0, sq = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double t = simulate_signal(p, 1.0, derive_seed(5, i)).failure_time;
    sum += t;
    sq += t * t;
  }
  const double mean = sum / n, sd = std::sqrt(sq / n - mean * mean);
  // Discrete observation adds about half a step to the continuous crossing time.
  CHECK(std::abs(mean - 16.0) < 4 * sd / std::sqrt(n) + 0.6);
}

TEST_CASE("posterior drift closed forms") {
  DegradationPriors p{20.0, 10.0, 5.0, 0.0, 3.0, 100.0};
  const auto o = obs_of({18.0, 6.0, 4.0, 5.5});
  CHECK(posterior_drift(p, o) == p.mu1);
  p.kappa0 = 0.0;
  p.kappa1 = 0.3;
  const double k1 = 0.09, s2 = 9.0;
  const double expect = (k1 * (o.total() - p.mu0) + p.mu1 * s2) / (k1 * o.t_obs + s2);
  CHECK(posterior_drift(p, o) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("posterior drift against an extended-precision evaluation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int r = 0; r < 200; ++r) {
    const DegradationPriors p{10 + 20 * U(rng), 0.5 + 10 * U(rng), 1 + 6 * U(rng), 0.05 + U(rng), 0.5 + 3 * U(rng),
                              100.0};
    std::vector<double> inc;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) inc.push_back(i == 0 ? 30 * U(rng) : 8 * U(rng));
    const auto o = obs_of(inc);
    // Gaussian conjugate update of (upsilon, beta) given D^1 = upsilon + beta + e_1 and D^i = beta + e_i.
    const long double k0 = (long double)p.kappa0 * p.kappa0, k1 = (long double)p.kappa1 * p.kappa1,
                      s2 = (long double)p.sigma * p.sigma;
    long double rest = 0;
    for (int i = 1; i < n; ++i) rest += inc[i];
    const long double a11 = 1 / k0 + 1 / s2, a12 = 1 / s2, a22 = 1 / k1 + n / s2;
    const long double b1 = p.mu0 / k0 + inc[0] / s2, b2 = p.mu1 / k1 + (inc[0] + rest) / s2;
    const long double beta = (a11 * b2 - a12 * b1) / (a11 * a22 - a12 * a12);
    CHECK(posterior_drift(p, o) == doctest::Approx(static_cast<double>(beta)).epsilon(1e-12));
  }
}

TEST_CASE("inverse-Gaussian RLD parameters") {
  const DegradationPriors p{20.0, 10.0, 5.0, 0.3, 3.0, 100.0};
  const auto r = rld(p, obs_of({30.0, 20.0}), 5.0);
  CHECK(r.shape_mu == doctest::Approx(10.0));
  CHECK(r.scale_lambda == doctest::Approx(2500.0 / 9.0));
  CHECK(r.t_obs == 2.0);
  const auto r1 = rld(p, obs_of({97.0}), 5.0);
  CHECK(r1.scale_lambda == doctest::Approx(1.0));
  CHECK_THROWS_AS(rld(p, obs_of({30.0}), -1.0), NonDegradingError);
  CHECK_THROWS_AS(rld(p, obs_of({60.0, 50.0}), 5.0), ValidationError);
}

TEST_CASE("failure probability within the horizon") {
  const ComponentRLD r{10.0, 277.8, 0.0};
  CHECK(failure_prob_within(r, 0) == 0.0);
  CHECK(failure_prob_within(r, 1e6) == doctest::Approx(1.0));
  const double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double x) { return ig_pdf(x, 10.0, 277.8); }, 0.0, 7.0, 15, 1e-14);
  CHECK(failure_prob_within(r, 7) == doctest::Approx(quad).epsilon(1e-10));
  double prev = 0.0;
  for (double h = 0.5; h < 40; h += 0.5) {
    const double f = failure_prob_within(r, h);
    CHECK(f >= prev);
    CHECK(f <= 1.0);
    CHECK(f == doctest::Approx(oracle::ig_cdf_ref(h, 10.0, 277.8)).epsilon(1e-10));
    prev = f;
  }
}

TEST_CASE("ig cdf stays finite for large shape ratios") {
  const double f = ig_cdf(10.0, 5.0, 1e5);
  CHECK(std::isfinite(f));
  CHECK(f == doctest::Approx(1.0));
  CHECK(ig_cdf(1.0, 5.0, 1e5) == doctest::Approx(0.0));
}

TEST_CASE("subset selection") {
  const auto net = parse_case(fixtures::toy3_case_text());
  const auto comps = all_components(net);
  std::vector<std::optional<ComponentRLD>> r(comps.size(), ComponentRLD{3.0, 20.0, 0.0});
  r[1] = std::nullopt;
  auto s = select_subset(comps, r, 0.0, 0.0, 7);
  CHECK(s.maintainable.size() == comps.size() - 1);
  CHECK(s.unmaintained == std::vector<int>{1});
  s = select_subset(comps, r, 1.0, 1.0, 7);
  for (int h : s.maintainable) CHECK(s.p_fail[h] >= 1.0);
  CHECK(s.maintainable.size() + s.unmaintained.size() == comps.size());
}

TEST_CASE("scenario sampling edge cases and bucket sums") {
  const auto zero = sample_scenarios({std::vector<double>(5, 0.0)}, {0}, 50, 5, 1);
  for (const auto& row : zero.xi) CHECK(row[0] == 6);
  const auto one = sample_scenarios({std::vector<double>(5, 1.0)}, {0}, 50, 5, 1);
  for (const auto& row : one.xi) CHECK(row[0] == 1);
  double psum = 0.0;
  for (double p : zero.prob) psum += p;
  CHECK(psum == doctest::Approx(1.0));
  const auto b = bucket_probs(day_cdf(ComponentRLD{4.0, 30.0, 0.0}, 7));
  double s = 0.0;
  for (double x : b) s += x;
  CHECK(std::abs(s - 1.0) <= 1e-12);
  CHECK(b.size() == 8);
}

TEST_CASE("prior estimation") {
  const DegradationPriors base{0, 10, 0, 0.3, 3, 100};
  SignalObservations one;
  one.increments.assign(17, 5.0);
  one.increments[0] = 20.0;
  one.t_obs = 16;
  const auto e = estimate_priors({one}, base);
  CHECK(e.mu0 == doctest::Approx(20.0));
  CHECK(e.mu1 == doctest::Approx(5.0));
  CHECK(e.kappa1 == base.kappa1);
  CHECK(e.sigma == base.sigma);
  const auto e2 = estimate_priors({one, one, one}, base);
  CHECK(e2.mu0 == doctest::Approx(e.mu0));
  CHECK(e2.mu1 == doctest::Approx(e.mu1));
  CHECK_THROWS(estimate_priors({}, base));
}

TEST_CASE("prior estimation from a synthetic corpus") {
  const DegradationPriors truth{20.0, 10.0, 5.0, 0.3, 3.0, 100.0};
  std::vector<SignalObservations> corpus;
  for (int i = 0; i < 200; ++i) corpus.push_back(simulate_signal(truth, 1.0, derive_seed(77, i)).obs);
  const auto e = estimate_priors(corpus, truth);
  double d1 = 0.0, slope = 0.0;
  for (const auto& s : corpus) {
    d1 += s.increments.front() / corpus.size();
    slope += (s.total() - s.increments.front()) / s.t_obs / corpus.size();
  }
  CHECK(e.mu0 == doctest::Approx(d1).epsilon(1e-12));
  CHECK(e.mu1 == doctest::Approx(slope).epsilon(1e-12));
  CHECK(std::abs(e.mu1 - truth.mu1) < 1.5);
}

TEST_CASE("scenario and RLD serialization round trips") {
  const auto net = parse_case(fixtures::case9_text());
  RunConfig cfg;
  const auto r = fixtures::synthesize_rlds(net, cfg, 48);
  CHECK(rlds_from_json(rlds_to_json(net, r), net) == r);
  const auto sc = sample_scenarios({day_cdf(ComponentRLD{4.0, 30.0, 0.0}, 7), std::vector<double>(7, 0.5)}, {2, 5},
                                   20, 7, 3);
  const auto back = scenarios_from_csv(scenarios_to_csv(sc, net), net, 7);
  CHECK(back.components == sc.components);
  CHECK(back.xi == sc.xi);
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
}
