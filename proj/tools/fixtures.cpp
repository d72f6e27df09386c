#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace gridmaint::fixtures {

std::vector<std::optional<ComponentRLD>> synthesize_rlds(const Network& net, const RunConfig& cfg, std::uint64_t seed,
                                                         std::vector<std::string>* warnings) {
  const auto comps = all_components(net);
  std::vector<std::optional<ComponentRLD>> out(comps.size());
  for (size_t h = 0; h < comps.size(); ++h) {
    const auto& pr = comps[h].kind == ComponentKind::Generator ? cfg.gen_priors : cfg.line_priors;
    const std::uint64_t stream = derive_seed(seed, h);
    std::mt19937_64 rng(stream);
    const int upper = std::max(1, static_cast<int>(std::floor((pr.lambda - pr.mu0) / (pr.mu1 + 3.0 * pr.kappa1))));
    const int t_obs = std::uniform_int_distribution<int>(1, upper)(rng);
    bool done = false;
    for (std::uint64_t attempt = 0; attempt < 1000 && !done; ++attempt) {
      const auto sig = simulate_signal(pr, 1.0, derive_seed(stream, attempt + 1));
      if (!(sig.failure_time > t_obs)) continue;
      SignalObservations obs;
      obs.t_first = 1;
      obs.t_obs = t_obs;
      obs.increments.assign(sig.obs.increments.begin(), sig.obs.increments.begin() + t_obs);
      try {
        out[h] = rld(pr, obs, posterior_drift(pr, obs));
      } catch (const NonDegradingError&) {
        if (warnings) warnings->push_back(component_label(net, comps[h]) + " shows no positive drift");
      }
      done = true;
    }
    if (!done && warnings) warnings->push_back(component_label(net, comps[h]) + " failed before every observation");
  }
  return out;
}

DemandGrid nominal_demand(const Network& net, const RunConfig& cfg, std::uint64_t seed, double noise_sd) {
  return synth_demand(net, cfg, default_weekly_shape(cfg.horizon_days, cfg.hours_per_day), seed, noise_sd);
}

Instance random_toy(std::uint64_t seed, const ToySpec& spec, RunConfig base) {
  std::mt19937_64 rng(seed);
  auto U = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  auto I = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };

  Network net;
  const int B = I(2, 3);
  for (int i = 0; i < B; ++i) {
    Bus b;
    b.id = i + 1;
    net.buses.push_back(b);
  }
  const int G = 2;
  for (int g = 0; g < G; ++g) {
    Generator gen;
    gen.id = g + 1;
    gen.bus = g == 0 ? 0 : I(0, B - 1);
    gen.p_max = std::round(U(60, 150));
    gen.p_min = std::round(U(0, 10));
    gen.ramp_up = gen.ramp_down = std::round(U(0.5, 1.0) * gen.p_max);
    gen.min_up = I(1, 2);
    gen.min_down = I(1, 2);
    gen.gen_cost = std::round(U(5, 30));
    gen.noload_cost = std::round(U(0, 50));
    gen.startup_cost = std::round(U(0, 200));
    net.generators.push_back(gen);
  }
  std::vector<std::pair<int, int>> ends = B == 2 ? std::vector<std::pair<int, int>>{{0, 1}, {0, 1}}
                                                 : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}};
  for (size_t l = 0; l < ends.size(); ++l) {
    Line line;
    line.id = static_cast<int>(l + 1);
    line.from = ends[l].first;
    line.to = ends[l].second;
    line.susceptance = 1.0 / U(0.05, 0.2);
    line.flow_limit = std::round(U(40, 120));
    net.lines.push_back(line);
  }
  double cmax = 0.0, mean_cp = 0.0;
  for (auto& g : net.generators) {
    cmax = std::max(cmax, g.gen_cost);
    g.maint_cost_pred = std::round(g.p_max * g.gen_cost * spec.hours * U(0.5, 1.5));
    g.maint_cost_corr = 3.0 * g.maint_cost_pred;
    mean_cp += g.maint_cost_pred / G;
  }
  for (auto& b : net.buses) b.curtail_cost = 10.0 * cmax;
  for (auto& l : net.lines) {
    l.maint_cost_pred = std::round(0.1 * mean_cp * U(0.5, 1.5));
    l.maint_cost_corr = 3.0 * l.maint_cost_pred;
    l.big_m = net.flow_coeff(l) * (net.buses[l.from].delta_max - net.buses[l.to].delta_min);
  }

  RunConfig cfg = std::move(base);
  cfg.horizon_days = spec.horizon;
  cfg.hours_per_day = spec.hours;
  cfg.alpha = spec.alpha;
  cfg.rho_gen = 1;
  cfg.rho_line = 1;
  cfg.epsilon = 1e-9;

  DemandGrid d(B, spec.horizon, spec.hours);
  std::vector<double> base_load(B);
  for (int i = 0; i < B; ++i) base_load[i] = i == 0 ? U(0, 30) : U(20, 90);
  for (int i = 0; i < B; ++i)
    for (int t = 0; t < spec.horizon; ++t)
      for (int s = 0; s < spec.hours; ++s) d.at(i, t, s) = std::round(base_load[i] * U(0.6, 1.2));

  const int H = G + static_cast<int>(net.lines.size());
  std::vector<std::vector<double>> cdfs(H);
  for (int h = 0; h < H; ++h) {
    double f = 0.0;
    const double scale = U(0.05, 0.5);
    for (int t = 0; t < spec.horizon; ++t) {
      f = std::min(1.0, f + scale * U(0, 1));
      cdfs[h].push_back(f);
    }
  }
  std::vector<int> order(H);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const int nh = I(1, std::min(spec.max_h, H));
  std::vector<int> hp(order.begin(), order.begin() + nh);
  std::sort(hp.begin(), hp.end());
  for (int h = 0; h < H; ++h)
    if (!std::binary_search(hp.begin(), hp.end(), h))
      for (auto& f : cdfs[h]) f *= 0.05;
  return make_instance_from_cdfs(std::move(net), std::move(d), std::move(cfg), cdfs, hp);
}

std::string toy3_case_text() {
  return R"(function mpc = toy3
mpc.version = '2';
mpc.baseMVA = 100;
%% bus_i type Pd Qd Gs Bs area Vm Va baseKV zone Vmax Vmin
mpc.bus = [
	1	3	0	0	0	0	1	1	0	345	1	1.1	0.9;
	2	1	60	0	0	0	1	1	0	345	1	1.1	0.9;
	3	1	80	0	0	0	1	1	0	345	1	1.1	0.9;
];
%% bus Pg Qg Qmax Qmin Vg mBase status Pmax Pmin
mpc.gen = [
	1	0	0	0	0	1	100	1	150	0;
	2	0	0	0	0	1	100	1	100	0;
];
%% fbus tbus r x b rateA rateB rateC ratio angle status angmin angmax
mpc.branch = [
	1	2	0	0.1	0	100	0	0	0	0	1	-360	360;
	2	3	0	0.1	0	60	0	0	0	0	1	-360	360;
	1	3	0	0.1	0	100	0	0	0	0	1	-360	360;
];
%% model startup shutdown n c1 c0
mpc.gencost = [
	2	0	0	2	10	0;
	2	0	0	2	30	0;
];
)";
}

std::string case9_text() {
  return R"(function mpc = case9
%% Nine-bus system with linear generation costs.
mpc.version = '2';
mpc.baseMVA = 100;
%% bus_i type Pd Qd Gs Bs area Vm Va baseKV zone Vmax Vmin
mpc.bus = [
	1	3	0	0	0	0	1	1	0	345	1	1.1	0.9;
	2	2	0	0	0	0	1	1	0	345	1	1.1	0.9;
	3	2	0	0	0	0	1	1	0	345	1	1.1	0.9;
	4	1	0	0	0	0	1	1	0	345	1	1.1	0.9;
	5	1	90	30	0	0	1	1	0	345	1	1.1	0.9;
	6	1	0	0	0	0	1	1	0	345	1	1.1	0.9;
	7	1	100	35	0	0	1	1	0	345	1	1.1	0.9;
	8	1	0	0	0	0	1	1	0	345	1	1.1	0.9;
	9	1	125	50	0	0	1	1	0	345	1	1.1	0.9;
];
%% bus Pg Qg Qmax Qmin Vg mBase status Pmax Pmin
mpc.gen = [
	1	72.3	27.03	300	-300	1.04	100	1	250	10;
	2	163	6.54	300	-300	1.025	100	1	300	10;
	3	85	-10.95	300	-300	1.025	100	1	270	10;
];
%% fbus tbus r x b rateA rateB rateC ratio angle status angmin angmax
mpc.branch = [
	1	4	0	0.0576	0	250	250	250	0	0	1	-360	360;
	4	5	0.017	0.092	0.158	250	250	250	0	0	1	-360	360;
	5	6	0.039	0.17	0.358	150	150	150	0	0	1	-360	360;
	3	6	0	0.0586	0	300	300	300	0	0	1	-360	360;
	6	7	0.0119	0.1008	0.209	150	150	150	0	0	1	-360	360;
	7	8	0.0085	0.072	0.149	250	250	250	0	0	1	-360	360;
	8	2	0	0.0625	0	250	250	250	0	0	1	-360	360;
	8	9	0.032	0.161	0.306	250	250	250	0	0	1	-360	360;
	9	4	0.01	0.085	0.176	250	250	250	0	0	1	-360	360;
];
%% model startup shutdown n c1 c0
mpc.gencost = [
	2	1500	0	2	5	150;
	2	2000	0	2	1.2	600;
	2	3000	0	2	1	335;
];
)";
}

}  // namespace gridmaint::fixtures
