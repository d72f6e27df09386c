#include "gridmaint/saa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

#include "gridmaint/parallel.hpp"

namespace gridmaint {

const double* EvalCache::find(int t, const Availability& a) const {
  std::lock_guard lk(mu_);
  auto it = map_.find(Key{t, a});
  return it == map_.end() ? nullptr : &it->second;
}

void EvalCache::insert(int t, const Availability& a, double q) {
  std::lock_guard lk(mu_);
  map_.emplace(Key{t, a}, q);
}

size_t EvalCache::size() const {
  std::lock_guard lk(mu_);
  return map_.size();
}

ScenarioSet sample_test_scenarios(const Instance& inst, int n, std::uint64_t seed) {
  std::vector<int> all(inst.components.size());
  std::iota(all.begin(), all.end(), 0);
  return sample_scenarios(inst.day_cdfs(), all, n, inst.horizon(), seed);
}

ScenarioSet sample_training_scenarios(const Instance& inst, int n, std::uint64_t seed) {
  const auto cdfs = inst.day_cdfs();
  std::vector<std::vector<double>> sub;
  for (int h : inst.maintainable()) sub.push_back(cdfs[h]);
  return sample_scenarios(sub, inst.maintainable(), n, inst.horizon(), seed);
}

EvalReport evaluate_schedule(const Instance& inst, const Schedule& v, const ScenarioSet& test, EvalCache* cache) {
  const int H = static_cast<int>(inst.components.size());
  const int K = test.size(), T = inst.horizon();
  if (K < 1) throw ValidationError("evaluation needs at least one test scenario");
  if (static_cast<int>(test.components.size()) != H) throw ValidationError("test scenarios must cover every component");
  for (int j = 0; j < H; ++j)
    if (test.components[j] != j) throw ValidationError("test scenario columns must follow the component order");
  if (static_cast<int>(v.period.size()) != inst.num_maintainable())
    throw ValidationError("schedule does not match the maintainable components");
  for (int p : v.period)
    if (p < 1 || p > inst.tbar()) throw ValidationError("schedule period out of range");

  EvalCache local;
  EvalCache& c = cache ? *cache : local;
  EvalReport r;
  r.scenarios = K;
  r.objective.assign(K, 0.0);

  std::vector<std::vector<Availability>> avail(K);
  std::unordered_map<std::uint64_t, std::vector<std::pair<int, Availability>>> seen;
  std::vector<std::pair<int, Availability>> fresh;
  for (int k = 0; k < K; ++k)
    for (int t = 1; t <= T; ++t) {
      avail[k].push_back(availability_full(inst, v, test.xi[k], t));
      const auto& a = avail[k].back();
      auto& bucket = seen[a.hash() * 31 + t];
      const bool dup = std::any_of(bucket.begin(), bucket.end(), [&](const auto& e) { return e.first == t && e.second == a; });
      if (dup) continue;
      bucket.emplace_back(t, a);
      ++r.distinct_days;
      if (!c.find(t, a)) fresh.emplace_back(t, a);
    }
  std::vector<double> q(fresh.size());
  parallel_for(static_cast<int>(fresh.size()), inst.cfg.threads, [&](int j, Backend& be) {
    const auto m = build_subproblem(inst, fresh[j].second, fresh[j].first);
    q[j] = solve_subproblem(m, inst.cfg.subproblem_gap, be, "evaluation").objective;
  });
  for (size_t j = 0; j < fresh.size(); ++j) c.insert(fresh[j].first, fresh[j].second, q[j]);
  r.solves = static_cast<long>(fresh.size());

  const auto& hp = inst.maintainable();
  const double w = 1.0 / K;
  int violations = 0;
  for (int k = 0; k < K; ++k) {
    const auto& xi = test.xi[k];
    int fg = 0, fl = 0;
    double gm = 0.0, tlm = 0.0, cv = 0.0, ops = 0.0;
    for (size_t i = 0; i < hp.size(); ++i) {
      const int h = hp[i];
      const bool gen = inst.components[h].kind == ComponentKind::Generator;
      const double cost = maintenance_cost(v.period[i], xi[h], inst.pred_cost(h), inst.corr_cost(h), T);
      cv += cost;
      (gen ? gm : tlm) += cost;
      if (xi[h] <= T && v.period[i] >= xi[h]) {
        (gen ? fg : fl) += 1;
        (gen ? r.fail_gen_hp : r.fail_line_hp) += w;
      }
    }
    for (int h : inst.unmaintained()) {
      if (xi[h] > T) continue;
      const bool gen = inst.components[h].kind == ComponentKind::Generator;
      (gen ? fg : fl) += 1;
      (gen ? r.fail_gen_hpp : r.fail_line_hpp) += w;
      (gen ? gm : tlm) += inst.corr_cost(h);
    }
    for (int t = 1; t <= T; ++t) ops += *c.find(t, avail[k][t - 1]);
    if (fg > inst.rho_gen() || fl > inst.rho_line()) ++violations;
    r.objective[k] = cv + ops;
    r.gen_maint += w * gm;
    r.line_maint += w * tlm;
    r.operations += w * ops;
  }
  r.total = r.gen_maint + r.line_maint + r.operations;
  r.violation_freq = static_cast<double>(violations) / K;
  r.mean_objective = std::accumulate(r.objective.begin(), r.objective.end(), 0.0) / K;
  return r;
}

std::string EvalReport::to_json(const std::string& config_hash) const {
  nlohmann::ordered_json j;
  if (!config_hash.empty()) j["config_hash"] = config_hash;
  j["scenarios"] = scenarios;
  j["avg_failures"] = {{"gen_maintainable", fail_gen_hp},
                       {"line_maintainable", fail_line_hp},
                       {"gen_other", fail_gen_hpp},
                       {"line_other", fail_line_hpp}};
  j["jcc_violation_frequency"] = violation_freq;
  j["expected_cost"] = {{"generator_maintenance", gen_maint},
                        {"line_maintenance", line_maint},
                        {"operations", operations},
                        {"total", total}};
  j["mean_objective"] = mean_objective;
  j["distinct_days"] = distinct_days;
  j["solves"] = solves;
  return j.dump(2) + "\n";
}

SolveReport deterministic_baseline(const Instance& inst) {
  ScenarioSet s;
  s.components = inst.maintainable();
  s.horizon = inst.horizon();
  s.xi.assign(1, std::vector<int>(inst.num_maintainable(), inst.tbar()));
  s.prob = {1.0};
  Decomposition d(inst, s);
  d.enforce_chance = false;
  return d.solve();
}

SAAStats saa_statistics(const std::vector<double>& z_n, const std::vector<double>& best_obj, double alpha) {
  const int M = static_cast<int>(z_n.size());
  const int Np = static_cast<int>(best_obj.size());
  if (M < 2) throw ValidationError("at least two replicates are required");
  if (Np < 1) throw ValidationError("at least one test scenario is required");
  SAAStats s;
  s.mu_u = std::accumulate(best_obj.begin(), best_obj.end(), 0.0) / Np;
  if (Np > 1) {
    double ss = 0.0;
    for (double x : best_obj) ss += (x - s.mu_u) * (x - s.mu_u);
    s.sigma_u = std::sqrt(ss / (static_cast<double>(Np) * (Np - 1)));
  }
  s.mu_l = std::accumulate(z_n.begin(), z_n.end(), 0.0) / M;
  double ss = 0.0;
  for (double x : z_n) ss += (x - s.mu_l) * (x - s.mu_l);
  s.sigma_l = std::sqrt(ss / (static_cast<double>(M) * (M - 1)));
  const double z = boost::math::quantile(boost::math::normal(), 1.0 - alpha / 2);
  const double tq = boost::math::quantile(boost::math::students_t(M - 1), 1.0 - alpha / 2);
  s.ub_lo = s.mu_u - z * s.sigma_u;
  s.ub_hi = s.mu_u + z * s.sigma_u;
  s.lb_lo = s.mu_l - tq * s.sigma_l;
  s.lb_hi = s.mu_l + tq * s.sigma_l;
  s.gap = s.ub_hi != 0 ? (s.ub_hi - s.lb_lo) / s.ub_hi : 0.0;
  s.point_gap = s.mu_u != 0 ? (s.mu_u - s.mu_l) / s.mu_u : 0.0;
  return s;
}

SAAReport run_saa(const Instance& inst, std::uint64_t seed, const std::function<void(const std::string&)>& progress) {
  const auto& cfg = inst.cfg;
  if (cfg.saa_m < 2) throw ValidationError("SAA needs M >= 2 replicates");
  if (cfg.saa_n < 1) throw ValidationError("SAA needs N >= 1");
  if (cfg.saa_nprime < cfg.saa_n) throw ValidationError("SAA needs N' >= N");
  SAAReport rep;
  rep.m = cfg.saa_m;
  rep.n = cfg.saa_n;
  rep.nprime = cfg.saa_nprime;
  rep.alpha = cfg.saa_alpha;
  rep.labels = inst.maintainable_labels();
  const auto test = sample_test_scenarios(inst, cfg.saa_nprime, derive_seed(seed, 0));

  const int outer = std::max(1, std::min(cfg.threads, cfg.saa_m));
  Instance inner = inst;
  inner.cfg.threads = std::max(1, cfg.threads / outer);
  rep.replicates.resize(cfg.saa_m);
  std::mutex log_mu;
  parallel_for(cfg.saa_m, outer, [&](int i, Backend&) {
    auto& r = rep.replicates[i];
    try {
      const auto train = sample_training_scenarios(inner, cfg.saa_n, derive_seed(seed, static_cast<std::uint64_t>(i) + 1));
      const auto s = solve_plan(inner, train);
      if (!s.has_incumbent) throw Error("replicate found no feasible schedule");
      r.ok = true;
      r.z_n = s.ub;
      r.v = s.incumbent;
      r.hash = s.incumbent_hash;
      r.iterations = s.iterations;
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = e.what();
    }
    if (progress) {
      std::lock_guard lk(log_mu);
      progress("replicate " + std::to_string(i + 1) + (r.ok ? " z=" + std::to_string(r.z_n) : " failed: " + r.error));
    }
  });

  EvalCache cache;
  std::vector<double> z_n;
  std::vector<EvalReport> evals(cfg.saa_m);
  for (int i = 0; i < cfg.saa_m; ++i) {
    auto& r = rep.replicates[i];
    if (!r.ok) continue;
    evals[i] = evaluate_schedule(inst, r.v, test, &cache);
    r.z_nprime = evals[i].mean_objective;
    z_n.push_back(r.z_n);
    if (rep.best < 0 || r.z_nprime < rep.replicates[rep.best].z_nprime) rep.best = i;
  }
  if (z_n.size() < 2) throw Error("fewer than two SAA replicates succeeded");
  rep.best_v = rep.replicates[rep.best].v;
  rep.best_eval = evals[rep.best];
  rep.stats = saa_statistics(z_n, rep.best_eval.objective, cfg.saa_alpha);
  return rep;
}

std::string SAAReport::to_json(const std::string& config_hash) const {
  nlohmann::ordered_json j;
  if (!config_hash.empty()) j["config_hash"] = config_hash;
  j["M"] = m;
  j["N"] = n;
  j["Nprime"] = nprime;
  j["alpha"] = alpha;
  j["best_replicate"] = best + 1;
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (size_t i = 0; i < best_v.period.size(); ++i) s[labels[i]] = best_v.period[i];
  j["best_schedule"] = s;
  j["upper"] = {{"mean", stats.mu_u}, {"sd", stats.sigma_u}, {"ci_lo", stats.ub_lo}, {"ci_hi", stats.ub_hi}};
  j["lower"] = {{"mean", stats.mu_l}, {"sd", stats.sigma_l}, {"ci_lo", stats.lb_lo}, {"ci_hi", stats.lb_hi}};
  j["gap"] = stats.gap;
  j["point_gap"] = stats.point_gap;
  auto reps = nlohmann::ordered_json::array();
  for (const auto& r : replicates) {
    nlohmann::ordered_json e;
    e["ok"] = r.ok;
    if (r.ok) {
      e["z_n"] = r.z_n;
      e["z_nprime"] = r.z_nprime;
      e["hash"] = r.hash;
      e["iterations"] = r.iterations;
    } else {
      e["error"] = r.error;
    }
    reps.push_back(e);
  }
  j["replicates"] = reps;
  return j.dump(2) + "\n";
}

std::string SAAReport::replicates_csv() const {
  std::string out = "replicate,ok,z_n,z_nprime,hash\n";
  char buf[160];
  for (size_t i = 0; i < replicates.size(); ++i) {
    const auto& r = replicates[i];
    std::snprintf(buf, sizeof buf, "%zu,%d,%.10g,%.10g,%s\n", i + 1, r.ok ? 1 : 0, r.z_n, r.z_nprime, r.hash.c_str());
    out += buf;
  }
  return out;
}

std::string comparison_csv(const std::vector<std::pair<std::string, EvalReport>>& rows, int baseline_row) {
  std::string out =
      "model,fail_gen_maintainable,fail_line_maintainable,fail_gen_other,fail_line_other,jcc_violation,"
      "gen_maint,line_maint,operations,total,improv_over_baseline_total,improv_over_model_total\n";
  const double base = rows.at(baseline_row).second.total;
  char buf[512];
  for (const auto& [name, r] : rows) {
    const double a = base != 0 ? (base - r.total) / base : 0.0;
    const double b = r.total != 0 ? (base - r.total) / r.total : 0.0;
    std::snprintf(buf, sizeof buf, "%s,%.6g,%.6g,%.6g,%.6g,%.6g,%.10g,%.10g,%.10g,%.10g,%.6g,%.6g\n", name.c_str(),
                  r.fail_gen_hp, r.fail_line_hp, r.fail_gen_hpp, r.fail_line_hpp, r.violation_freq, r.gen_maint,
                  r.line_maint, r.operations, r.total, a, b);
    out += buf;
  }
  return out;
}

}  // namespace gridmaint
