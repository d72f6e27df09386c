#pragma once

#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gridmaint/decomp.hpp"

namespace gridmaint {

// Day costs keyed by (day, full network availability); shared across schedules.
class EvalCache {
 public:
  const double* find(int t, const Availability& a) const;
  void insert(int t, const Availability& a, double q);
  size_t size() const;

 private:
  struct Key {
    int t;
    Availability a;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const { return static_cast<size_t>(k.a.hash() * 31 + k.t); }
  };
  mutable std::mutex mu_;
  std::unordered_map<Key, double, KeyHash> map_;
};

struct EvalReport {
  int scenarios = 0;
  // Average corrective events per scenario.
  double fail_gen_hp = 0.0;   // H' generators failing before their maintenance
  double fail_line_hp = 0.0;  // H' lines
  double fail_gen_hpp = 0.0;  // H'' generators failing
  double fail_line_hpp = 0.0;
  double violation_freq = 0.0;  // more than rho_G generator or rho_L line failures
  // Expected costs.
  double gen_maint = 0.0;   // GM, H' and H''
  double line_maint = 0.0;  // TLM, H' and H''
  double operations = 0.0;
  double total = 0.0;
  // Per scenario c_k v (H') + sum_t Q_t, and its mean.
  std::vector<double> objective;
  double mean_objective = 0.0;
  long distinct_days = 0;  // (day, availability) pairs evaluated
  long solves = 0;         // of which solved fresh

  std::string to_json(const std::string& config_hash = {}) const;
};

// test.components must list all of H (indices into inst.components).
EvalReport evaluate_schedule(const Instance& inst, const Schedule& v, const ScenarioSet& test, EvalCache* cache = nullptr);

// Scenarios over all of H, or over H' only.
ScenarioSet sample_test_scenarios(const Instance& inst, int n, std::uint64_t seed);
ScenarioSet sample_training_scenarios(const Instance& inst, int n, std::uint64_t seed);

// Model without failures (single scenario, every xi = T+1) and without the chance constraint.
SolveReport deterministic_baseline(const Instance& inst);

struct SAAStats {
  double mu_u = 0.0, sigma_u = 0.0, ub_lo = 0.0, ub_hi = 0.0;
  double mu_l = 0.0, sigma_l = 0.0, lb_lo = 0.0, lb_hi = 0.0;
  double gap = 0.0;        // (ub_hi - lb_lo) / ub_hi
  double point_gap = 0.0;  // (mu_u - mu_l) / mu_u
};

// z_n: replicate optimal values; best_obj: per-test-scenario objectives of the chosen candidate.
SAAStats saa_statistics(const std::vector<double>& z_n, const std::vector<double>& best_obj, double alpha);

struct SAAReplicate {
  bool ok = false;
  std::string error;
  double z_n = 0.0;        // training optimum
  double z_nprime = 0.0;   // evaluated over the test sample
  Schedule v;
  std::string hash;
  int iterations = 0;
};

struct SAAReport {
  std::vector<SAAReplicate> replicates;
  int best = -1;
  Schedule best_v;
  std::vector<std::string> labels;
  SAAStats stats;
  double alpha = 0.05;
  int m = 0, n = 0, nprime = 0;
  EvalReport best_eval;

  std::string to_json(const std::string& config_hash = {}) const;
  std::string replicates_csv() const;
};

SAAReport run_saa(const Instance& inst, std::uint64_t seed,
                  const std::function<void(const std::string&)>& progress = {});

// Rows: model, failures per class, violation frequency, costs, and cost improvement
// of each row over the baseline row in both conventions.
std::string comparison_csv(const std::vector<std::pair<std::string, EvalReport>>& rows, int baseline_row);

}  // namespace gridmaint
