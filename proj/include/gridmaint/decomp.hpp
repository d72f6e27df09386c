#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gridmaint/chance.hpp"
#include "gridmaint/degrade.hpp"
#include "gridmaint/instance.hpp"
#include "gridmaint/mastercuts.hpp"
#include "gridmaint/ucmodel.hpp"

namespace gridmaint {

// Seen status vectors per day with their day cost.
class StatusCache {
 public:
  explicit StatusCache(int horizon = 0) : psi_(horizon) {}

  const double* find(const StatusVector& s) const;
  void insert(const StatusVector& s, double q);
  size_t size(int t) const { return psi_.at(t - 1).size(); }
  size_t total() const;
  const std::unordered_map<StatusVector, double, StatusVectorHash>& day(int t) const { return psi_.at(t - 1); }

 private:
  std::vector<std::unordered_map<StatusVector, double, StatusVectorHash>> psi_;
};

// Day cost of one status vector (fresh solve).
double solve_status(const Instance& inst, const StatusVector& s, Backend& backend);

struct IterationStats {
  int iteration = 0;
  Schedule v;
  bool chance_feasible = true;
  double probability = 1.0;
  std::vector<int> solved_per_day;   // |Upsilon_t|
  std::vector<int> aliased_per_day;  // |Gamma_t|
  int chance_cuts_added = 0;
  int optimality_cuts_added = 0;
  double lb = 0.0;
  double ub = kInf;
  double candidate = kInf;  // objective of v when chance-feasible
};

enum class RunStatus { Optimal, IterationLimit, TimeLimit };
const char* to_string(RunStatus s);

struct SolveReport {
  RunStatus status = RunStatus::Optimal;
  bool has_incumbent = false;
  Schedule incumbent;
  std::vector<std::string> labels;  // H' labels in schedule order
  double ub = kInf;
  double lb = 0.0;
  double gap = kInf;
  int iterations = 0;
  long subproblems_solved = 0;
  long subproblems_aliased = 0;
  int chance_cuts = 0;
  int optimality_cuts = 0;
  double seconds = 0.0;
  double lower_bound_seconds = 0.0;
  double incumbent_probability = 1.0;
  std::string incumbent_hash;
  std::string notes;
  std::vector<std::vector<double>> incumbent_q;  // [k][t-1]

  std::string to_json(const std::string& config_hash = {}) const;
  // "component,period" rows.
  std::string schedule_csv() const;
};

// Algorithm state for exact or safe chance handling over a fixed scenario set.
class Decomposition {
 public:
  Decomposition(const Instance& inst, const ScenarioSet& scenarios);

  // Day lower bounds (parallel) and master assembly.
  void initialize();
  // One master solve plus separation or second stage. True once converged.
  bool iterate_once();
  SolveReport solve();

  const IterationStats& last() const { return last_; }
  const StatusCache& cache() const { return cache_; }
  const MasterState& master() const { return master_; }
  const std::vector<std::vector<double>>& lower_bounds() const { return L_; }
  const SolveReport& report() const { return report_; }

  std::function<void(const std::string&)> progress;
  // Set before initialize(); false drops the chance constraint.
  bool enforce_chance = true;

 private:
  double elapsed() const;
  SolveOutcome solve_master(double rel_gap);
  void finish();

  const Instance& inst_;
  const ScenarioSet& sc_;
  MasterState master_;
  StatusCache cache_;
  std::vector<std::vector<double>> L_;
  std::optional<SafeApproxBlock> safe_;
  IterationStats last_;
  SolveReport report_;
  bool initialized_ = false;
  bool converged_ = false;
  // Next master solve uses the configured gap.
  bool tight_ = false;
  std::chrono::steady_clock::time_point start_;
};

SolveReport solve_plan(const Instance& inst, const ScenarioSet& scenarios,
                       const std::function<void(const std::string&)>& progress = {});

// Incumbent hash: FNV-1a over the periods, hex.
std::string schedule_hash(const Schedule& v);

std::string schedule_to_csv(const Schedule& v, const std::vector<std::string>& labels);
Schedule schedule_from_csv(const std::string& text, const std::vector<std::string>& labels);

}  // namespace gridmaint
