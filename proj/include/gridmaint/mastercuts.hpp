#pragma once

#include <vector>

#include "gridmaint/chance.hpp"
#include "gridmaint/degrade.hpp"
#include "gridmaint/instance.hpp"
#include "gridmaint/solver.hpp"

namespace gridmaint {

// Recourse variables: one per (scenario, day), one per scenario, or a single
// probability-weighted one.
enum class ThetaLayout { PerScenarioDay, PerScenario, Single };

ThetaLayout theta_layout(const RunConfig& cfg);
const char* to_string(ThetaLayout l);

// Maintenance cost of scheduling H' component i at period p under failure
// periods xi; out[i][p-1].
std::vector<std::vector<double>> maintenance_costs(const Instance& inst, const std::vector<int>& xi);
double schedule_cost(const Instance& inst, const Schedule& v, const std::vector<int>& xi);

struct MasterState {
  ModelSpec spec;
  ThetaLayout layout = ThetaLayout::PerScenarioDay;
  int num_h = 0;
  int tbar = 0;
  int horizon = 0;
  int scenarios = 0;
  std::vector<double> prob;
  std::vector<std::vector<int>> v;  // columns [i][p-1]
  std::vector<int> theta;           // see theta_index
  std::vector<double> theta_lb;
  int load_gen = -1;   // safe mode: normalized expected failure loads
  int load_line = -1;
  CutPool optimality;
  CutPool chance;

  int theta_index(int k, int t) const;
  // Appends the cut as a row; false when an identical cut is already pooled.
  bool add_optimality_cut(const LinearCut& cut);
  bool add_chance_cut(const LinearCut& cut);
  Schedule schedule_from(const std::vector<double>& x) const;
};

// L[k][t-1] are the day lower bounds; the master takes sums per its layout.
MasterState build_master(const Instance& inst, const ScenarioSet& scenarios, const std::vector<std::vector<double>>& L,
                         ThetaLayout layout);

// Adds the linear rows of the safe approximation and the two load columns.
void add_safe_rows(MasterState& m, const SafeApproxBlock& block);
// Rotated-cone form of the product row for conic backends.
void add_safe_cone(MasterState& m, double alpha);

// Row of a cut in master columns.
Row cut_to_row(const MasterState& m, const LinearCut& cut);

// Index sets per H' component (periods 1..T+1).
using PeriodSets = std::vector<std::vector<int>>;

PeriodSets scheduled_periods(const Schedule& v);
// Predictive: {m}; corrective (m >= xi, xi <= T): {xi, ..., T+1}; never failing: {m}.
PeriodSets same_cost_periods(const Schedule& v, const std::vector<int>& xi, int horizon);
// Periods giving the same availability on day t as the scheduled one.
PeriodSets same_status_periods(const Schedule& v, const std::vector<int>& xi, int t,
                               const std::vector<Durations>& dur, int horizon);

// theta(a,b) >= Q + (Q-L) (sum_h [sum_{p in A_h} v_hp - 1] - [complement] sum_h sum_{p not in V_h} v_hp)
LinearCut optimality_cut(const Schedule& v, double Q, double L, const PeriodSets& sets, bool complement,
                         int theta_a, int theta_b, int tbar);

LinearCut cut_intLS(const Schedule& v, double Q, double L, int theta_a, int theta_b, int tbar);
LinearCut cut_optK(const Schedule& v, double Q, double L, int theta_a, int theta_b, int tbar);
LinearCut cut_optKplus(const Schedule& v, double Q, double L, const PeriodSets& same_cost, int theta_a,
                       int theta_b, int tbar);
LinearCut cut_optKTplus(const Schedule& v, double Qt, double Lt, const PeriodSets& same_status, int k, int t,
                        int tbar);

// Lower bound the cut places on its theta at schedule v.
double cut_rhs_at(const LinearCut& cut, const Schedule& v);

// Weighted sum of cuts onto the single aggregated theta.
LinearCut aggregate_cuts(const std::vector<LinearCut>& cuts, const std::vector<double>& weights);

// All optimality cuts of one iteration. Q and L are [k][t-1]; pairs with Q - L
// within tolerance produce no cut.
std::vector<LinearCut> generate_optimality_cuts(const Instance& inst, const ScenarioSet& scenarios,
                                                ThetaLayout layout, CutFamily family, const Schedule& v,
                                                const std::vector<std::vector<double>>& Q,
                                                const std::vector<std::vector<double>>& L, double tol = 1e-9);

}  // namespace gridmaint
