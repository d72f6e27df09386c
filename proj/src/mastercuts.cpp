#include "gridmaint/mastercuts.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace gridmaint {

ThetaLayout theta_layout(const RunConfig& cfg) {
  if (cfg.cuts == CutFamily::OptKTPlusPlus) return ThetaLayout::PerScenarioDay;
  return cfg.single_cut ? ThetaLayout::Single : ThetaLayout::PerScenario;
}

const char* to_string(ThetaLayout l) {
  switch (l) {
    case ThetaLayout::PerScenarioDay: return "per-scenario-day";
    case ThetaLayout::PerScenario: return "per-scenario";
    case ThetaLayout::Single: return "single";
  }
  return "?";
}

std::vector<std::vector<double>> maintenance_costs(const Instance& inst, const std::vector<int>& xi) {
  const auto& hp = inst.maintainable();
  std::vector<std::vector<double>> c(hp.size(), std::vector<double>(inst.tbar(), 0.0));
  for (size_t i = 0; i < hp.size(); ++i)
    for (int p = 1; p <= inst.tbar(); ++p)
      c[i][p - 1] = maintenance_cost(p, xi[i], inst.pred_cost(hp[i]), inst.corr_cost(hp[i]), inst.horizon());
  return c;
}

double schedule_cost(const Instance& inst, const Schedule& v, const std::vector<int>& xi) {
  const auto& hp = inst.maintainable();
  double s = 0.0;
  for (size_t i = 0; i < hp.size(); ++i)
    s += maintenance_cost(v.period[i], xi[i], inst.pred_cost(hp[i]), inst.corr_cost(hp[i]), inst.horizon());
  return s;
}

int MasterState::theta_index(int k, int t) const {
  switch (layout) {
    case ThetaLayout::PerScenarioDay: return theta[static_cast<size_t>(k) * horizon + (t - 1)];
    case ThetaLayout::PerScenario: return theta[k];
    case ThetaLayout::Single: return theta[0];
  }
  return -1;
}

Row cut_to_row(const MasterState& m, const LinearCut& cut) {
  std::map<int, double> acc;
  for (const auto& t : cut.terms) {
    int col = -1;
    switch (t.var) {
      case CutVar::V:
        if (t.a < 0 || t.a >= m.num_h || t.b < 1 || t.b > m.tbar) throw ValidationError("cut references unknown v");
        col = m.v[t.a][t.b - 1];
        break;
      case CutVar::Theta:
        col = m.layout == ThetaLayout::Single ? m.theta[0]
              : m.layout == ThetaLayout::PerScenario ? m.theta.at(t.a)
                                                     : m.theta_index(t.a, t.b);
        break;
      case CutVar::LoadGen: col = m.load_gen; break;
      case CutVar::LoadLine: col = m.load_line; break;
    }
    if (col < 0) throw ValidationError("cut references a column the master does not have");
    acc[col] += t.coef;
  }
  Row r;
  for (auto [c, a] : acc) {
    r.idx.push_back(c);
    r.coef.push_back(a);
  }
  if (cut.sense == Sense::LessEq) r.ub = cut.rhs;
  else r.lb = cut.rhs;
  return r;
}

bool MasterState::add_optimality_cut(const LinearCut& cut) {
  if (!optimality.add(cut)) return false;
  auto r = cut_to_row(*this, cut);
  spec.add_row(std::move(r.idx), std::move(r.coef), r.lb, r.ub, "opt" + std::to_string(optimality.size()));
  return true;
}

bool MasterState::add_chance_cut(const LinearCut& cut) {
  if (!chance.add(cut)) return false;
  auto r = cut_to_row(*this, cut);
  spec.add_row(std::move(r.idx), std::move(r.coef), r.lb, r.ub, "cc" + std::to_string(chance.size()));
  return true;
}

Schedule MasterState::schedule_from(const std::vector<double>& x) const {
  Schedule s;
  s.period.resize(num_h);
  for (int i = 0; i < num_h; ++i) {
    int best = 1;
    for (int p = 1; p <= tbar; ++p)
      if (x[v[i][p - 1]] > x[v[i][best - 1]]) best = p;
    s.period[i] = best;
  }
  return s;
}

MasterState build_master(const Instance& inst, const ScenarioSet& scenarios, const std::vector<std::vector<double>>& L,
                         ThetaLayout layout) {
  const int K = scenarios.size();
  if (K < 1) throw ValidationError("the master needs at least one scenario");
  if (scenarios.components != inst.maintainable()) throw ValidationError("scenario columns must be H'");
  const int T = inst.horizon();
  if (static_cast<int>(L.size()) != K) throw ValidationError("lower bounds must be given per scenario");
  MasterState m;
  m.layout = layout;
  m.num_h = inst.num_maintainable();
  m.tbar = inst.tbar();
  m.horizon = T;
  m.scenarios = K;
  m.prob = scenarios.prob;
  auto& spec = m.spec;
  const auto labels = inst.maintainable_labels();

  std::vector<std::vector<double>> cbar(m.num_h, std::vector<double>(m.tbar, 0.0));
  for (int k = 0; k < K; ++k) {
    const auto c = maintenance_costs(inst, scenarios.xi[k]);
    for (int i = 0; i < m.num_h; ++i)
      for (int p = 0; p < m.tbar; ++p) cbar[i][p] += m.prob[k] * c[i][p];
  }
  m.v.assign(m.num_h, std::vector<int>(m.tbar, -1));
  for (int i = 0; i < m.num_h; ++i) {
    for (int p = 1; p <= m.tbar; ++p)
      m.v[i][p - 1] = spec.add_var(0, 1, cbar[i][p - 1], true, "v_" + labels[i] + "_" + std::to_string(p));
    spec.add_row(m.v[i], std::vector<double>(m.tbar, 1.0), 1, 1, "assign_" + labels[i]);
  }

  auto day_sum = [&](int k) {
    double s = 0.0;
    for (int t = 1; t <= T; ++t) s += L[k].at(t - 1);
    return s;
  };
  switch (layout) {
    case ThetaLayout::PerScenarioDay:
      for (int k = 0; k < K; ++k)
        for (int t = 1; t <= T; ++t) {
          m.theta_lb.push_back(L[k].at(t - 1));
          m.theta.push_back(spec.add_var(L[k][t - 1], kInf, m.prob[k], false,
                                         "theta_" + std::to_string(k + 1) + "_" + std::to_string(t)));
        }
      break;
    case ThetaLayout::PerScenario:
      for (int k = 0; k < K; ++k) {
        m.theta_lb.push_back(day_sum(k));
        m.theta.push_back(spec.add_var(day_sum(k), kInf, m.prob[k], false, "theta_" + std::to_string(k + 1)));
      }
      break;
    case ThetaLayout::Single: {
      double lb = 0.0;
      for (int k = 0; k < K; ++k) lb += m.prob[k] * day_sum(k);
      m.theta_lb.push_back(lb);
      m.theta.push_back(spec.add_var(lb, kInf, 1.0, false, "theta"));
      break;
    }
  }
  return m;
}

void add_safe_rows(MasterState& m, const SafeApproxBlock& block) {
  auto& spec = m.spec;
  m.load_gen = spec.add_var(0, 1, 0, false, "xG");
  m.load_line = spec.add_var(0, 1, 0, false, "xL");
  auto emit = [&](int col, const std::vector<LoadTerm>& terms, double cst, int rho, const char* name) {
    std::vector<int> idx{col};
    std::vector<double> coef{static_cast<double>(rho)};
    for (const auto& t : terms) {
      idx.push_back(m.v[t.pos][t.period - 1]);
      coef.push_back(-t.coef);
    }
    spec.add_row(std::move(idx), std::move(coef), cst, cst, name);
  };
  emit(m.load_gen, block.gen_terms, block.gen_const, block.rho_gen, "load_gen");
  emit(m.load_line, block.line_terms, block.line_const, block.rho_line, "load_line");
}

void add_safe_cone(MasterState& m, double alpha) {
  auto& spec = m.spec;
  const int a = spec.add_var(0, 1, 0, false, "abarG");
  const int b = spec.add_var(0, 1, 0, false, "abarL");
  const double z = std::sqrt(2.0 * (1.0 - alpha));
  const int zc = spec.add_var(z, z, 0, false, "zc");
  spec.add_row({a, m.load_gen}, {1, 1}, -kInf, 1, "abarG_def");
  spec.add_row({b, m.load_line}, {1, 1}, -kInf, 1, "abarL_def");
  spec.cones.push_back({a, b, {zc}});
}

PeriodSets scheduled_periods(const Schedule& v) {
  PeriodSets s;
  for (int p : v.period) s.push_back({p});
  return s;
}

PeriodSets same_cost_periods(const Schedule& v, const std::vector<int>& xi, int horizon) {
  PeriodSets s(v.period.size());
  for (size_t i = 0; i < v.period.size(); ++i) {
    const int m = v.period[i];
    if (m >= xi[i] && xi[i] <= horizon)
      for (int p = xi[i]; p <= horizon + 1; ++p) s[i].push_back(p);
    else
      s[i] = {m};
  }
  return s;
}

PeriodSets same_status_periods(const Schedule& v, const std::vector<int>& xi, int t,
                               const std::vector<Durations>& dur, int horizon) {
  PeriodSets s(v.period.size());
  for (size_t i = 0; i < v.period.size(); ++i) {
    const bool ref = component_available(v.period[i], xi[i], t, dur[i], horizon);
    for (int p = 1; p <= horizon + 1; ++p)
      if (component_available(p, xi[i], t, dur[i], horizon) == ref) s[i].push_back(p);
  }
  return s;
}

LinearCut optimality_cut(const Schedule& v, double Q, double L, const PeriodSets& sets, bool complement,
                         int theta_a, int theta_b, int tbar) {
  const double g = Q - L;
  const int H = static_cast<int>(v.period.size());
  LinearCut cut;
  cut.sense = Sense::GreaterEq;
  cut.terms.push_back({CutVar::Theta, theta_a, theta_b, 1.0});
  for (int h = 0; h < H; ++h) {
    std::vector<double> coef(tbar + 1, 0.0);
    for (int p : sets[h]) coef[p] -= g;
    if (complement)
      for (int p = 1; p <= tbar; ++p)
        if (p != v.period[h]) coef[p] += g;
    for (int p = 1; p <= tbar; ++p)
      if (coef[p] != 0.0) cut.terms.push_back({CutVar::V, h, p, coef[p]});
  }
  cut.rhs = Q - g * H;
  return cut;
}

LinearCut cut_intLS(const Schedule& v, double Q, double L, int theta_a, int theta_b, int tbar) {
  return optimality_cut(v, Q, L, scheduled_periods(v), true, theta_a, theta_b, tbar);
}

LinearCut cut_optK(const Schedule& v, double Q, double L, int theta_a, int theta_b, int tbar) {
  return optimality_cut(v, Q, L, scheduled_periods(v), false, theta_a, theta_b, tbar);
}

LinearCut cut_optKplus(const Schedule& v, double Q, double L, const PeriodSets& same_cost, int theta_a,
                       int theta_b, int tbar) {
  return optimality_cut(v, Q, L, same_cost, false, theta_a, theta_b, tbar);
}

LinearCut cut_optKTplus(const Schedule& v, double Qt, double Lt, const PeriodSets& same_status, int k, int t,
                        int tbar) {
  return optimality_cut(v, Qt, Lt, same_status, false, k, t, tbar);
}

double cut_rhs_at(const LinearCut& cut, const Schedule& v) { return cut.rhs - cut.v_lhs(v); }

LinearCut aggregate_cuts(const std::vector<LinearCut>& cuts, const std::vector<double>& weights) {
  std::map<std::tuple<int, int, int>, double> acc;
  LinearCut out;
  out.sense = Sense::GreaterEq;
  for (size_t j = 0; j < cuts.size(); ++j) {
    out.rhs += weights[j] * cuts[j].rhs;
    for (const auto& t : cuts[j].terms)
      if (t.var == CutVar::V) acc[{static_cast<int>(t.var), t.a, t.b}] += weights[j] * t.coef;
  }
  out.terms.push_back({CutVar::Theta, -1, 0, 1.0});
  for (const auto& [key, c] : acc)
    if (c != 0.0) out.terms.push_back({CutVar::V, std::get<1>(key), std::get<2>(key), c});
  return out;
}

std::vector<LinearCut> generate_optimality_cuts(const Instance& inst, const ScenarioSet& scenarios,
                                                ThetaLayout layout, CutFamily family, const Schedule& v,
                                                const std::vector<std::vector<double>>& Q,
                                                const std::vector<std::vector<double>>& L, double tol) {
  const int K = scenarios.size(), T = inst.horizon(), tbar = inst.tbar();
  std::vector<Durations> dur;
  for (int h : inst.maintainable()) dur.push_back(inst.durations(h));
  auto make = [&](int k, int t, double q, double l) {
    const auto& xi = scenarios.xi[k];
    const int ta = k, tb = layout == ThetaLayout::PerScenarioDay ? t : 0;
    switch (family) {
      case CutFamily::IntLS: return cut_intLS(v, q, l, ta, tb, tbar);
      case CutFamily::OptK: return cut_optK(v, q, l, ta, tb, tbar);
      case CutFamily::OptKPlus: return cut_optKplus(v, q, l, same_cost_periods(v, xi, T), ta, tb, tbar);
      case CutFamily::OptKTPlusPlus:
        if (layout != ThetaLayout::PerScenarioDay)
          throw ValidationError("status-based cuts need per-scenario-day recourse variables");
        return cut_optKTplus(v, q, l, same_status_periods(v, xi, t, dur, T), k, t, tbar);
    }
    throw ValidationError("unknown cut family");
  };
  auto slack = [&](double q, double l) { return q - l > tol * std::max(1.0, std::abs(q)); };

  std::vector<LinearCut> out;
  if (layout == ThetaLayout::PerScenarioDay) {
    for (int k = 0; k < K; ++k)
      for (int t = 1; t <= T; ++t)
        if (slack(Q[k][t - 1], L[k][t - 1])) out.push_back(make(k, t, Q[k][t - 1], L[k][t - 1]));
    return out;
  }
  std::vector<LinearCut> per_k;
  bool any = false;
  for (int k = 0; k < K; ++k) {
    double q = 0.0, l = 0.0;
    for (int t = 1; t <= T; ++t) q += Q[k][t - 1], l += L[k][t - 1];
    any = any || slack(q, l);
    if (layout == ThetaLayout::PerScenario) {
      if (slack(q, l)) out.push_back(make(k, 0, q, l));
    } else {
      per_k.push_back(make(k, 0, q, l));
    }
  }
  if (layout == ThetaLayout::Single && any) out.push_back(aggregate_cuts(per_k, scenarios.prob));
  return out;
}

}  // namespace gridmaint
