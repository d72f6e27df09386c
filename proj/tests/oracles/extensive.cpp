#include "extensive.hpp"

#include <algorithm>
#include <cmath>

#include "gridmaint/solver.hpp"

using namespace gridmaint;

namespace oracle {

namespace {

double class_prob_at_most(const std::vector<double>& p, int rho) {
  const int n = static_cast<int>(p.size());
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double pr = 1.0;
    int c = 0;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1u) {
        pr *= p[i];
        ++c;
      } else {
        pr *= 1.0 - p[i];
      }
    }
    if (c <= rho) total += pr;
  }
  return total;
}

}  // namespace

double brute_force_joint(const Instance& inst, const Schedule& v) {
  const auto cdfs = inst.day_cdfs();
  const int T = inst.horizon();
  std::vector<int> period(inst.components.size(), T);
  for (size_t i = 0; i < inst.maintainable().size(); ++i) period[inst.maintainable()[i]] = std::min(v.period[i], T);
  std::vector<double> pg, pl;
  for (size_t h = 0; h < inst.components.size(); ++h) {
    const double p = cdfs[h][period[h] - 1];
    (inst.components[h].kind == ComponentKind::Generator ? pg : pl).push_back(p);
  }
  return class_prob_at_most(pg, inst.rho_gen()) * class_prob_at_most(pl, inst.rho_line());
}

ExtensiveResult solve_extensive(const Instance& inst, const ScenarioSet& sc, bool chance, const Schedule* fixed) {
  const auto& net = inst.net;
  const int T = inst.horizon(), Tbar = T + 1, S = inst.hours();
  const int nH = inst.num_maintainable();
  const int G = static_cast<int>(net.generators.size()), L = static_cast<int>(net.lines.size());
  const int B = static_cast<int>(net.buses.size());
  ModelSpec m;

  std::vector<std::vector<int>> w(nH, std::vector<int>(Tbar + 1, -1));
  for (int i = 0; i < nH; ++i) {
    std::vector<int> idx;
    const int h = inst.maintainable()[i];
    for (int p = 1; p <= Tbar; ++p) {
      double c = 0.0;
      for (int k = 0; k < sc.size(); ++k) {
        const int xi = sc.xi[k][i];
        if (p < xi) c += sc.prob[k] * inst.pred_cost(h);
        else if (xi != Tbar) c += sc.prob[k] * inst.corr_cost(h);
      }
      const bool pinned = fixed && fixed->period[i] == p;
      w[i][p] = m.add_var(pinned ? 1 : 0, fixed && !pinned ? 0 : 1, c, true);
      idx.push_back(w[i][p]);
    }
    m.add_row(idx, std::vector<double>(idx.size(), 1.0), 1, 1);
  }

  // H' position of each generator / line, or -1.
  std::vector<int> gpos(G, -1), lpos(L, -1);
  for (int i = 0; i < nH; ++i) {
    const auto& c = inst.components[inst.maintainable()[i]];
    (c.kind == ComponentKind::Generator ? gpos[c.index] : lpos[c.index]) = i;
  }

  // Adds row `col + sum coef*w <= ub` for the logical maintenance restrictions of
  // H' component i on day t under failure period xi.
  auto logical_rows = [&](int col, int i, int xi, int t) {
    const Durations d = inst.durations(inst.maintainable()[i]);
    if (t <= xi + d.tau_p - 1) {
      std::vector<int> idx{col};
      std::vector<double> cf{1.0};
      for (int e = 0; e < d.tau_p; ++e)
        if (t - e >= 1) {
          idx.push_back(w[i][t - e]);
          cf.push_back(1.0);
        }
      m.add_row(idx, cf, -kInf, 1);
    }
    if (xi <= T && t >= xi && t <= xi + d.tau_c - 1) {
      std::vector<int> idx{col};
      std::vector<double> cf{1.0};
      for (int p = 1; p < xi; ++p) {
        idx.push_back(w[i][p]);
        cf.push_back(-1.0);
      }
      m.add_row(idx, cf, -kInf, 0);
    }
  };

  for (int k = 0; k < sc.size(); ++k) {
    const double pi = sc.prob[k];
    for (int t = 1; t <= T; ++t) {
      std::vector<std::vector<int>> x(G), p(G);
      for (int s = 0; s < S; ++s) {
        std::vector<int> f(L), y(L, -1), delta(B), q(B);
        for (int b = 0; b < B; ++b) {
          delta[b] = m.add_var(net.buses[b].delta_min, net.buses[b].delta_max, 0);
          q[b] = m.add_var(0, kInf, pi * net.buses[b].curtail_cost);
        }
        for (int g = 0; g < G; ++g) {
          const auto& gen = net.generators[g];
          x[g].push_back(m.add_var(0, 1, pi * gen.noload_cost, true));
          p[g].push_back(m.add_var(0, kInf, pi * gen.gen_cost));
          m.add_row({p[g][s], x[g][s]}, {1, -gen.p_max}, -kInf, 0);
          m.add_row({p[g][s], x[g][s]}, {1, -gen.p_min}, 0, kInf);
          if (gpos[g] >= 0) logical_rows(x[g][s], gpos[g], sc.xi[k][gpos[g]], t);
        }
        for (int l = 0; l < L; ++l) {
          const auto& ln = net.lines[l];
          const double K = net.flow_coeff(ln);
          f[l] = m.add_var(-kInf, kInf, 0);
          if (lpos[l] < 0) {
            m.add_row({f[l], delta[ln.from], delta[ln.to]}, {1, -K, K}, 0, 0);
            m.add_row({f[l]}, {1}, -ln.flow_limit, ln.flow_limit);
            continue;
          }
          y[l] = m.add_var(0, 1, 0, true);
          const int i = lpos[l];
          logical_rows(y[l], i, sc.xi[k][i], t);
          // Available lines stay in service: y >= 1 - (out-of-service indicators).
          const Durations d = inst.durations(inst.maintainable()[i]);
          const int xi = sc.xi[k][i];
          std::vector<int> idx{y[l]};
          std::vector<double> cf{1.0};
          if (t <= xi + d.tau_p - 1)
            for (int e = 0; e < d.tau_p; ++e)
              if (t - e >= 1) {
                idx.push_back(w[i][t - e]);
                cf.push_back(1.0);
              }
          if (xi <= T && t >= xi && t <= xi + d.tau_c - 1) {
            for (int pp = xi; pp <= Tbar; ++pp) {
              idx.push_back(w[i][pp]);
              cf.push_back(1.0);
            }
          }
          m.add_row(idx, cf, 1, kInf);
          m.add_row({f[l], delta[ln.from], delta[ln.to], y[l]}, {1, -K, K, ln.big_m}, -kInf, ln.big_m);
          m.add_row({f[l], delta[ln.from], delta[ln.to], y[l]}, {1, -K, K, -ln.big_m}, -ln.big_m, kInf);
          m.add_row({f[l], y[l]}, {1, -ln.flow_limit}, -kInf, 0);
          m.add_row({f[l], y[l]}, {1, ln.flow_limit}, 0, kInf);
        }
        for (int b = 0; b < B; ++b) {
          std::vector<int> idx{q[b]};
          std::vector<double> cf{1.0};
          for (int g = 0; g < G; ++g)
            if (net.generators[g].bus == b) {
              idx.push_back(p[g][s]);
              cf.push_back(1.0);
            }
          for (int l = 0; l < L; ++l) {
            if (net.lines[l].from == b) {
              idx.push_back(f[l]);
              cf.push_back(-1.0);
            }
            if (net.lines[l].to == b) {
              idx.push_back(f[l]);
              cf.push_back(1.0);
            }
          }
          const double d = inst.demand.at(b, t - 1, s);
          m.add_row(idx, cf, d, d);
        }
      }
      for (int g = 0; g < G; ++g) {
        const auto& gen = net.generators[g];
        for (int s = 1; s < S; ++s) {
          const int u = m.add_var(0, 1, pi * gen.startup_cost);
          const int nu = m.add_var(0, 1, 0);
          m.add_row({x[g][s - 1], x[g][s], u}, {1, -1, 1}, 0, kInf);
          m.add_row({x[g][s], x[g][s - 1], nu}, {1, -1, 1}, 0, kInf);
          m.add_row({p[g][s], p[g][s - 1]}, {1, -1}, -gen.ramp_down, gen.ramp_up);
          for (int s2 = s + 1; s2 <= s + gen.min_up - 1 && s2 < S; ++s2)
            m.add_row({x[g][s], x[g][s - 1], x[g][s2]}, {1, -1, -1}, -kInf, 0);
          for (int s2 = s + 1; s2 <= s + gen.min_down - 1 && s2 < S; ++s2)
            m.add_row({x[g][s - 1], x[g][s], x[g][s2]}, {1, -1, 1}, -kInf, 1);
        }
      }
    }
  }

  if (chance) {
    const double thr = 1.0 - inst.cfg.alpha;
    std::vector<int> per(nH, 1);
    while (true) {
      Schedule v{per};
      if (brute_force_joint(inst, v) < thr) {
        std::vector<int> idx;
        for (int i = 0; i < nH; ++i) idx.push_back(w[i][per[i]]);
        m.add_row(idx, std::vector<double>(nH, 1.0), -kInf, nH - 1);
      }
      int i = nH - 1;
      while (i >= 0 && per[i] == Tbar) per[i--] = 1;
      if (i < 0) break;
      ++per[i];
    }
  }

  SolveParams prm;
  prm.mip_rel_gap = 1e-10;
  prm.mip_abs_gap = 1e-8;
  const auto out = solve(m, prm);
  ExtensiveResult r;
  if (!out.ok()) return r;
  r.feasible = true;
  r.objective = out.objective;
  for (int i = 0; i < nH; ++i)
    for (int p = 1; p <= Tbar; ++p)
      if (out.x[w[i][p]] > 0.5) r.v.period.push_back(p);
  return r;
}

}  // namespace oracle
