#include "gridmaint/preflow.hpp"

#include <chrono>
#include <cstdio>

#include "gridmaint/parallel.hpp"

namespace gridmaint {

namespace {

bool is_switchable(const std::vector<std::uint8_t>& sw, int l) { return l < static_cast<int>(sw.size()) && sw[l]; }

struct Relaxation {
  ModelSpec spec;
  std::vector<int> f;
};

Relaxation relaxation(const Network& net, const std::vector<double>& cap, const std::vector<std::uint8_t>& sw) {
  const int B = static_cast<int>(net.buses.size());
  if (static_cast<int>(cap.size()) != B) throw ValidationError("one demand cap per bus required");
  Relaxation r;
  auto& spec = r.spec;
  std::vector<int> delta(B), q(B), d(B);
  for (int i = 0; i < B; ++i) {
    if (cap[i] < 0) throw ValidationError("negative demand cap");
    delta[i] = spec.add_var(net.buses[i].delta_min, net.buses[i].delta_max, 0);
    d[i] = spec.add_var(0, cap[i], 0);
    q[i] = spec.add_var(0, kInf, 0);
    spec.add_row({q[i], d[i]}, {1, -1}, -kInf, 0);
  }
  std::vector<std::vector<int>> idx(B);
  std::vector<std::vector<double>> coef(B);
  for (int i = 0; i < B; ++i) idx[i] = {q[i], d[i]}, coef[i] = {1.0, -1.0};
  for (const auto& g : net.generators) {
    const int x = spec.add_var(0, 1, 0);
    const int p = spec.add_var(0, g.p_max, 0);
    spec.add_row({p, x}, {1, -g.p_max}, -kInf, 0);
    spec.add_row({p, x}, {1, -g.p_min}, 0, kInf);
    idx[g.bus].push_back(p);
    coef[g.bus].push_back(1.0);
  }
  for (int l = 0; l < static_cast<int>(net.lines.size()); ++l) {
    const auto& line = net.lines[l];
    const double k = net.flow_coeff(line);
    const int f = spec.add_var(-kInf, kInf, 0);
    r.f.push_back(f);
    const int di = delta[line.from], dj = delta[line.to];
    if (is_switchable(sw, l)) {
      const int y = spec.add_var(0, 1, 0);
      spec.add_row({f, di, dj, y}, {1, -k, k, line.big_m}, -kInf, line.big_m);
      spec.add_row({f, di, dj, y}, {1, -k, k, -line.big_m}, -line.big_m, kInf);
      spec.add_row({f, y}, {1, -line.flow_limit}, -kInf, 0);
      spec.add_row({f, y}, {1, line.flow_limit}, 0, kInf);
    } else {
      spec.add_row({f, di, dj}, {1, -k, k}, 0, 0);
    }
    idx[line.from].push_back(f), coef[line.from].push_back(-1.0);
    idx[line.to].push_back(f), coef[line.to].push_back(1.0);
  }
  for (int i = 0; i < B; ++i) spec.add_row(idx[i], coef[i], 0, 0);
  return r;
}

double extreme(Relaxation& r, int line, FlowDirection dir, Backend& backend) {
  for (auto& v : r.spec.vars) v.obj = 0.0;
  r.spec.vars[r.f[line]].obj = 1.0;
  r.spec.sense = dir == FlowDirection::Upper ? ObjSense::Maximize : ObjSense::Minimize;
  const auto out = backend.solve(r.spec, {});
  if (!out.ok()) throw SolverError(std::string("flow bound LP: ") + to_string(out.status));
  return out.objective;
}

bool redundant(double f_star, double limit, FlowDirection dir) {
  return dir == FlowDirection::Upper ? f_star < limit : f_star > -limit;
}

}  // namespace

double flow_extreme(const Network& net, const std::vector<double>& demand_cap, int line, FlowDirection dir,
                    const std::vector<std::uint8_t>& switchable, Backend& backend) {
  if (line < 0 || line >= static_cast<int>(net.lines.size())) throw ValidationError("line out of range");
  auto r = relaxation(net, demand_cap, switchable);
  return extreme(r, line, dir, backend);
}

double flow_extreme(const Network& net, const std::vector<double>& demand_cap, int line, FlowDirection dir,
                    const std::vector<std::uint8_t>& switchable) {
  auto be = make_default_backend();
  return flow_extreme(net, demand_cap, line, dir, switchable, *be);
}

int RedundancyReport::count_redundant() const {
  int n = 0;
  for (const auto& e : entries) n += e.redundant;
  return n;
}

bool RedundancyReport::covers(int line, FlowDirection dir, int day, int hour) const {
  for (const auto& e : entries)
    if (e.redundant && e.line == line && e.dir == dir && (e.day == 0 || e.day == day) &&
        (e.hour == 0 || e.hour == hour))
      return true;
  return false;
}

std::string RedundancyReport::to_csv(const Network& net, const std::string& config_hash) const {
  std::string out;
  if (!config_hash.empty()) out += "# config_hash " + config_hash + "\n";
  out += std::string("# mode ") + gridmaint::to_string(mode) + "\n";
  out += "line,dir,scope,f_star,limit,redundant\n";
  char buf[256];
  for (const auto& e : entries) {
    std::string scope = e.day == 0 ? "all" : "t" + std::to_string(e.day);
    if (e.hour) scope += "s" + std::to_string(e.hour);
    std::snprintf(buf, sizeof buf, "L%d,%s,%s,%.10g,%.10g,%d\n", net.lines[e.line].id,
                  e.dir == FlowDirection::Upper ? "upper" : "lower", scope.c_str(), e.f_star, e.limit,
                  e.redundant ? 1 : 0);
    out += buf;
  }
  return out;
}

FlowBoundMask RedundancyReport::to_mask(const Network& net, int days, int hours,
                                        const std::vector<std::uint8_t>& switchable) const {
  const int L = static_cast<int>(net.lines.size());
  FlowBoundMask m(L, days, hours);
  for (int l = 0; l < L; ++l) m.set_eligible(l, !is_switchable(switchable, l));
  for (const auto& e : entries) {
    if (!e.redundant || is_switchable(switchable, e.line)) continue;
    for (int t = 1; t <= days; ++t) {
      if (e.day && e.day != t) continue;
      for (int s = 1; s <= hours; ++s) {
        if (e.hour && e.hour != s) continue;
        if (e.dir == FlowDirection::Upper) m.drop_upper(e.line, t - 1, s - 1);
        else m.drop_lower(e.line, t - 1, s - 1);
      }
    }
  }
  return m;
}

RedundancyReport analyze(const Network& net, const DemandGrid& demand, FlowMode mode,
                         const std::vector<std::uint8_t>& switchable, int threads) {
  if (mode == FlowMode::None) throw ValidationError("flow analysis needs mode I, II or III");
  const auto start = std::chrono::steady_clock::now();
  const int B = static_cast<int>(net.buses.size()), L = static_cast<int>(net.lines.size());
  const int T = demand.days(), S = demand.hours();
  if (demand.buses() != B) throw ValidationError("demand grid does not match the network");

  struct Scope {
    int day, hour;
    std::vector<double> cap;
  };
  std::vector<Scope> scopes;
  if (mode == FlowMode::I) {
    std::vector<double> cap(B);
    for (int i = 0; i < B; ++i) cap[i] = demand.peak(i);
    scopes.push_back({0, 0, cap});
  } else if (mode == FlowMode::II) {
    for (int t = 1; t <= T; ++t) {
      std::vector<double> cap(B);
      for (int i = 0; i < B; ++i) cap[i] = demand.peak(i, t - 1);
      scopes.push_back({t, 0, cap});
    }
  } else {
    for (int t = 1; t <= T; ++t)
      for (int s = 1; s <= S; ++s) {
        std::vector<double> cap(B);
        for (int i = 0; i < B; ++i) cap[i] = demand.at(i, t - 1, s - 1);
        scopes.push_back({t, s, cap});
      }
  }
  std::vector<int> lines;
  for (int l = 0; l < L; ++l)
    if (!is_switchable(switchable, l)) lines.push_back(l);

  RedundancyReport rep;
  rep.mode = mode;
  const int per_scope = static_cast<int>(lines.size()) * 2;
  rep.entries.resize(scopes.size() * per_scope);
  parallel_for(static_cast<int>(scopes.size()), threads, [&](int j, Backend& be) {
    auto r = relaxation(net, scopes[j].cap, switchable);
    for (size_t a = 0; a < lines.size(); ++a)
      for (int d = 0; d < 2; ++d) {
        auto& e = rep.entries[static_cast<size_t>(j) * per_scope + a * 2 + d];
        e.line = lines[a];
        e.dir = d == 0 ? FlowDirection::Upper : FlowDirection::Lower;
        e.day = scopes[j].day;
        e.hour = scopes[j].hour;
        e.limit = net.lines[e.line].flow_limit;
        e.f_star = extreme(r, e.line, e.dir, be);
        e.redundant = redundant(e.f_star, e.limit, e.dir);
      }
  });
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace gridmaint
