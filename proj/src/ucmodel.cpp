#include "gridmaint/ucmodel.hpp"

#include <algorithm>
#include <cmath>

namespace gridmaint {

namespace {

std::uint64_t fnv(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 1099511628211ULL;
  }
  return h;
}

constexpr std::uint64_t kFnvBasis = 14695981039346656037ULL;

enum class LineMode { On, Off, OffSwitch, Relaxed };

struct OpsSpec {
  std::vector<std::uint8_t> gen_on;
  std::vector<LineMode> line;
  bool relax_commitment = false;
  const FlowBoundMask* mask = nullptr;
};

// y columns of relaxed lines, [line][hour]; empty for other modes.
std::vector<std::vector<int>> add_operations(DayModel& m, const Network& net, const DemandGrid& demand, int t,
                                             const OpsSpec& ops) {
  auto& spec = m.spec;
  const int S = demand.hours();
  const int G = static_cast<int>(net.generators.size());
  const int L = static_cast<int>(net.lines.size());
  const int B = static_cast<int>(net.buses.size());
  m.day = t;
  m.hours = S;
  auto grid = [S](int n) { return std::vector<std::vector<int>>(n, std::vector<int>(S, -1)); };
  m.p = grid(G), m.x = grid(G), m.su = grid(G), m.sd = grid(G);
  m.q = grid(B), m.delta = grid(B), m.f = grid(L);
  std::vector<std::vector<int>> y(L);

  for (int g = 0; g < G; ++g) {
    const auto& gen = net.generators[g];
    const bool on = ops.gen_on[g] != 0;
    const std::string tag = "G" + std::to_string(gen.id) + "_" + std::to_string(t);
    for (int s = 0; s < S; ++s) {
      const std::string hs = tag + "_" + std::to_string(s + 1);
      m.x[g][s] = spec.add_var(0, on ? 1 : 0, gen.noload_cost, !ops.relax_commitment, "x_" + hs);
      m.p[g][s] = spec.add_var(0, on ? gen.p_max : 0, gen.gen_cost, false, "p_" + hs);
      m.su[g][s] = spec.add_var(0, 1, gen.startup_cost, false, "su_" + hs);
      m.sd[g][s] = spec.add_var(0, 1, 0, false, "sd_" + hs);
      spec.add_row({m.p[g][s], m.x[g][s]}, {1, -gen.p_max}, -kInf, 0);
      spec.add_row({m.p[g][s], m.x[g][s]}, {1, -gen.p_min}, 0, kInf);
      if (s == 0) continue;
      spec.add_row({m.su[g][s], m.x[g][s], m.x[g][s - 1]}, {1, -1, 1}, 0, kInf);
      spec.add_row({m.sd[g][s], m.x[g][s - 1], m.x[g][s]}, {1, -1, 1}, 0, kInf);
      spec.add_row({m.p[g][s], m.p[g][s - 1]}, {1, -1}, -gen.ramp_down, gen.ramp_up);
    }
    for (int s = 1; s < S; ++s) {
      for (int s2 = s + 1; s2 <= std::min(s + gen.min_up - 1, S - 1); ++s2)
        spec.add_row({m.x[g][s], m.x[g][s - 1], m.x[g][s2]}, {1, -1, -1}, -kInf, 0);
      for (int s2 = s + 1; s2 <= std::min(s + gen.min_down - 1, S - 1); ++s2)
        spec.add_row({m.x[g][s - 1], m.x[g][s], m.x[g][s2]}, {1, -1, 1}, -kInf, 1);
    }
  }

  for (int i = 0; i < B; ++i) {
    const auto& bus = net.buses[i];
    for (int s = 0; s < S; ++s) {
      const std::string hs = std::to_string(bus.id) + "_" + std::to_string(t) + "_" + std::to_string(s + 1);
      m.q[i][s] = spec.add_var(0, demand.at(i, t - 1, s), bus.curtail_cost, false, "q_" + hs);
      m.delta[i][s] = spec.add_var(bus.delta_min, bus.delta_max, 0, false, "d_" + hs);
    }
  }

  bool eligible_all_on = ops.mask != nullptr;
  if (ops.mask)
    for (int l = 0; l < L; ++l)
      if (ops.mask->eligible(l) && ops.line[l] != LineMode::On) eligible_all_on = false;

  for (int l = 0; l < L; ++l) {
    const auto& line = net.lines[l];
    const double k = net.flow_coeff(line);
    const LineMode mode = ops.line[l];
    const std::string tag = "L" + std::to_string(line.id) + "_" + std::to_string(t);
    if (mode == LineMode::Relaxed) y[l].assign(S, -1);
    for (int s = 0; s < S; ++s) {
      const std::string hs = tag + "_" + std::to_string(s + 1);
      const int di = m.delta[line.from][s], dj = m.delta[line.to][s];
      switch (mode) {
        case LineMode::On: {
          double lo = -line.flow_limit, hi = line.flow_limit;
          if (eligible_all_on && ops.mask->eligible(l)) {
            if (ops.mask->upper_dropped(l, t - 1, s)) hi = kInf, ++m.dropped_bounds;
            if (ops.mask->lower_dropped(l, t - 1, s)) lo = -kInf, ++m.dropped_bounds;
          }
          m.f[l][s] = spec.add_var(lo, hi, 0, false, "f_" + hs);
          spec.add_row({m.f[l][s], di, dj}, {1, -k, k}, 0, 0);
          break;
        }
        case LineMode::Off:
          m.f[l][s] = spec.add_var(0, 0, 0, false, "f_" + hs);
          break;
        case LineMode::OffSwitch:
          m.f[l][s] = spec.add_var(0, 0, 0, false, "f_" + hs);
          spec.add_row({di, dj}, {k, -k}, -line.big_m, line.big_m);
          break;
        case LineMode::Relaxed: {
          m.f[l][s] = spec.add_var(-kInf, kInf, 0, false, "f_" + hs);
          const int yv = spec.add_var(0, 1, 0, false, "y_" + hs);
          y[l][s] = yv;
          spec.add_row({m.f[l][s], di, dj, yv}, {1, -k, k, line.big_m}, -kInf, line.big_m);
          spec.add_row({m.f[l][s], di, dj, yv}, {1, -k, k, -line.big_m}, -line.big_m, kInf);
          spec.add_row({m.f[l][s], yv}, {1, -line.flow_limit}, -kInf, 0);
          spec.add_row({m.f[l][s], yv}, {1, line.flow_limit}, 0, kInf);
          break;
        }
      }
    }
  }

  for (int i = 0; i < B; ++i) {
    for (int s = 0; s < S; ++s) {
      std::vector<int> idx{m.q[i][s]};
      std::vector<double> coef{1.0};
      for (int g = 0; g < G; ++g)
        if (net.generators[g].bus == i) idx.push_back(m.p[g][s]), coef.push_back(1.0);
      for (int l = 0; l < L; ++l) {
        if (net.lines[l].from == i) idx.push_back(m.f[l][s]), coef.push_back(-1.0);
        if (net.lines[l].to == i) idx.push_back(m.f[l][s]), coef.push_back(1.0);
      }
      const double d = demand.at(i, t - 1, s);
      spec.add_row(std::move(idx), std::move(coef), d, d);
    }
  }
  return y;
}

OperationalSolution extract(const DayModel& m, const std::vector<double>& x) {
  auto take = [&](const std::vector<std::vector<int>>& cols) {
    std::vector<std::vector<double>> out(cols.size());
    for (size_t i = 0; i < cols.size(); ++i)
      for (int c : cols[i]) out[i].push_back(c >= 0 ? x[c] : 0.0);
    return out;
  };
  return {take(m.p), take(m.x), take(m.su), take(m.sd), take(m.q), take(m.f), take(m.delta)};
}

}  // namespace

std::uint64_t Availability::hash() const {
  std::uint64_t h = kFnvBasis;
  for (auto b : gen) h = fnv(h, b);
  h = fnv(h, 0xfe);
  for (auto b : line) h = fnv(h, b);
  return h;
}

std::uint64_t StatusVector::hash() const {
  std::uint64_t h = fnv(kFnvBasis, static_cast<std::uint64_t>(day));
  for (auto b : bits) h = fnv(h, b);
  return h;
}

std::string StatusVector::to_string() const {
  std::string s = "t" + std::to_string(day) + ":";
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

StatusVector status_vector(const Schedule& v, const std::vector<int>& xi, int t, const std::vector<Durations>& dur,
                           int horizon) {
  if (xi.size() != v.period.size() || dur.size() != v.period.size())
    throw ValidationError("status vector inputs disagree in size");
  StatusVector sv;
  sv.day = t;
  sv.bits.resize(v.period.size());
  for (size_t i = 0; i < v.period.size(); ++i)
    sv.bits[i] = component_available(v.period[i], xi[i], t, dur[i], horizon) ? 1 : 0;
  return sv;
}

StatusVector status_vector(const Instance& inst, const Schedule& v, const std::vector<int>& xi, int t) {
  std::vector<Durations> dur;
  for (int h : inst.maintainable()) dur.push_back(inst.durations(h));
  return status_vector(v, xi, t, dur, inst.horizon());
}

Availability availability_from_status(const Instance& inst, const StatusVector& s) {
  auto a = Availability::all_on(inst.net);
  const auto& hp = inst.maintainable();
  for (size_t i = 0; i < hp.size(); ++i) {
    const auto& c = inst.components[hp[i]];
    (c.kind == ComponentKind::Generator ? a.gen : a.line)[c.index] = s.bits[i];
  }
  return a;
}

Availability availability_full(const Instance& inst, const Schedule& v, const std::vector<int>& xi_all, int t) {
  auto a = Availability::all_on(inst.net);
  const auto& hp = inst.maintainable();
  for (size_t i = 0; i < hp.size(); ++i) {
    const int h = hp[i];
    const auto& c = inst.components[h];
    (c.kind == ComponentKind::Generator ? a.gen : a.line)[c.index] =
        component_available(v.period[i], xi_all[h], t, inst.durations(h), inst.horizon()) ? 1 : 0;
  }
  for (int h : inst.unmaintained()) {
    const auto& c = inst.components[h];
    (c.kind == ComponentKind::Generator ? a.gen : a.line)[c.index] =
        unmaintained_available(xi_all[h], t, inst.durations(h), inst.horizon()) ? 1 : 0;
  }
  return a;
}

DayModel build_subproblem(const Network& net, const DemandGrid& demand, const Availability& avail, int t,
                          const SubproblemOptions& opt) {
  if (t < 1 || t > demand.days()) throw ValidationError("day out of range");
  if (avail.gen.size() != net.generators.size() || avail.line.size() != net.lines.size())
    throw ValidationError("availability does not match the network");
  OpsSpec ops;
  ops.gen_on = avail.gen;
  ops.mask = opt.mask;
  ops.line.resize(net.lines.size());
  for (size_t l = 0; l < net.lines.size(); ++l) {
    const bool sw = l < opt.switchable.size() && opt.switchable[l];
    ops.line[l] = avail.line[l] ? LineMode::On : (sw ? LineMode::OffSwitch : LineMode::Off);
  }
  DayModel m;
  add_operations(m, net, demand, t, ops);
  return m;
}

DayModel build_subproblem(const Instance& inst, const Availability& avail, int t) {
  SubproblemOptions opt;
  opt.switchable = inst.switchable_lines();
  if (inst.flow_mask) opt.mask = &*inst.flow_mask;
  return build_subproblem(inst.net, inst.demand, avail, t, opt);
}

SubproblemResult solve_subproblem(const DayModel& m, double eps, Backend& backend, const std::string& context) {
  SolveParams params;
  params.mip_rel_gap = eps;
  params.mip_abs_gap = 1e-9;
  const auto out = backend.solve(m.spec, params);
  if (!out.ok())
    throw SolverError("subproblem " + (context.empty() ? "" : context + " ") + "day " + std::to_string(m.day) +
                      ": " + to_string(out.status) + (out.message.empty() ? "" : " (" + out.message + ")"));
  SubproblemResult r;
  r.objective = out.objective;
  r.bound = out.bound;
  r.gap = out.gap;
  r.status = out.status;
  r.sol = extract(m, out.x);
  return r;
}

SubproblemResult solve_subproblem(const DayModel& m, double eps) {
  auto be = make_default_backend();
  return solve_subproblem(m, eps, *be);
}

ModelSpec lower_bound_model(const Instance& inst, const std::vector<int>& xi, int t) {
  const auto& hp = inst.maintainable();
  if (xi.size() != hp.size()) throw ValidationError("failure vector size differs from |H'|");
  const int T = inst.horizon(), tbar = inst.tbar();
  const auto sw = inst.switchable_lines();
  OpsSpec ops;
  ops.gen_on.assign(inst.net.generators.size(), 1);
  ops.relax_commitment = true;
  ops.line.resize(inst.net.lines.size());
  for (size_t l = 0; l < inst.net.lines.size(); ++l) ops.line[l] = sw[l] ? LineMode::Relaxed : LineMode::On;
  DayModel m;
  const auto y = add_operations(m, inst.net, inst.demand, t, ops);
  auto& spec = m.spec;
  for (size_t i = 0; i < hp.size(); ++i) {
    const int h = hp[i];
    const auto d = inst.durations(h);
    const auto& c = inst.components[h];
    std::vector<int> w(tbar + 1, -1);
    std::vector<int> idx;
    for (int p = 1; p <= tbar; ++p) idx.push_back(w[p] = spec.add_var(0, 1, 0, false));
    spec.add_row(idx, std::vector<double>(idx.size(), 1.0), 1, 1);
    const auto& cols = c.kind == ComponentKind::Generator ? m.x[c.index] : y[c.index];
    // Predictive windows covering day t.
    std::vector<int> pred;
    for (int p = std::max(1, t - d.tau_p + 1); p <= std::min(t, xi[i] - 1); ++p) pred.push_back(w[p]);
    // Corrective window covering day t: out unless maintained before failure.
    const bool corr = xi[i] <= T && t >= xi[i] && t <= xi[i] + d.tau_c - 1;
    std::vector<int> before;
    for (int p = 1; p < xi[i] && p <= tbar; ++p) before.push_back(w[p]);
    for (int col : cols) {
      if (!pred.empty()) {
        std::vector<int> ri{col};
        ri.insert(ri.end(), pred.begin(), pred.end());
        spec.add_row(ri, std::vector<double>(ri.size(), 1.0), -kInf, 1);
      }
      if (corr) {
        std::vector<int> ri{col};
        std::vector<double> rc{1.0};
        for (int b : before) ri.push_back(b), rc.push_back(-1.0);
        spec.add_row(ri, rc, -kInf, 0);
      }
    }
  }
  return std::move(m.spec);
}

double lp_lower_bound(const Instance& inst, const std::vector<int>& xi, int t, Backend& backend) {
  const auto spec = lower_bound_model(inst, xi, t);
  const auto out = backend.solve(spec, {});
  if (!out.ok()) throw SolverError("lower-bound LP day " + std::to_string(t) + ": " + to_string(out.status));
  return std::max(0.0, out.objective);
}

double lp_lower_bound(const Instance& inst, const std::vector<int>& xi, int t) {
  auto be = make_default_backend();
  return lp_lower_bound(inst, xi, t, *be);
}

double LowerBoundMemo::get(const Instance& inst, const std::vector<int>& xi, int t, Backend& backend) {
  auto key = std::make_pair(t, xi);
  {
    std::lock_guard lk(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const double v = lp_lower_bound(inst, xi, t, backend);
  std::lock_guard lk(mu_);
  return memo_.emplace(std::move(key), v).first->second;
}

size_t LowerBoundMemo::size() const {
  std::lock_guard lk(mu_);
  return memo_.size();
}

std::string export_lp(const DayModel& m) { return to_lp_format(m.spec); }

}  // namespace gridmaint
