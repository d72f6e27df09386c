#include "gridmaint/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "gridmaint/parallel.hpp"

namespace gridmaint {

const double* StatusCache::find(const StatusVector& s) const {
  const auto& m = psi_.at(s.day - 1);
  auto it = m.find(s);
  return it == m.end() ? nullptr : &it->second;
}

void StatusCache::insert(const StatusVector& s, double q) { psi_.at(s.day - 1).emplace(s, q); }

size_t StatusCache::total() const {
  size_t n = 0;
  for (const auto& m : psi_) n += m.size();
  return n;
}

double solve_status(const Instance& inst, const StatusVector& s, Backend& backend) {
  const auto m = build_subproblem(inst, availability_from_status(inst, s), s.day);
  return solve_subproblem(m, inst.cfg.subproblem_gap, backend, "status " + s.to_string()).objective;
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Optimal: return "optimal";
    case RunStatus::IterationLimit: return "iteration-limit";
    case RunStatus::TimeLimit: return "time-limit";
  }
  return "?";
}

std::string schedule_hash(const Schedule& v) {
  std::uint64_t h = 14695981039346656037ULL;
  for (int p : v.period) {
    for (int i = 0; i < 4; ++i) {
      h ^= (static_cast<std::uint32_t>(p) >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string schedule_to_csv(const Schedule& v, const std::vector<std::string>& labels) {
  std::string out = "component,period\n";
  for (size_t i = 0; i < v.period.size(); ++i) out += labels.at(i) + "," + std::to_string(v.period[i]) + "\n";
  return out;
}

Schedule schedule_from_csv(const std::string& text, const std::vector<std::string>& labels) {
  Schedule s;
  s.period.assign(labels.size(), 0);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.rfind("component", 0) == 0 || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("expected component,period", lineno);
    const auto name = line.substr(0, comma);
    const auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) throw ParseError("component " + name + " is not maintainable", lineno);
    int p = 0;
    try {
      p = std::stoi(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError("bad period", lineno);
    }
    auto& slot = s.period[it - labels.begin()];
    if (slot != 0) throw ParseError("component " + name + " listed twice", lineno);
    slot = p;
  }
  for (size_t i = 0; i < labels.size(); ++i)
    if (s.period[i] == 0) throw ValidationError("schedule misses component " + labels[i]);
  return s;
}

std::string SolveReport::schedule_csv() const { return schedule_to_csv(incumbent, labels); }

std::string SolveReport::to_json(const std::string& config_hash) const {
  nlohmann::ordered_json j;
  if (!config_hash.empty()) j["config_hash"] = config_hash;
  j["status"] = to_string(status);
  j["has_incumbent"] = has_incumbent;
  if (has_incumbent) {
    nlohmann::ordered_json s = nlohmann::ordered_json::object();
    for (size_t i = 0; i < incumbent.period.size(); ++i) s[labels[i]] = incumbent.period[i];
    j["schedule"] = s;
    j["incumbent_hash"] = incumbent_hash;
    j["incumbent_probability"] = incumbent_probability;
  }
  auto num = [](double x) { return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr); };
  j["upper_bound"] = num(ub);
  j["lower_bound"] = num(lb);
  j["gap"] = num(gap);
  j["iterations"] = iterations;
  j["subproblems_solved"] = subproblems_solved;
  j["subproblems_aliased"] = subproblems_aliased;
  j["chance_cuts"] = chance_cuts;
  j["optimality_cuts"] = optimality_cuts;
  j["seconds"] = seconds;
  j["lower_bound_seconds"] = lower_bound_seconds;
  if (!notes.empty()) j["notes"] = notes;
  return j.dump(2) + "\n";
}

Decomposition::Decomposition(const Instance& inst, const ScenarioSet& scenarios)
    : inst_(inst), sc_(scenarios), cache_(inst.horizon()) {
  if (scenarios.size() < 1) throw ValidationError("at least one scenario is required");
  if (scenarios.components != inst.maintainable()) throw ValidationError("scenario columns must be H'");
  start_ = std::chrono::steady_clock::now();
}

double Decomposition::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void Decomposition::initialize() {
  if (initialized_) return;
  const int K = sc_.size(), T = inst_.horizon();
  L_.assign(K, std::vector<double>(T, 0.0));
  LowerBoundMemo memo;
  parallel_for(K * T, inst_.cfg.threads, [&](int j, Backend& be) {
    const int k = j / T, t = j % T + 1;
    L_[k][t - 1] = memo.get(inst_, sc_.xi[k], t, be);
  });
  report_.lower_bound_seconds = elapsed();
  master_ = build_master(inst_, sc_, L_, theta_layout(inst_.cfg));
  if (enforce_chance && inst_.cfg.chance == ChanceMode::Safe) {
    safe_ = safe_block(inst_.table, inst_.rho_gen(), inst_.rho_line(), inst_.cfg.alpha);
    add_safe_rows(master_, *safe_);
    if (inst_.cfg.soc == SocHandling::ConicBackend) add_safe_cone(master_, inst_.cfg.alpha);
  }
  report_.labels = inst_.maintainable_labels();
  initialized_ = true;
}

SolveOutcome Decomposition::solve_master(double rel_gap) {
  SolveParams params;
  params.mip_rel_gap = rel_gap;
  params.mip_abs_gap = 1e-9;
  params.time_limit = std::max(1.0, inst_.cfg.time_limit - elapsed());
  params.seed = static_cast<unsigned>(inst_.cfg.seed);
  auto be = make_default_backend();
  if (!master_.spec.cones.empty() && !be->supports_cones()) {
    try {
      return be->solve(master_.spec, params);
    } catch (const CapabilityError& e) {
      master_.spec.cones.clear();
      report_.notes += std::string("conic product row unsupported (") + e.what() + "); using tangent cuts. ";
    }
  }
  return be->solve(master_.spec, params);
}

bool Decomposition::iterate_once() {
  initialize();
  if (converged_) return true;
  const int K = sc_.size(), T = inst_.horizon();
  IterationStats st;
  st.iteration = ++report_.iterations;

  // Early masters only need to be accurate relative to the current gap.
  double rel_gap = inst_.cfg.master_gap;
  if (!tight_ && std::isfinite(report_.gap)) rel_gap = std::max(rel_gap, std::min(1e-2, 0.1 * report_.gap));
  const bool exact_master = rel_gap <= inst_.cfg.master_gap;
  tight_ = false;
  const auto out = solve_master(rel_gap);
  if (out.status == SolveStatus::Infeasible)
    throw Error("no maintenance schedule satisfies the chance constraint");
  if (out.status == SolveStatus::Limit) throw LimitReached("master problem hit the time limit");
  if (!out.ok()) throw SolverError(std::string("master problem: ") + to_string(out.status));
  report_.lb = std::max(report_.lb, out.bound);
  st.v = master_.schedule_from(out.x);

  if (!enforce_chance) {
    st.probability = joint_oracle(st.v, inst_.table, inst_.rho_gen(), inst_.rho_line());
  } else if (inst_.cfg.chance == ChanceMode::Exact) {
    auto oracle = [&](const Schedule& s) { return joint_oracle(s, inst_.table, inst_.rho_gen(), inst_.rho_line()); };
    auto sep = separate(st.v, oracle, inst_.cfg.alpha, inst_.tbar());
    st.probability = sep.probability;
    st.chance_feasible = sep.feasible;
    if (sep.cut) st.chance_cuts_added += master_.add_chance_cut(*sep.cut);
  } else {
    st.probability = joint_oracle(st.v, inst_.table, inst_.rho_gen(), inst_.rho_line());
    st.chance_feasible = safe_->accepts(st.v);
    if (!st.chance_feasible) {
      for (const auto& cut : soc_outer_cuts(safe_->x(st.v), safe_->y(st.v), inst_.cfg.alpha))
        st.chance_cuts_added += master_.add_chance_cut(cut);
      st.chance_cuts_added +=
          master_.add_chance_cut(cover_cut(extend_cover(cover_from_schedule(st.v), inst_.tbar()), master_.num_h));
    }
  }

  st.solved_per_day.assign(T, 0);
  st.aliased_per_day.assign(T, 0);
  if (st.chance_feasible) {
    std::vector<std::vector<StatusVector>> sv(K);
    std::vector<StatusVector> fresh;
    std::vector<std::unordered_map<StatusVector, int, StatusVectorHash>> queued(T);
    for (int k = 0; k < K; ++k)
      for (int t = 1; t <= T; ++t) {
        sv[k].push_back(status_vector(inst_, st.v, sc_.xi[k], t));
        const auto& s = sv[k].back();
        if (cache_.find(s) || queued[t - 1].count(s)) {
          ++st.aliased_per_day[t - 1];
        } else {
          queued[t - 1].emplace(s, static_cast<int>(fresh.size()));
          fresh.push_back(s);
          ++st.solved_per_day[t - 1];
        }
      }
    std::vector<double> q(fresh.size());
    parallel_for(static_cast<int>(fresh.size()), inst_.cfg.threads,
                 [&](int j, Backend& be) { q[j] = solve_status(inst_, fresh[j], be); });
    for (size_t j = 0; j < fresh.size(); ++j) cache_.insert(fresh[j], q[j]);
    report_.subproblems_solved += static_cast<long>(fresh.size());
    report_.subproblems_aliased += static_cast<long>(K) * T - static_cast<long>(fresh.size());

    std::vector<std::vector<double>> Q(K, std::vector<double>(T));
    double cand = 0.0;
    for (int k = 0; k < K; ++k) {
      double qk = 0.0;
      for (int t = 1; t <= T; ++t) qk += Q[k][t - 1] = *cache_.find(sv[k][t - 1]);
      cand += sc_.prob[k] * (schedule_cost(inst_, st.v, sc_.xi[k]) + qk);
    }
    st.candidate = cand;
    if (cand < report_.ub) {
      report_.ub = cand;
      report_.incumbent = st.v;
      report_.has_incumbent = true;
      report_.incumbent_q = Q;
      report_.incumbent_probability = st.probability;
    }
    for (const auto& cut : generate_optimality_cuts(inst_, sc_, master_.layout, inst_.cfg.cuts, st.v, Q, L_))
      st.optimality_cuts_added += master_.add_optimality_cut(cut);
  }
  report_.chance_cuts = static_cast<int>(master_.chance.size());
  report_.optimality_cuts = static_cast<int>(master_.optimality.size());

  const double ub = report_.ub, lb = report_.lb;
  if (std::isfinite(ub))
    report_.gap = ub > 0 ? std::max(0.0, (ub - lb) / ub) : (ub - lb <= 1e-9 ? 0.0 : kInf);
  st.lb = lb;
  st.ub = ub;
  bool stalled = st.chance_feasible && st.optimality_cuts_added == 0;
  if (stalled && !exact_master) {
    stalled = false;
    tight_ = true;
  }
  converged_ = std::isfinite(ub) && (report_.gap <= inst_.cfg.epsilon || stalled);
  last_ = st;

  if (progress) {
    long solved = 0, aliased = 0;
    for (int t = 0; t < T; ++t) solved += st.solved_per_day[t], aliased += st.aliased_per_day[t];
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "iter=%d lb=%.6f ub=%.6f gap=%.3e feasible=%d p=%.6f chance_cuts=%zu opt_cuts=%zu solved=%ld "
                  "aliased=%ld",
                  st.iteration, lb, ub, report_.gap, st.chance_feasible ? 1 : 0, st.probability,
                  master_.chance.size(), master_.optimality.size(), solved, aliased);
    progress(buf);
  }
  return converged_;
}

void Decomposition::finish() {
  report_.seconds = elapsed();
  if (report_.has_incumbent) report_.incumbent_hash = schedule_hash(report_.incumbent);
}

SolveReport Decomposition::solve() {
  initialize();
  report_.status = RunStatus::Optimal;
  while (true) {
    if (report_.iterations >= inst_.cfg.max_iterations) {
      report_.status = RunStatus::IterationLimit;
      break;
    }
    if (elapsed() >= inst_.cfg.time_limit) {
      report_.status = RunStatus::TimeLimit;
      break;
    }
    try {
      if (iterate_once()) break;
    } catch (const LimitReached&) {
      report_.status = RunStatus::TimeLimit;
      break;
    }
  }
  finish();
  return report_;
}

SolveReport solve_plan(const Instance& inst, const ScenarioSet& scenarios,
                       const std::function<void(const std::string&)>& progress) {
  Decomposition d(inst, scenarios);
  d.progress = progress;
  return d.solve();
}

}  // namespace gridmaint
