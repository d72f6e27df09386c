#include "gridmaint/pboracle.hpp"

#include <sstream>

#include "gridmaint/error.hpp"
#include "gridmaint/kernels/pb_convolve.hpp"

namespace gridmaint {

std::vector<double> pb_pmf(std::span<const double> probs) {
  const size_t n = probs.size();
  std::vector<double> a(n + 1, 0.0), b(n + 1, 0.0);
  a[0] = 1.0;
  const auto step = kernels::active_convolve();
  for (size_t i = 0; i < n; ++i) {
    const double p = probs[i];
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("success probability outside [0,1]");
    step(a.data(), b.data(), i + 1, p);
    std::swap(a, b);
  }
  return a;
}

double pb_cdf(std::span<const double> probs, int k) {
  if (k < 0) return 0.0;
  if (k >= static_cast<int>(probs.size())) return 1.0;
  const auto pmf = pb_pmf(probs);
  double s = 0.0;
  for (int j = 0; j <= k; ++j) s += pmf[j];
  return std::min(1.0, s);
}

Schedule schedule_from_binary(const std::vector<std::vector<int>>& v) {
  Schedule s;
  for (size_t h = 0; h < v.size(); ++h) {
    int found = 0, count = 0;
    for (size_t t = 0; t < v[h].size(); ++t) {
      if (v[h][t] != 0 && v[h][t] != 1) throw ValidationError("schedule entries must be binary");
      if (v[h][t]) {
        ++count;
        found = static_cast<int>(t) + 1;
      }
    }
    if (count != 1) throw ValidationError("schedule row " + std::to_string(h) + " must contain exactly one maintenance");
    s.period.push_back(found);
  }
  return s;
}

std::vector<std::vector<int>> schedule_to_binary(const Schedule& s, int horizon) {
  std::vector<std::vector<int>> v(s.period.size(), std::vector<int>(horizon + 1, 0));
  for (size_t h = 0; h < s.period.size(); ++h) v[h][s.period[h] - 1] = 1;
  return v;
}

SuccessProbTable SuccessProbTable::from_cdfs(const std::vector<ComponentKind>& kinds,
                                             const std::vector<std::vector<double>>& cdf,
                                             std::vector<int> maintainable, std::vector<int> unmaintained) {
  if (kinds.size() != cdf.size()) throw ValidationError("one CDF per component required");
  SuccessProbTable t;
  t.horizon = cdf.empty() ? 0 : static_cast<int>(cdf.front().size());
  t.kind = kinds;
  for (const auto& f : cdf) {
    if (static_cast<int>(f.size()) != t.horizon) throw ValidationError("CDFs must share the horizon");
    std::vector<double> q(f.begin(), f.end());
    double prev = 0.0;
    for (double& x : q) {
      if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("CDF values must lie in [0,1]");
      if (x < prev) throw ValidationError("CDF must be nondecreasing");
      prev = x;
    }
    q.push_back(q.empty() ? 0.0 : q.back());
    t.q.push_back(std::move(q));
  }
  t.maintainable = std::move(maintainable);
  t.unmaintained = std::move(unmaintained);
  return t;
}

std::string SuccessProbTable::to_csv(const std::vector<std::string>& labels) const {
  std::ostringstream os;
  os.precision(17);
  os << "component,m,q\n";
  for (size_t h = 0; h < q.size(); ++h)
    for (size_t m = 0; m < q[h].size(); ++m)
      os << (h < labels.size() ? labels[h] : std::to_string(h)) << ',' << m + 1 << ',' << q[h][m] << '\n';
  return os.str();
}

std::pair<BernoulliProfile, BernoulliProfile> success_probs(const Schedule& v, const SuccessProbTable& table) {
  if (v.period.size() != table.maintainable.size())
    throw ValidationError("schedule does not cover every maintainable component");
  BernoulliProfile gen, line;
  auto push = [&](int h, double p) {
    auto& prof = table.kind[h] == ComponentKind::Generator ? gen : line;
    prof.probs.push_back(p);
    prof.components.push_back(h);
  };
  for (size_t i = 0; i < v.period.size(); ++i) {
    const int m = v.period[i];
    if (m < 1 || m > table.horizon + 1) throw ValidationError("maintenance period out of range");
    push(table.maintainable[i], table.at(table.maintainable[i], m));
  }
  for (int h : table.unmaintained) push(h, table.at(h, table.horizon));
  return {std::move(gen), std::move(line)};
}

double joint_oracle(const Schedule& v, const SuccessProbTable& table, int rho_gen, int rho_line) {
  const auto [g, l] = success_probs(v, table);
  return pb_cdf(g.probs, rho_gen) * pb_cdf(l.probs, rho_line);
}

std::vector<Schedule> enumerate_schedules(int num_components, int horizon) {
  const int tbar = horizon + 1;
  std::vector<Schedule> out;
  Schedule cur;
  cur.period.assign(num_components, 1);
  while (true) {
    out.push_back(cur);
    int i = num_components - 1;
    while (i >= 0 && cur.period[i] == tbar) {
      cur.period[i] = 1;
      --i;
    }
    if (i < 0) break;
    ++cur.period[i];
  }
  return out;
}

}  // namespace gridmaint
