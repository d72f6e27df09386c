#include "gridmaint/degrade.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"

namespace gridmaint {

double SignalObservations::total() const {
  double s = 0.0;
  for (double d : increments) s += d;
  return s;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// log of the standard normal CDF at -b for b >= 0.
double log_ndtr_neg(double b) {
  if (b < 30.0) return std::log(0.5 * std::erfc(b / std::numbers::sqrt2));
  const double b2 = b * b;
  const double series = 1.0 - 1.0 / b2 + 3.0 / (b2 * b2) - 15.0 / (b2 * b2 * b2);
  return -0.5 * b2 - std::log(b) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

}  // namespace

SimulatedSignal simulate_signal(const DegradationPriors& p, double dt, std::uint64_t seed, long max_steps) {
  if (!(dt > 0)) throw ValidationError("dt must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  const double upsilon = p.mu0 + p.kappa0 * z(rng);
  const double beta = p.mu1 + p.kappa1 * z(rng);

  SimulatedSignal out;
  out.obs.t_first = 1;
  double w = 0.0;
  double last_recorded = 0.0;  // level at the previous integer time; D^1 is measured from 0
  int next_integer = 1;
  const double sqdt = std::sqrt(dt);
  if (upsilon >= p.lambda) {
    out.failure_time = 0.0;
    out.obs.t_obs = 0;
    return out;
  }
  for (long n = 1; n <= max_steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    w += sqdt * z(rng);
    const double d = upsilon + beta * t + p.sigma * w;
    const bool crossed = d >= p.lambda;
    if (t >= next_integer - 1e-9 || crossed) {
      out.obs.increments.push_back(d - last_recorded);
      last_recorded = d;
      out.obs.t_obs = next_integer;
      ++next_integer;
    }
    if (crossed) {
      out.failure_time = t;
      return out;
    }
  }
  throw Error("signal did not reach the failure threshold within the step guard");
}

double posterior_drift(const DegradationPriors& p, const SignalObservations& obs) {
  if (obs.increments.empty() || obs.t_obs < obs.t_first || obs.t_first < 1)
    throw ValidationError("invalid signal observations");
  if (p.kappa1 == 0.0) return p.mu1;
  const double k0 = p.kappa0 * p.kappa0;
  const double k1 = p.kappa1 * p.kappa1;
  const double s2 = p.sigma * p.sigma;
  const double t1 = obs.t_first;
  const double tk = obs.t_obs;
  const double sum = obs.total();
  const double d1 = obs.increments.front();
  const double a = k0 + s2 * t1;
  const double num = (k1 * sum + p.mu1 * s2) * a - k1 * (d1 * k0 + p.mu0 * s2 * t1);
  const double den = a * (k1 * tk + s2) - k0 * k1 * t1;
  const double scale = std::abs(a * (k1 * tk + s2)) + std::abs(k0 * k1 * t1);
  if (den == 0.0 || std::abs(den) <= 1e-14 * scale) throw Error("posterior drift is singular for these priors");
  return num / den;
}

ComponentRLD rld(const DegradationPriors& p, const SignalObservations& obs, double drift) {
  const double sum = obs.total();
  if (!(sum < p.lambda)) throw ValidationError("component has already crossed the failure threshold");
  if (!(drift > 0)) throw NonDegradingError("non-positive posterior drift; component does not degrade");
  if (!(p.sigma > 0)) throw ValidationError("signal sd must be positive for an inverse-Gaussian RLD");
  const double rem = p.lambda - sum;
  return ComponentRLD{rem / drift, rem * rem / (p.sigma * p.sigma), static_cast<double>(obs.t_obs)};
}

double ig_pdf(double x, double mu, double lambda) {
  if (!(x > 0)) return 0.0;
  const double e = -lambda * (x - mu) * (x - mu) / (2.0 * mu * mu * x);
  return std::sqrt(lambda / (2.0 * std::numbers::pi * x * x * x)) * std::exp(e);
}

double ig_cdf(double x, double mu, double lambda) {
  if (!(x > 0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double r = std::sqrt(lambda / x);
  const double a = r * (x / mu - 1.0);
  const double b = r * (x / mu + 1.0);
  const double first = 0.5 * std::erfc(-a / std::numbers::sqrt2);
  const double second = std::exp(2.0 * lambda / mu + log_ndtr_neg(b));
  const double f = first + second;
  return std::min(1.0, std::max(0.0, f));
}

double failure_prob_within(const ComponentRLD& r, double horizon_days) {
  if (horizon_days <= 0) return 0.0;
  return ig_cdf(horizon_days, r.shape_mu, r.scale_lambda);
}

std::vector<double> day_cdf(const std::optional<ComponentRLD>& r, int horizon) {
  std::vector<double> f(horizon, 0.0);
  if (!r) return f;
  double prev = 0.0;
  for (int t = 1; t <= horizon; ++t) {
    prev = std::max(prev, failure_prob_within(*r, t));
    f[t - 1] = prev;
  }
  return f;
}

SubsetSelection select_subset(const std::vector<ComponentRef>& components,
                              const std::vector<std::optional<ComponentRLD>>& rlds, double threshold_gen,
                              double threshold_line, int horizon) {
  if (components.size() != rlds.size()) throw ValidationError("one RLD entry per component required");
  if (threshold_gen < 0 || threshold_gen > 1 || threshold_line < 0 || threshold_line > 1)
    throw ValidationError("thresholds must lie in [0,1]");
  SubsetSelection s;
  for (size_t h = 0; h < components.size(); ++h) {
    const double p = rlds[h] ? failure_prob_within(*rlds[h], horizon) : 0.0;
    s.p_fail.push_back(p);
    const double thr = components[h].kind == ComponentKind::Generator ? threshold_gen : threshold_line;
    if (rlds[h] && p >= thr) s.maintainable.push_back(static_cast<int>(h));
    else s.unmaintained.push_back(static_cast<int>(h));
  }
  return s;
}

std::vector<double> bucket_probs(const std::vector<double>& cdf) {
  std::vector<double> b;
  double prev = 0.0;
  for (double f : cdf) {
    b.push_back(std::max(0.0, f - prev));
    prev = std::max(prev, f);
  }
  b.push_back(std::max(0.0, 1.0 - prev));
  return b;
}

ScenarioSet sample_scenarios(const std::vector<std::vector<double>>& day_cdfs, const std::vector<int>& components,
                             int n, int horizon, std::uint64_t seed) {
  if (n < 1) throw ValidationError("scenario count must be >= 1");
  if (day_cdfs.size() != components.size()) throw ValidationError("one CDF per component required");
  ScenarioSet s;
  s.components = components;
  s.horizon = horizon;
  s.xi.assign(n, std::vector<int>(components.size(), horizon + 1));
  s.prob.assign(n, 1.0 / n);
  for (size_t j = 0; j < components.size(); ++j) {
    const auto& f = day_cdfs[j];
    if (static_cast<int>(f.size()) != horizon) throw ValidationError("CDF length must equal the horizon");
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(components[j])));
    for (int k = 0; k < n; ++k) {
      const double u = unit_uniform(rng);
      int xi = horizon + 1;
      for (int t = 1; t <= horizon; ++t)
        if (u < f[t - 1]) {
          xi = t;
          break;
        }
      s.xi[k][j] = xi;
    }
  }
  return s;
}

DegradationPriors estimate_priors(const std::vector<SignalObservations>& corpus, const DegradationPriors& base) {
  if (corpus.empty()) throw ValidationError("signal corpus is empty");
  double s0 = 0.0, s1 = 0.0;
  for (const auto& sig : corpus) {
    if (sig.increments.empty() || sig.t_obs < 1) throw ValidationError("corpus signal has no observations");
    const double d1 = sig.increments.front();
    s0 += d1;
    s1 += (sig.total() - d1) / sig.t_obs;
  }
  DegradationPriors p = base;
  p.mu0 = s0 / static_cast<double>(corpus.size());
  p.mu1 = s1 / static_cast<double>(corpus.size());
  return p;
}

std::string scenarios_to_csv(const ScenarioSet& s, const Network& net) {
  const auto h = all_components(net);
  std::ostringstream os;
  os << "component,k,xi\n";
  for (size_t j = 0; j < s.components.size(); ++j)
    for (int k = 0; k < s.size(); ++k)
      os << component_label(net, h[s.components[j]]) << ',' << k + 1 << ',' << s.xi[k][j] << '\n';
  return os.str();
}

ScenarioSet scenarios_from_csv(const std::string& text, const Network& net, int horizon) {
  std::istringstream in(text);
  std::string line;
  std::vector<int> comps;
  std::vector<std::tuple<int, int, int>> rows;  // column, k, xi
  int lineno = 0, kmax = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (lineno == 1 && line.rfind("component", 0) == 0)) continue;
    std::stringstream ls(line);
    std::string c, ks, xs;
    if (!std::getline(ls, c, ',') || !std::getline(ls, ks, ',') || !std::getline(ls, xs, ','))
      throw ParseError("expected component,k,xi", lineno);
    const int h = find_component(net, c);
    if (h < 0) throw ParseError("unknown component " + c, lineno);
    int col = -1;
    for (size_t j = 0; j < comps.size(); ++j)
      if (comps[j] == h) col = static_cast<int>(j);
    if (col < 0) {
      comps.push_back(h);
      col = static_cast<int>(comps.size()) - 1;
    }
    int k = 0, xi = 0;
    try {
      k = std::stoi(ks);
      xi = std::stoi(xs);
    } catch (const std::exception&) {
      throw ParseError("malformed scenario row", lineno);
    }
    if (k < 1 || xi < 1 || xi > horizon + 1) throw ParseError("scenario index or failure day out of range", lineno);
    kmax = std::max(kmax, k);
    rows.emplace_back(col, k, xi);
  }
  ScenarioSet s;
  s.components = comps;
  s.horizon = horizon;
  s.xi.assign(kmax, std::vector<int>(comps.size(), 0));
  s.prob.assign(kmax, kmax > 0 ? 1.0 / kmax : 0.0);
  for (auto [col, k, xi] : rows) s.xi[k - 1][col] = xi;
  for (const auto& row : s.xi)
    for (int v : row)
      if (v == 0) throw ParseError("scenario CSV is missing entries", 0);
  return s;
}

std::string rlds_to_json(const Network& net, const std::vector<std::optional<ComponentRLD>>& rlds) {
  using nlohmann::json;
  const auto h = all_components(net);
  json arr = json::array();
  for (size_t i = 0; i < h.size() && i < rlds.size(); ++i) {
    json e;
    e["component"] = component_label(net, h[i]);
    if (rlds[i]) {
      e["shape_mu"] = rlds[i]->shape_mu;
      e["scale_lambda"] = rlds[i]->scale_lambda;
      e["t_obs"] = rlds[i]->t_obs;
    } else {
      e["non_degrading"] = true;
    }
    arr.push_back(e);
  }
  return json{{"components", arr}}.dump(2) + "\n";
}

std::vector<std::optional<ComponentRLD>> rlds_from_json(const std::string& text, const Network& net) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("RLD file: ") + e.what(), 0);
  }
  const auto h = all_components(net);
  std::vector<std::optional<ComponentRLD>> out(h.size());
  std::vector<char> seen(h.size(), 0);
  try {
    for (const auto& e : j.at("components")) {
      const std::string label = e.at("component").get<std::string>();
      const int idx = find_component(net, label);
      if (idx < 0) throw ValidationError("RLD file: unknown component " + label);
      if (seen[idx]) throw ValidationError("RLD file: duplicate component " + label);
      seen[idx] = 1;
      if (e.value("non_degrading", false)) continue;
      ComponentRLD r{e.at("shape_mu").get<double>(), e.at("scale_lambda").get<double>(), e.value("t_obs", 0.0)};
      if (!(r.shape_mu > 0) || !(r.scale_lambda > 0))
        throw ValidationError("RLD file: parameters must be positive for " + label);
      out[idx] = r;
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("RLD file: ") + e.what(), 0);
  }
  for (size_t i = 0; i < h.size(); ++i)
    if (!seen[i]) throw ValidationError("RLD file: missing component " + component_label(net, h[i]));
  return out;
}

}  // namespace gridmaint
