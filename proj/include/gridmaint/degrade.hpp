#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridmaint/caseio.hpp"
#include "gridmaint/components.hpp"

namespace gridmaint {

class NonDegradingError : public Error {
 public:
  using Error::Error;
};

struct SignalObservations {
  std::vector<double> increments;  // D^1..D^{t_obs}
  int t_first = 1;
  int t_obs = 0;

  double total() const;
};

struct SimulatedSignal {
  SignalObservations obs;  // increments at integer times up to and including the crossing
  double failure_time = 0.0;
};

// Euler path of D(t) = upsilon + beta t + sigma W(t) until D >= Lambda.
SimulatedSignal simulate_signal(const DegradationPriors& priors, double dt, std::uint64_t seed,
                                long max_steps = 100'000'000);

// Posterior mean of the drift given the observed increments.
double posterior_drift(const DegradationPriors& priors, const SignalObservations& obs);

struct ComponentRLD {
  double shape_mu = 0.0;      // mean of the residual life
  double scale_lambda = 0.0;  // inverse-Gaussian shape
  double t_obs = 0.0;

  bool operator==(const ComponentRLD&) const = default;
};

ComponentRLD rld(const DegradationPriors& priors, const SignalObservations& obs, double drift);

// Inverse-Gaussian CDF IG(mu, lambda) at x, stable for large lambda/mu.
double ig_cdf(double x, double mu, double lambda);
double ig_pdf(double x, double mu, double lambda);

double failure_prob_within(const ComponentRLD& r, double horizon_days);

// F(1..T) for a component; all zeros when the component does not degrade.
std::vector<double> day_cdf(const std::optional<ComponentRLD>& r, int horizon);

struct SubsetSelection {
  std::vector<int> maintainable;  // H', indices into the component list
  std::vector<int> unmaintained;  // H''
  std::vector<double> p_fail;     // per component
};

SubsetSelection select_subset(const std::vector<ComponentRef>& components,
                              const std::vector<std::optional<ComponentRLD>>& rlds, double threshold_gen,
                              double threshold_line, int horizon);

struct ScenarioSet {
  std::vector<int> components;          // which entries of H the columns refer to
  std::vector<std::vector<int>> xi;     // xi[k][j] in 1..T+1
  std::vector<double> prob;             // pi^k
  int horizon = 0;

  int size() const { return static_cast<int>(xi.size()); }
};

// Bucket probabilities P(xi = t), t = 1..T+1, from F(1..T).
std::vector<double> bucket_probs(const std::vector<double>& cdf);

// day_cdf[j] is F(1..T) for column j; each column gets its own RNG stream.
ScenarioSet sample_scenarios(const std::vector<std::vector<double>>& day_cdfs, const std::vector<int>& components,
                             int n, int horizon, std::uint64_t seed);

// Estimates mu0 and mu1 from completed signals; kappa, sigma, Lambda copied from base.
DegradationPriors estimate_priors(const std::vector<SignalObservations>& corpus, const DegradationPriors& base);

std::string scenarios_to_csv(const ScenarioSet& s, const Network& net);
ScenarioSet scenarios_from_csv(const std::string& text, const Network& net, int horizon);

// JSON text: {"components":[{"component":"G1","shape_mu":..,"scale_lambda":..,"t_obs":..}|{"component":..,"non_degrading":true}]}
std::string rlds_to_json(const Network& net, const std::vector<std::optional<ComponentRLD>>& rlds);
std::vector<std::optional<ComponentRLD>> rlds_from_json(const std::string& text, const Network& net);

// Stream seed derived from a master seed and a stream index (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace gridmaint
