#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridmaint/caseio.hpp"
#include "gridmaint/degrade.hpp"
#include "gridmaint/instance.hpp"

namespace gridmaint::fixtures {

// One RLD per component of H. Each component gets a simulated signal observed up to
// a time drawn uniformly from 1..floor((Lambda - mu0)/(mu1 + 3 kappa1)), before failure.
std::vector<std::optional<ComponentRLD>> synthesize_rlds(const Network& net, const RunConfig& cfg, std::uint64_t seed,
                                                         std::vector<std::string>* warnings = nullptr);

// Demand from the case's nominal bus loads and the default weekly shape.
DemandGrid nominal_demand(const Network& net, const RunConfig& cfg, std::uint64_t seed = 1, double noise_sd = 0.0);

// Small random instance for oracle comparisons: 2 or 3 buses, up to `max_h`
// maintainable components, explicit day CDFs.
struct ToySpec {
  int horizon = 3;
  int hours = 4;
  int max_h = 2;
  double alpha = 0.2;
};
Instance random_toy(std::uint64_t seed, const ToySpec& spec, RunConfig base = {});

// Three-bus triangle used across tests, with linear costs.
std::string toy3_case_text();
// Nine-bus system with linear costs.
std::string case9_text();

}  // namespace gridmaint::fixtures
